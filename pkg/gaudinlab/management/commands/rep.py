""" Command line utility to build and cache highest-weight modules. """
import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from gaudinlab.cache import RepresentationCache
from gaudinlab.exceptions import DimensionCapExceeded
from gaudinlab.lie.chevalley import get_algebra
from gaudinlab.serializers import RepBuildSerializer


class Command(BaseCommand):
    help = 'Build (or reuse from the cache) an irreducible module, e.g. ./manage.py rep build A 1 --weight 2'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=['build'])
        parser.add_argument('type', type=str, help="finite type letter A-G")
        parser.add_argument('rank', type=int)
        parser.add_argument('--weight', type=int, nargs='+', help="highest weight in fundamental coordinates")
        parser.add_argument('--form', default=settings.DEFAULT_FORM, choices=settings.FORM_NORMALIZATIONS)
        parser.add_argument('--cache-dir', help="cache directory (default GAUDINLAB_CACHE_DIR)")
        parser.add_argument('--dim-cap', type=int, help="dimension cap (default DIM_CAP)")
        parser.add_argument('--json', action='store_true', help="print the result as JSON")

    def handle(self, *args, **options):
        weight = options['weight'] if options['weight'] is not None else [0] * options['rank']
        serializer = RepBuildSerializer(data={'type': options['type'], 'rank': options['rank'],
                                              'weight': weight, 'form': options['form']})
        if not serializer.is_valid():
            raise CommandError(json.dumps(serializer.errors, sort_keys=True),
                               returncode=settings.EXIT_CODES['config_error'])
        data = serializer.validated_data
        cache = RepresentationCache(options['cache_dir'])
        try:
            alg = get_algebra(data['type'], data['rank'], data['form'])
            module = cache.get_or_build(alg, data['weight'], dim_cap=options['dim_cap'])
        except DimensionCapExceeded as e:
            raise CommandError(str(e.detail), returncode=settings.EXIT_CODES['resource_cap'])
        except ValidationError as e:
            raise CommandError(json.dumps(e.detail, sort_keys=True), returncode=settings.EXIT_CODES['config_error'])

        path = cache.path(alg, module.weight)
        multiplicities = [[list(w), m] for w, m in module.weight_multiplicities().items()]
        if options['json']:
            self.stdout.write(json.dumps({'algebra': alg.rs.name, 'form': alg.form_normalization,
                                          'weight': list(module.weight), 'dim': module.dim,
                                          'multiplicities': multiplicities, 'path': path,
                                          'cached': cache.hits > 0}, sort_keys=True))
            return
        self.stdout.write(alg.rs.name + " V" + str(list(module.weight)) + ": dim=" + str(module.dim))
        for w, m in multiplicities:
            self.stdout.write("  weight " + str(w) + " multiplicity " + str(m))
        self.stdout.write("cache: " + path + (" (hit)" if cache.hits else " (built)"))

""" Command line utility to run Gaudin model configurations. """
import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from gaudinlab.cache import RepresentationCache
from gaudinlab.calcs import PerfectIntegrability, dump_json, load_config, sweep, write_outputs, write_sweep_csv
from gaudinlab.exceptions import ConfigError, DimensionCapExceeded


class Command(BaseCommand):
    help = ('Run the perfect integrability pipeline on a config file (gaudin run config.json) or over a '
            'parameter grid (gaudin sweep config.json --vary z2 --grid 2,3,4)')

    def add_arguments(self, parser):
        parser.add_argument('action', choices=['run', 'sweep'])
        parser.add_argument('config_file', type=str)
        parser.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
        parser.add_argument('--out', help="output directory (run) or CSV file (sweep); default stdout")
        parser.add_argument('--json', action='store_true', help="print the verdict JSON")
        parser.add_argument('--timings', action='store_true', help="include stage timings in the verdict")
        parser.add_argument('--cache-dir', help="representation cache directory")
        parser.add_argument('--dim-cap', type=int, help="per-site dimension cap")
        parser.add_argument('--tolerance', type=float, help="float eigen path tolerance")
        parser.add_argument('--include-cartan', action='store_const', const=True, default=None,
                            help="add the diagonal Cartan operators to the generators")
        parser.add_argument('--extra-generators', help="JSON file with a list of current monomials")
        parser.add_argument('--vary', help="sweep parameter, z<i> or mu.h<i>")
        parser.add_argument('--grid', default='', help="comma separated sweep values")
        parser.add_argument('--workers', type=int, help="sweep worker processes")

    def _raw_config(self, options):
        try:
            with open(options['config_file'], 'r') as f:
                data = json.load(f)
            if options['extra_generators']:
                with open(options['extra_generators'], 'r') as f:
                    data['extra_generators'] = json.load(f)
        except (OSError, ValueError) as e:
            raise CommandError("Unable to read config: " + str(e), returncode=settings.EXIT_CODES['config_error'])
        if options['include_cartan'] is not None:
            data['include_cartan'] = options['include_cartan']
        return data

    def handle(self, *args, **options):
        data = self._raw_config(options)
        try:
            if options['action'] == 'sweep':
                self._sweep(data, options)
            else:
                self._run(data, options)
        except DimensionCapExceeded as e:
            raise CommandError(str(e.detail), returncode=settings.EXIT_CODES['resource_cap'])
        except ConfigError as e:
            raise CommandError(json.dumps(e.detail['Config Error'], sort_keys=True),
                               returncode=settings.EXIT_CODES['config_error'])
        except ValidationError as e:
            raise CommandError(json.dumps(e.detail, sort_keys=True), returncode=settings.EXIT_CODES['config_error'])

    def _run(self, data, options):
        config = load_config(data)
        cache = RepresentationCache(options['cache_dir'])
        run = PerfectIntegrability(config, seed=options['seed'], cache=cache, dim_cap=options['dim_cap'],
                                   tolerance=options['tolerance'])
        if options['out']:
            paths = write_outputs(run, options['out'], config_path=options['config_file'],
                                  timings=options['timings'])
        if options['json'] or not options['out']:
            self.stdout.write(dump_json(run.verdict(timings=options['timings'])), ending='')
        else:
            self.stdout.write("verdict: " + paths[0])
            self.stdout.write("perfectly integrable: " + ("yes" if run.perfectly_integrable else "no") +
                              "; dim M=" + str(run.realization.chain.dim) +
                              "; dim A=" + (str(run.algebra.dim) if run.algebra else "-"))
        if not run.passed:
            failed = [k for k, v in run.checks.items() if v] + run.cross_checks
            raise CommandError("checks failed: " + ", ".join(failed), returncode=settings.EXIT_CODES['check_failed'])

    def _sweep(self, data, options):
        if not options['vary']:
            raise ConfigError({'vary': "--vary is required for a sweep"})
        grid = [g.strip() for g in options['grid'].split(',') if g.strip()]
        rows = sweep(data, options['vary'], grid, seed=options['seed'], workers=options['workers'])
        if options['out']:
            with open(options['out'], 'w', newline='') as f:
                write_sweep_csv(rows, f)
        else:
            write_sweep_csv(rows, self.stdout)
        if any(r['status'] == 'ok' and not r['checks_passed'] for r in rows):
            raise CommandError("checks failed on some grid points", returncode=settings.EXIT_CODES['check_failed'])

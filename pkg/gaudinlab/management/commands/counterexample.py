""" Command line utility for the cyclic but non-Frobenius example. """
import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from gaudinlab.commutant import counterexample_report


class Command(BaseCommand):
    help = ('Run the regular representation of Q[x1,x2]/(x1^2, x2^2, x1x2): cyclic, not Frobenius, '
            'with a two-dimensional joint eigenspace')

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
        parser.add_argument('--json', action='store_true', help="machine-readable report")
        parser.add_argument('--explain', action='store_true',
                            help="print the algebra basis and the functional Gram matrix")

    def handle(self, *args, **options):
        report = counterexample_report(seed=options['seed'])
        if options['json']:
            self.stdout.write(json.dumps(report, sort_keys=True, indent=2))
        else:
            trivial = report['trivial_character']
            self.stdout.write("dim A = " + str(report['algebra']['dim']))
            self.stdout.write("cyclic: " + ("yes" if report['cyclic']['found'] else "no") +
                              (" v = (" + ", ".join(report['cyclic'].get('vector', [])) + ")"
                               if report['cyclic']['found'] else ""))
            self.stdout.write("frobenius: " + report['frobenius']['summary'])
            self.stdout.write("trivial character: eigenspace dim " + str(trivial['eigenspace_dim']) +
                              ", generalized dim " + str(trivial['generalized_dim']))
            if options['explain']:
                self.stdout.write("basis: " + ", ".join(report['algebra']['basis']))
                self.stdout.write("lambda-Gram:")
                for row in report['functional_gram']:
                    self.stdout.write("  [" + ", ".join(row) + "]")
                self.stdout.write("det = " + report['functional_determinant'])
        if not report['passed']:
            failed = [k for k, v in report['checks'].items() if not v]
            raise CommandError("counterexample assertions failed: " + ", ".join(failed),
                               returncode=settings.EXIT_CODES['check_failed'])

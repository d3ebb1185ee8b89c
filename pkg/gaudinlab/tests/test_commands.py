""" Management command testing. """
from io import StringIO
import json
import os
import shutil
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


class CommandTests(SimpleTestCase):
    TEST_BASE_DIR = os.path.dirname(os.path.dirname(__file__))
    TEST_DATA_DIR = os.path.join(TEST_BASE_DIR, 'tests', 'data')

    def setUp(self):
        self.tmp = tempfile.mkdtemp(prefix="gaudinlab_cmd_")
        self.cache_dir = os.path.join(self.tmp, 'cache')

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def data(self, name):
        return os.path.join(CommandTests.TEST_DATA_DIR, name)

    def test_rep_build(self):
        ''' Test building and then reusing a module. '''
        out = StringIO()
        call_command('rep', 'build', 'A', '1', '--weight', '2', '--cache-dir', self.cache_dir, stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], "A1 V[2]: dim=3")
        self.assertTrue(lines[-1].endswith("(built)"))
        out = StringIO()
        call_command('rep', 'build', 'A', '1', '--weight', '2', '--cache-dir', self.cache_dir, '--json', stdout=out)
        result = json.loads(out.getvalue())
        self.assertTrue(result['cached'])
        self.assertEqual(result['multiplicities'], [[[2], 1], [[0], 1], [[-2], 1]])

    def test_rep_dimensions(self):
        ''' Test the trivial module and the seven-dimensional G2 module. '''
        for args, dim in [(['A', '1', '--weight', '0'], 1), (['G', '2', '--weight', '1', '0'], 7)]:
            out = StringIO()
            call_command('rep', 'build', *args, '--cache-dir', self.cache_dir, '--json', stdout=out)
            self.assertEqual(json.loads(out.getvalue())['dim'], dim)

    def test_rep_errors(self):
        ''' Test exit codes of invalid and oversized builds. '''
        with self.assertRaises(CommandError) as cm:
            call_command('rep', 'build', 'G', '3', '--weight', '1', '0', '0', '--cache-dir', self.cache_dir,
                         stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            call_command('rep', 'build', 'A', '2', '--weight', '2', '2', '--dim-cap', '10',
                         '--cache-dir', self.cache_dir, stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 3)

    def test_gaudin_run(self):
        ''' Test the verdict is printed when no output directory is given. '''
        out = StringIO()
        call_command('gaudin', 'run', self.data('sl2_two_site_periodic.json'), '--cache-dir', self.cache_dir,
                     stdout=out)
        verdict = json.loads(out.getvalue())
        self.assertTrue(verdict['perfectly_integrable'])
        self.assertEqual(verdict['seed'], 0)

    def test_gaudin_run_out(self):
        ''' Test verdict and manifest files and the short summary. '''
        out = StringIO()
        out_dir = os.path.join(self.tmp, 'out')
        call_command('gaudin', 'run', self.data('sl2_two_site_periodic.json'), '--out', out_dir, '--timings',
                     '--cache-dir', self.cache_dir, '--extra-generators', self.data('extra_generators.json'),
                     stdout=out)
        self.assertIn("perfectly integrable: yes", out.getvalue())
        with open(os.path.join(out_dir, 'verdict.json')) as f:
            verdict = json.load(f)
        self.assertIn('timings_ms', verdict)
        self.assertEqual(verdict['generator_set'], 'quadratic+cartan+extra')
        self.assertTrue(os.path.exists(os.path.join(out_dir, 'manifest.json')))

    def test_gaudin_errors(self):
        ''' Test exit codes for config errors and the dimension cap. '''
        for args in [[self.data('invalid_repeated_z.json')], [self.data('missing.json')],
                     [self.data('invalid_weight.json')]]:
            with self.assertRaises(CommandError) as cm:
                call_command('gaudin', 'run', *args, '--cache-dir', self.cache_dir, stdout=StringIO())
            self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            call_command('gaudin', 'run', self.data('a2_two_site_periodic.json'), '--dim-cap', '2',
                         '--cache-dir', self.cache_dir, stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 3)

    def test_gaudin_sweep(self):
        ''' Test a sweep writes one CSV row per grid point. '''
        out = StringIO()
        call_command('gaudin', 'sweep', self.data('sl2_two_site_periodic.json'), '--vary', 'z2',
                     '--grid', '3,4,5', '--workers', '1', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[0].startswith("index,parameter,value,status"))
        with self.assertRaises(CommandError) as cm:
            call_command('gaudin', 'sweep', self.data('sl2_two_site_periodic.json'), stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

    def test_counterexample(self):
        ''' Test the counterexample report in both output formats. '''
        out = StringIO()
        call_command('counterexample', '--explain', stdout=out)
        text = out.getvalue()
        self.assertIn("frobenius: not Frobenius: certified", text)
        self.assertIn("trivial character: eigenspace dim 2, generalized dim 3", text)
        self.assertIn("det = 0", text)
        out = StringIO()
        call_command('counterexample', '--json', '--seed', '3', stdout=out)
        self.assertTrue(json.loads(out.getvalue())['passed'])

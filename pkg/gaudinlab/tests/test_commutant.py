from collections import OrderedDict
from fractions import Fraction

from django.test import SimpleTestCase
import numpy

from gaudinlab.commutant import (certify_frobenius_via_form, check_cross_implications, check_induced_form,
                                 close_algebra, counterexample_generators, counterexample_report,
                                 find_cyclic_vector, frobenius_gram_probe, functional_gram, invariant_forms,
                                 joint_eigen_analysis)
from gaudinlab.exceptions import LinearAlgebraError
from gaudinlab.gaudin import GaudinConfig, GaudinRealization
from gaudinlab.linalg import ExactMatrix


E12 = ExactMatrix([[0, 1], [0, 0]])
E21 = ExactMatrix([[0, 0], [1, 0]])

# multiplication by sqrt(2) and sqrt(3) on Q(sqrt 2, sqrt 3) with basis (1, sqrt 2, sqrt 3, sqrt 6)
ROOT2 = ExactMatrix([[0, 2, 0, 0], [1, 0, 0, 0], [0, 0, 0, 2], [0, 0, 1, 0]])
ROOT3 = ExactMatrix([[0, 0, 3, 0], [0, 0, 0, 3], [1, 0, 0, 0], [0, 1, 0, 0]])


class CloseAlgebraTests(SimpleTestCase):

    def test_powers(self):
        ''' Test the closure of a single diagonal matrix with distinct entries. '''
        algebra = close_algebra(OrderedDict([('a', ExactMatrix.diagonal([1, 2, 3]))]))
        self.assertEqual(algebra.dim, 3)
        self.assertEqual(algebra.provenance, ['1', 'a', 'a*a'])
        self.assertTrue(algebra.commutative)
        self.assertEqual(algebra.basis[0], ExactMatrix.identity(3))

    def test_list_generators(self):
        ''' Test unlabelled generators are named in order. '''
        algebra = close_algebra([ExactMatrix.diagonal([1, 2]), ExactMatrix.diagonal([2, 4])])
        self.assertEqual((algebra.dim, algebra.provenance), (2, ['1', 'g1']))

    def test_non_commuting(self):
        ''' Test a non-commuting pair is recorded and the full matrix algebra is reached. '''
        with self.assertLogs('gaudinlab.commutant', level='WARNING'):
            algebra = close_algebra(OrderedDict([('e', E12), ('f', E21)]))
        self.assertEqual(algebra.witness, ('e', 'f'))
        self.assertFalse(algebra.commutative)
        self.assertEqual(algebra.dim, 4)

    def test_mismatched(self):
        ''' Test generators of different sizes are rejected. '''
        with self.assertRaisesRegex(LinearAlgebraError, "expected 2"):
            close_algebra([E12, ExactMatrix.identity(3)])

    def test_coordinates(self):
        ''' Test membership and coordinates in the algebra basis. '''
        algebra = close_algebra([ExactMatrix.diagonal([1, 2])])
        self.assertEqual(algebra.coordinates(ExactMatrix.diagonal([1, 4])), (Fraction(-2), Fraction(3)))
        self.assertIsNone(algebra.coordinates(E12))
        self.assertEqual(algebra.element([-2, 3]), ExactMatrix.diagonal([1, 4]))

    def test_counterexample_closure(self):
        ''' Test Q[x1, x2]/(x1, x2)^2 closes to dimension 3. '''
        algebra = close_algebra(counterexample_generators())
        self.assertEqual((algebra.dim, algebra.provenance), (3, ['1', 'x1', 'x2']))

    def test_multiplication_table(self):
        ''' Test the structure constants agree with coordinates of the matrix products. '''
        algebra = close_algebra([ROOT2, ROOT3])
        self.assertEqual(algebra.dim, 4)
        table = algebra.multiplication_table()
        for i, bi in enumerate(algebra.basis):
            for j, bj in enumerate(algebra.basis):
                self.assertEqual(table[i][j], algebra.coordinates(bi @ bj))
                self.assertEqual(algebra.element(table[i][j]), bi @ bj)


class CyclicVectorTests(SimpleTestCase):

    def test_small_algebra(self):
        ''' Test dim A < dim V rules out a cyclic vector without a search. '''
        report = find_cyclic_vector(close_algebra([ExactMatrix.identity(2)]))
        self.assertFalse(report.found)
        self.assertEqual(report.to_json()['reason'], "dim A = 1 < dim V = 2")

    def test_unit_vector(self):
        ''' Test the counterexample is cyclic on 1. '''
        report = find_cyclic_vector(close_algebra(counterexample_generators()))
        self.assertTrue(report.found)
        self.assertEqual(report.vector, (1, 0, 0))
        self.assertEqual(report.trials, 1)

    def test_random_vector(self):
        ''' Test a diagonal algebra needs a vector with no zero coordinate. '''
        report = find_cyclic_vector(close_algebra([ExactMatrix.diagonal([1, 2])]), seed=3)
        self.assertTrue(report.found)
        self.assertTrue(all(report.vector))
        self.assertGreater(report.trials, 2)


class FrobeniusTests(SimpleTestCase):

    def test_counterexample_forms(self):
        ''' Test every invariant form of the counterexample is degenerate. '''
        algebra = close_algebra(counterexample_generators())
        forms = invariant_forms(algebra)
        self.assertEqual(len(forms), 3)
        for g in forms:
            self.assertTrue(g.is_symmetric())
            self.assertEqual(g[1, 1], 0)
            self.assertEqual(g[1, 2], 0)
            self.assertEqual(g[2, 2], 0)
        total = forms[0] + forms[1] + forms[2]
        cert = certify_frobenius_via_form(algebra, total)
        self.assertFalse(cert.certified)
        self.assertEqual(cert.to_json()['failed_hypothesis'], 'nondegenerate')

    def test_counterexample_probe(self):
        ''' Test the symbolic functional determinant certifies the counterexample is not Frobenius. '''
        probe = frobenius_gram_probe(close_algebra(counterexample_generators()))
        self.assertIs(probe.frobenius, False)
        self.assertEqual(probe.method, 'symbolic')
        self.assertEqual(probe.summary, "not Frobenius: certified")
        self.assertEqual(probe.polynomial, '0')

    def test_scalars(self):
        ''' Test span{Id} is Frobenius. '''
        probe = frobenius_gram_probe(close_algebra([ExactMatrix.identity(2)]))
        self.assertTrue(probe.frobenius)
        self.assertEqual((probe.method, probe.trials), ('probe', 1))

    def test_split_algebra(self):
        ''' Test Q x Q is Frobenius through the probe and through the identity form. '''
        algebra = close_algebra([ExactMatrix.diagonal([1, 2])])
        probe = frobenius_gram_probe(algebra, seed=1)
        self.assertTrue(probe.frobenius)
        self.assertNotEqual(functional_gram(algebra, probe.functional).det(), 0)
        cert = certify_frobenius_via_form(algebra, ExactMatrix.identity(2), seed=1)
        self.assertTrue(cert.certified)
        self.assertEqual(cert.to_json()['certificate']['determinant'], str(cert.determinant))
        self.assertEqual(check_induced_form(algebra, cert, rng=numpy.random.default_rng(1)), [])
        eigen = joint_eigen_analysis(algebra)
        self.assertEqual(check_cross_implications(algebra, cert.cyclic, cert, probe, eigen), [])

    def test_not_self_adjoint(self):
        ''' Test a form the algebra is not self-adjoint for. '''
        algebra = close_algebra([ExactMatrix([[1, 1], [0, 2]])])
        cert = certify_frobenius_via_form(algebra, ExactMatrix.identity(2))
        self.assertEqual(cert.hypothesis, 'invariance')

    def test_asymmetric_form(self):
        ''' Test an asymmetric Gram matrix is refused. '''
        with self.assertRaises(LinearAlgebraError):
            certify_frobenius_via_form(close_algebra([E12]), ExactMatrix([[1, 1], [0, 1]]))


class EigenTests(SimpleTestCase):

    def test_split_eigenvalues(self):
        ''' Test distinct rational eigenvalues give one-dimensional eigenspaces. '''
        report = joint_eigen_analysis(close_algebra([ExactMatrix.diagonal([1, 2, 5])]))
        self.assertEqual(report.eigenspace_dims, [1, 1, 1])
        self.assertEqual(report.point_count, 3)
        self.assertTrue(report.numeric['agrees'])

    def test_irrational_eigenvalues(self):
        ''' Test t^2 - 2 gives one block of residue degree 2. '''
        report = joint_eigen_analysis(close_algebra([ExactMatrix([[0, 2], [1, 0]])]))
        self.assertEqual(len(report.blocks), 1)
        self.assertEqual(report.blocks[0].degree, 2)
        self.assertEqual(report.eigenspace_dims, [1])
        self.assertEqual(report.point_count, 2)
        self.assertEqual(report.to_json()['blocks'][0]['character'], {'g1': 't**2 - 2'})
        self.assertTrue(report.numeric['agrees'])

    def test_jordan_block(self):
        ''' Test a nilpotent generator leaves a generalized eigenspace larger than the eigenspace. '''
        report = joint_eigen_analysis(close_algebra([E12]))
        self.assertEqual(report.blocks[0].generalized_dim, 2)
        self.assertEqual(report.eigenspace_dims, [1])

    def test_counterexample_eigenspace(self):
        ''' Test the trivial character of the counterexample has a two-dimensional eigenspace. '''
        report = joint_eigen_analysis(close_algebra(counterexample_generators()))
        self.assertEqual(report.eigenspace_dims, [2])
        self.assertFalse(report.all_one_dimensional)

    def test_biquadratic_field(self):
        ''' Test Q(sqrt 2, sqrt 3) is one block whose residue field has degree 4. '''
        algebra = close_algebra([ROOT2, ROOT3])
        report = joint_eigen_analysis(algebra)
        self.assertEqual(len(report.blocks), 1)
        self.assertEqual(report.blocks[0].degree, 4)
        self.assertEqual(report.eigenspace_dims, [1])
        self.assertEqual(report.point_count, algebra.dim)
        self.assertEqual(report.to_json()['blocks'][0]['character'], {'g1': 't**2 - 2', 'g2': 't**2 - 3'})
        self.assertTrue(report.numeric['agrees'])
        cert = certify_frobenius_via_form(algebra, ExactMatrix.diagonal([1, 2, 3, 6]))
        self.assertTrue(cert.certified)
        probe = frobenius_gram_probe(algebra)
        self.assertTrue(probe.frobenius)
        self.assertEqual(check_cross_implications(algebra, cert.cyclic, cert, probe, report), [])

    def test_split_and_irrational_blocks(self):
        ''' Test a product of Q and Q(sqrt 2) with a nilpotent part in the rational block. '''
        gen = ExactMatrix([[0, 2, 0, 0], [1, 0, 0, 0], [0, 0, 5, 1], [0, 0, 0, 5]])
        report = joint_eigen_analysis(close_algebra([gen]), seed=4)
        blocks = sorted((b.degree, b.generalized_dim, b.eigenspace_dim) for b in report.blocks)
        self.assertEqual(blocks, [(1, 2, 1), (2, 2, 2)])
        self.assertEqual(sorted(report.eigenspace_dims), [1, 1])
        self.assertEqual(report.point_count, 3)


class CounterexampleTests(SimpleTestCase):

    def test_report(self):
        ''' Test the counterexample report assertions. '''
        report = counterexample_report()
        self.assertTrue(report['passed'])
        self.assertEqual(report['cyclic']['vector'], ['1', '0', '0'])
        self.assertEqual(report['functional_determinant'], '0')
        self.assertEqual(report['trivial_character'], {'eigenspace_dim': 2, 'generalized_dim': 3})
        self.assertEqual(report['form_certificate']['failed_hypothesis'], 'nondegenerate')

    def test_deterministic(self):
        ''' Test the report does not depend on the seed. '''
        self.assertEqual(counterexample_report(seed=0), counterexample_report(seed=7))


class GaudinAlgebraTests(SimpleTestCase):

    def test_sl2_two_sites(self):
        ''' Test the Gaudin algebra of two sl2 doublets is Frobenius on the singular space. '''
        real = GaudinRealization(GaudinConfig('A', 1, [(1,), (1,)], [1, 2], form='normalized'))
        gens, _tag = real.generators()
        algebra = close_algebra(gens)
        self.assertEqual(algebra.dim, 2)
        cert = certify_frobenius_via_form(algebra, real.chain_gram())
        self.assertTrue(cert.certified)
        eigen = joint_eigen_analysis(algebra)
        self.assertTrue(eigen.all_one_dimensional)
        self.assertEqual(check_cross_implications(algebra, cert.cyclic, cert, frobenius_gram_probe(algebra),
                                                  eigen), [])

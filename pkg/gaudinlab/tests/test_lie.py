from fractions import Fraction

from django.test import SimpleTestCase
from django.test.utils import override_settings
from hypothesis import given, settings as hsettings, strategies as st

from gaudinlab.exceptions import RootSystemError, WeightError
from gaudinlab.lie.chevalley import ChevalleyAlgebra, get_algebra
from gaudinlab.lie.roots import RootSystem


class RootSystemTests(SimpleTestCase):

    def test_positive_root_counts(self):
        ''' Test the number of positive roots of each finite type. '''
        expected = {('A', 3): 6, ('B', 3): 9, ('C', 3): 9, ('D', 4): 12, ('E', 6): 36, ('E', 7): 63,
                    ('E', 8): 120, ('F', 4): 24, ('G', 2): 6}
        for (t, r), n in expected.items():
            self.assertEqual(len(RootSystem(t, r).positive_roots), n, t + str(r))

    def test_g2_roots(self):
        ''' Test G2 has alpha_1 short and its positive roots in height order. '''
        rs = RootSystem('G', 2)
        self.assertEqual(rs.cartan_matrix, ((2, -1), (-3, 2)))
        self.assertEqual(rs.positive_roots, [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)])
        self.assertEqual(rs.highest_root, (3, 2))

    def test_weyl_dimension(self):
        ''' Test the Weyl dimension formula on known modules. '''
        cases = [('A', 1, (2,), 3), ('A', 2, (1, 1), 8), ('A', 2, (2, 0), 6), ('B', 2, (1, 0), 5),
                 ('B', 2, (0, 1), 4), ('G', 2, (1, 0), 7), ('G', 2, (0, 1), 14), ('D', 4, (1, 0, 0, 0), 8),
                 ('E', 6, (1, 0, 0, 0, 0, 0), 27), ('F', 4, (0, 0, 0, 1), 26)]
        for t, r, w, dim in cases:
            self.assertEqual(RootSystem(t, r).weyl_dimension(w), dim, t + str(r) + str(w))

    def test_lowest_weight_depth(self):
        ''' Test the height of lambda - w0(lambda). '''
        self.assertEqual(RootSystem('A', 1).lowest_weight_depth((3,)), 3)
        self.assertEqual(RootSystem('A', 2).lowest_weight_depth((1, 0)), 2)

    def test_invalid_types(self):
        ''' Test unknown letters and out of range ranks are rejected. '''
        with self.assertRaisesRegex(RootSystemError, "Unknown type letter"):
            RootSystem('H', 3)
        with self.assertRaisesRegex(RootSystemError, "Invalid rank"):
            RootSystem('E', 9)
        with self.assertRaisesRegex(RootSystemError, "Invalid rank"):
            RootSystem('D', 3)

    @override_settings(ALLOWED_TYPES={'A': {'MIN_RANK': 1, 'MAX_RANK': 2}})
    def test_allowed_types_setting(self):
        ''' Test the allowed types come from the settings. '''
        with self.assertRaisesRegex(RootSystemError, "Invalid rank"):
            RootSystem('A', 3)

    def test_check_dominant(self):
        ''' Test non-dominant and wrong-length weights. '''
        rs = RootSystem('A', 2)
        with self.assertRaisesRegex(WeightError, "not dominant integral"):
            rs.check_dominant((1, -1))
        with self.assertRaisesRegex(WeightError, "expected 2"):
            rs.check_dominant((1,))


class ChevalleyAlgebraTests(SimpleTestCase):

    def test_dimensions(self):
        ''' Test dim g = 2|positive roots| + rank. '''
        for t, r, dim in [('A', 1, 3), ('A', 2, 8), ('B', 2, 10), ('G', 2, 14)]:
            self.assertEqual(get_algebra(t, r).dim, dim)

    def test_jacobi_and_serre(self):
        ''' Test the Jacobi identity and the Chevalley-Serre relations hold exactly. '''
        for t, r in [('A', 2), ('B', 2), ('C', 3), ('G', 2)]:
            alg = get_algebra(t, r)
            self.assertIsNone(alg.check_jacobi(), t + str(r))
            self.assertEqual(alg.check_serre(), [], t + str(r))

    def test_form_invariance(self):
        ''' Test symmetry and invariance of both form normalizations. '''
        for form in ['killing', 'normalized']:
            self.assertIsNone(get_algebra('B', 2, form).check_form_invariance())
        self.assertIsNone(get_algebra('G', 2).check_form_invariance())

    def test_killing_values(self):
        ''' Test <e, f> = 4 and <h, h> = 8 for sl2, and the normalized form <h, h> = 2. '''
        alg = get_algebra('A', 1)
        e, h, f = (alg.basis_vector(alg.index(x)) for x in ['e1', 'h1', 'f1'])
        self.assertEqual(alg.form(e, f), Fraction(4))
        self.assertEqual(alg.form(h, h), Fraction(8))
        norm = get_algebra('A', 1, 'normalized')
        self.assertEqual(norm.form(h, h), Fraction(2))
        self.assertEqual(norm.form(e, f), Fraction(1))

    def test_casimir_on_adjoint(self):
        ''' Test the Killing-form Casimir acts by 1 on the adjoint module. '''
        for t, r in [('A', 1), ('A', 2), ('B', 2), ('G', 2)]:
            alg = get_algebra(t, r)
            self.assertEqual(alg.casimir_eigenvalue(alg.rs.to_weight(alg.rs.highest_root)), Fraction(1))

    def test_casimir_sl2(self):
        ''' Test (lambda, lambda + 2 rho) for the sl2 doublet. '''
        self.assertEqual(get_algebra('A', 1, 'normalized').casimir_eigenvalue((1,)), Fraction(3, 2))
        self.assertEqual(get_algebra('A', 1).casimir_eigenvalue((1,)), Fraction(3, 8))

    def test_labels(self):
        ''' Test basis labels and simple root aliases. '''
        alg = get_algebra('A', 2)
        self.assertEqual(alg.labels, ['e[1,0]', 'e[0,1]', 'e[1,1]', 'h1', 'h2', 'f[1,0]', 'f[0,1]', 'f[1,1]'])
        self.assertEqual(alg.index('e2'), alg.index('e[0,1]'))
        self.assertEqual(alg.index('f1'), 5)
        self.assertEqual(alg.support(alg.element({'h1': 1, 'f2': '1/2'})), {'h', 'f'})

    def test_dual_bases(self):
        ''' Test <X_a, X^b> = delta_ab. '''
        alg = get_algebra('B', 2)
        basis, dual = alg.dual_bases()
        for a, x in enumerate(basis):
            for b, y in enumerate(dual):
                self.assertEqual(alg.form(x, y), Fraction(int(a == b)))

    def test_canonical_tensor_basis_independent(self):
        ''' Test the canonical tensor does not depend on the basis used to compute it. '''
        from gaudinlab.linalg import ExactMatrix
        alg = get_algebra('A', 2)
        n = alg.dim
        change = ExactMatrix([[1 if i == j else (1 if j == i + 1 else 0) for j in range(n)] for i in range(n)])
        self.assertEqual(alg.canonical_tensor(change), alg.canonical_tensor())

    def test_cartan_antiinvolution(self):
        ''' Test the anti-involution reverses brackets and preserves the form. '''
        for t, r in [('A', 2), ('G', 2)]:
            self.assertEqual(get_algebra(t, r).cartan_antiinvolution().check(), [])

    def test_json_digest(self):
        ''' Test the algebra digest is stable. '''
        alg = ChevalleyAlgebra(RootSystem('A', 2))
        self.assertEqual(alg.digest(), get_algebra('A', 2).digest())
        self.assertEqual(alg.to_json()['brackets']['e[1,0],e[0,1]'], {'e[1,1]': '1'})


class StructureConstantTests(SimpleTestCase):

    @given(st.sampled_from([('A', 3), ('B', 3), ('C', 2), ('G', 2)]), st.data())
    @hsettings(max_examples=25, deadline=None)
    def test_jacobi_sampled(self, tr, data):
        ''' Test the Jacobi identity on random basis triples of larger algebras. '''
        alg = get_algebra(*tr)
        idx = st.integers(0, alg.dim - 1)
        triple = (data.draw(idx), data.draw(idx), data.draw(idx))
        self.assertIsNone(alg.check_jacobi([triple]))

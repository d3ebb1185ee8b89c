from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings as hsettings, strategies as st

from gaudinlab.exceptions import LinearAlgebraError
from gaudinlab.linalg import (ExactMatrix, char_poly, format_poly, format_scalar, irreducible_split, joint_kernel,
                              kernel_basis, parse_scalar, poly_eval_matrix, rank, restrict_to, rref,
                              squarefree_split)


def matrices(max_rows=4, max_cols=4):
    ''' Small integer matrices. '''
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
        )).map(ExactMatrix)


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(ExactMatrix)


class ScalarTests(SimpleTestCase):

    def test_parse(self):
        ''' Test exact scalars parse from integers and p/q strings into lowest terms. '''
        self.assertEqual(parse_scalar(3), Fraction(3))
        self.assertEqual(parse_scalar("-6/4"), Fraction(-3, 2))
        self.assertEqual(parse_scalar(" 5 "), Fraction(5))

    def test_format(self):
        ''' Test canonical strings. '''
        self.assertEqual(format_scalar(Fraction(4, 2)), "2")
        self.assertEqual(format_scalar(Fraction(-1, 3)), "-1/3")

    def test_parse_errors(self):
        ''' Test booleans, floats and malformed strings are rejected. '''
        with self.assertRaisesRegex(LinearAlgebraError, "Boolean"):
            parse_scalar(True)
        with self.assertRaisesRegex(LinearAlgebraError, "Unable to parse"):
            parse_scalar("1/0")
        with self.assertRaisesRegex(LinearAlgebraError, "Unsupported"):
            parse_scalar(0.5)


class ExactMatrixTests(SimpleTestCase):

    def test_arithmetic(self):
        ''' Test products, Kronecker products and traces. '''
        a = ExactMatrix([[1, 2], [3, 4]])
        b = ExactMatrix([[0, 1], [1, 0]])
        self.assertEqual(a @ b, ExactMatrix([[2, 1], [4, 3]]))
        self.assertEqual((a + b).trace(), Fraction(5))
        self.assertEqual(a.kron(ExactMatrix.identity(2)).shape, (4, 4))
        self.assertEqual(ExactMatrix.identity(2).kron(b)[1, 0], Fraction(1))
        self.assertEqual(a.scale("1/2")[1, 1], Fraction(2))

    def test_det_inverse(self):
        ''' Test the Bareiss determinant and the inverse. '''
        a = ExactMatrix([["1/2", 1, 0], [0, 2, 1], [1, 0, 3]])
        self.assertEqual(a.det(), Fraction(4))
        self.assertEqual(a @ a.inverse(), ExactMatrix.identity(3))
        with self.assertRaisesRegex(LinearAlgebraError, "singular"):
            ExactMatrix([[1, 2], [2, 4]]).inverse()

    def test_solve(self):
        ''' Test solve returns None for an inconsistent system. '''
        a = ExactMatrix([[1, 0], [0, 1], [1, 1]])
        self.assertEqual(a.solve(ExactMatrix([[1], [2], [3]])), ExactMatrix([[1], [2]]))
        self.assertIsNone(a.solve(ExactMatrix([[1], [2], [4]])))

    def test_shape_errors(self):
        ''' Test mismatched shapes raise LinearAlgebraError. '''
        with self.assertRaisesRegex(LinearAlgebraError, "Shape mismatch"):
            ExactMatrix([[1, 2]]) + ExactMatrix([[1], [2]])
        with self.assertRaisesRegex(LinearAlgebraError, "Ragged"):
            ExactMatrix([[1, 2], [3]])
        with self.assertRaisesRegex(LinearAlgebraError, "non-square"):
            char_poly(ExactMatrix([[1, 2]]))

    def test_json(self):
        ''' Test entries are written as canonical strings. '''
        m = ExactMatrix([["1/2", 0], [3, "-2/6"]])
        obj = m.to_json()
        self.assertEqual(obj['entries'], ["1/2", "0", "3", "-1/3"])
        self.assertEqual(ExactMatrix.from_json(obj), m)


class KernelTests(SimpleTestCase):

    def test_rref(self):
        ''' Test the reduced row echelon form of a rank 2 matrix. '''
        reduced, rk, pivots = rref(ExactMatrix([[2, 4, 2], [1, 3, 2], [3, 7, 4]]))
        self.assertEqual(rk, 2)
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(reduced, ExactMatrix([[1, 0, -1], [0, 1, 1], [0, 0, 0]]))

    def test_joint_kernel(self):
        ''' Test the common kernel of two nilpotent matrices. '''
        x1 = ExactMatrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        x2 = ExactMatrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
        self.assertEqual(len(joint_kernel([x1, x2], 3)), 2)
        self.assertEqual(len(joint_kernel([], 3)), 3)

    def test_restrict_to(self):
        ''' Test restriction to an invariant subspace and refusal for a non-invariant one. '''
        op = ExactMatrix([[1, 1], [0, 2]])
        self.assertEqual(restrict_to(op, ExactMatrix([[1], [0]])), ExactMatrix([[1]]))
        self.assertIsNone(restrict_to(op, ExactMatrix([[0], [1]])))

    @given(matrices())
    @hsettings(max_examples=40, deadline=None)
    def test_rank_nullity(self, m):
        ''' Test rank + nullity = number of columns and kernel vectors are annihilated. '''
        kernel = kernel_basis(m)
        self.assertEqual(rank(m) + len(kernel), m.cols)
        for v in kernel:
            self.assertFalse(any(m.apply(v)))

    @given(matrices())
    @hsettings(max_examples=40, deadline=None)
    def test_rref_idempotent(self, m):
        ''' Test rref(rref(m)) = rref(m). '''
        reduced, _rk, _p = rref(m)
        self.assertEqual(rref(reduced)[0], reduced)


class PolynomialTests(SimpleTestCase):

    def test_char_poly(self):
        ''' Test det(tI - m) of a 2 x 2 matrix. '''
        self.assertEqual(char_poly(ExactMatrix([[1, 2], [3, 4]])), [1, -5, -2])

    @given(square_matrices())
    @hsettings(max_examples=30, deadline=None)
    def test_cayley_hamilton(self, m):
        ''' Test every matrix satisfies its characteristic polynomial. '''
        self.assertTrue(poly_eval_matrix(char_poly(m), m).is_zero())

    @given(square_matrices())
    @hsettings(max_examples=30, deadline=None)
    def test_char_poly_constant_term(self, m):
        ''' Test the constant term of det(tI - m) is (-1)^n det(m). '''
        self.assertEqual(char_poly(m)[-1], (-1) ** m.rows * m.det())

    def test_squarefree_split(self):
        ''' Test (t - 1)^2 (t + 2) splits with multiplicities. '''
        # t^3 - 3t + 2
        self.assertEqual(sorted(squarefree_split([1, 0, -3, 2]), key=lambda fk: fk[1]),
                         [([1, 2], 1), ([1, -1], 2)])

    def test_irreducible_split(self):
        ''' Test t^4 - 1 = (t - 1)(t + 1)(t^2 + 1) over the rationals. '''
        factors = irreducible_split([1, 0, 0, 0, -1])
        self.assertEqual(len(factors), 3)
        self.assertEqual(factors[-1], ([1, 0, 1], 1))
        self.assertEqual(format_poly([1, 0, -1]), "t**2 - 1")

    def test_zero_polynomial(self):
        ''' Test the zero polynomial is rejected. '''
        with self.assertRaisesRegex(LinearAlgebraError, "Zero polynomial"):
            irreducible_split([0, 0])

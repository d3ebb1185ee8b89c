"""
Exact linear algebra over the rationals.

Scalars are L{fractions.Fraction}; matrices are immutable L{ExactMatrix} objects
and vectors are tuples of Fractions. Every certified claim made by the
laboratory (ranks, kernels, algebra dimensions, determinants) reduces to the
kernels in this module.
"""
from fractions import Fraction
from functools import reduce
import math

import sympy

from gaudinlab.exceptions import LinearAlgebraError

T = sympy.Symbol('t')


def parse_scalar(value):
    """
    Parse an exact scalar.
    @param value: int, Fraction or a string "p/q" or "p"
    @return: Fraction in lowest terms
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise LinearAlgebraError("Boolean is not an exact scalar: " + str(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise LinearAlgebraError("Unable to parse exact scalar: '" + value + "'")
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise LinearAlgebraError("Unsupported exact scalar type: " + type(value).__name__)


def format_scalar(value):
    ''' Canonical string form, "p/q" in lowest terms or "p" when q = 1. '''
    return str(Fraction(value))


class ExactMatrix(object):
    """
    Dense immutable matrix of Fractions stored row-major.
    """
    __slots__ = ('_rows', '_ncols', '_hash', '_nz')

    def __init__(self, rows, cols=None):
        """
        @param rows: iterable of rows, each an iterable of exact scalars
        @keyword cols: number of columns, required when there are no rows
        """
        self._rows = tuple(tuple(parse_scalar(x) for x in row) for row in rows)
        if cols is None:
            if len(self._rows) == 0:
                raise LinearAlgebraError("Column count required for a matrix with no rows")
            cols = len(self._rows[0])
        for row in self._rows:
            if len(row) != cols:
                raise LinearAlgebraError("Ragged matrix rows: expected " + str(cols) +
                                         " entries, found " + str(len(row)))
        self._ncols = cols
        self._hash = None
        self._nz = None

    @classmethod
    def _wrap(cls, rows, cols):
        ''' Build from rows already holding Fractions (no parsing). '''
        m = cls.__new__(cls)
        m._rows = rows
        m._ncols = cols
        m._hash = None
        m._nz = None
        return m

    @classmethod
    def identity(cls, n):
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows, cols):
        zero = Fraction(0)
        return cls._wrap(tuple(tuple(zero for _j in range(cols)) for _i in range(rows)), cols)

    @classmethod
    def scalar(cls, n, c):
        c = parse_scalar(c)
        zero = Fraction(0)
        return cls._wrap(tuple(tuple(c if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def diagonal(cls, values):
        values = [parse_scalar(v) for v in values]
        n = len(values)
        zero = Fraction(0)
        return cls._wrap(tuple(tuple(values[i] if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns, nrows):
        """
        Matrix whose columns are the given vectors.
        @param columns: list of vectors
        @param nrows: length of each vector
        """
        columns = [tuple(parse_scalar(x) for x in c) for c in columns]
        return cls._wrap(tuple(tuple(c[i] for c in columns) for i in range(nrows)), len(columns))

    @classmethod
    def vstack(cls, matrices, cols):
        rows = []
        for m in matrices:
            if m.cols != cols:
                raise LinearAlgebraError("vstack: column mismatch")
            rows.extend(m._rows)
        return cls._wrap(tuple(rows), cols)

    @property
    def rows(self):
        return len(self._rows)

    @property
    def cols(self):
        return self._ncols

    @property
    def shape(self):
        return (len(self._rows), self._ncols)

    def is_square(self):
        return len(self._rows) == self._ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return [self.column(j) for j in range(self._ncols)]

    def tolist(self):
        return [list(r) for r in self._rows]

    def nonzeros(self):
        ''' Per row, the list of (column, value) pairs with nonzero value. '''
        if self._nz is None:
            self._nz = tuple(tuple((j, x) for j, x in enumerate(r) if x) for r in self._rows)
        return self._nz

    def flatten(self):
        ''' Row-major vector of entries. '''
        return tuple(x for r in self._rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._ncols, self._rows))
        return self._hash

    def __repr__(self):
        return "ExactMatrix(" + repr([[format_scalar(x) for x in r] for r in self._rows]) + ")"

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise LinearAlgebraError("Shape mismatch: " + str(self.shape) + " and " + str(other.shape))

    def __add__(self, other):
        self._check_same_shape(other)
        return ExactMatrix._wrap(tuple(tuple(a + b for a, b in zip(r, s))
                                       for r, s in zip(self._rows, other._rows)), self._ncols)

    def __sub__(self, other):
        self._check_same_shape(other)
        return ExactMatrix._wrap(tuple(tuple(a - b for a, b in zip(r, s))
                                       for r, s in zip(self._rows, other._rows)), self._ncols)

    def __neg__(self):
        return ExactMatrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self._ncols)

    def scale(self, c):
        c = parse_scalar(c)
        if c == 0:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self._ncols)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if self._ncols != other.rows:
            raise LinearAlgebraError("Product shape mismatch: " + str(self.shape) + " @ " + str(other.shape))
        ncols = other._ncols
        zero = Fraction(0)
        onz = other.nonzeros()
        out = []
        for r in self.nonzeros():
            acc = [zero] * ncols
            for k, a in r:
                for j, b in onz[k]:
                    acc[j] += a * b
            out.append(tuple(acc))
        return ExactMatrix._wrap(tuple(out), ncols)

    def apply(self, v):
        ''' Matrix times vector. '''
        if len(v) != self._ncols:
            raise LinearAlgebraError("Vector length " + str(len(v)) + " does not match " + str(self._ncols))
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._rows)

    def transpose(self):
        return ExactMatrix._wrap(tuple(zip(*self._rows)) if self._rows else
                                 tuple(() for _j in range(self._ncols)), len(self._rows))

    @property
    def T(self):
        return self.transpose()

    def trace(self):
        if not self.is_square():
            raise LinearAlgebraError("Trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self):
        return all(not x for r in self._rows for x in r)

    def is_symmetric(self):
        return self.is_square() and self == self.transpose()

    def is_scalar(self):
        ''' True when the matrix is c*Id for some c. '''
        if not self.is_square():
            return False
        if self.rows == 0:
            return True
        c = self._rows[0][0]
        return self == ExactMatrix.scalar(self.rows, c)

    def kron(self, other):
        ''' Kronecker product, self on the slow index. '''
        rows = []
        zero_row = (Fraction(0),) * (self._ncols * other._ncols)
        for r in self._rows:
            for s in other._rows:
                if not any(r):
                    rows.append(zero_row)
                    continue
                rows.append(tuple(a * b for a in r for b in s))
        return ExactMatrix._wrap(tuple(rows), self._ncols * other._ncols)

    def submatrix(self, row_idx, col_idx):
        return ExactMatrix._wrap(tuple(tuple(self._rows[i][j] for j in col_idx) for i in row_idx), len(col_idx))

    def det(self):
        ''' Determinant by fraction-free Bareiss elimination. '''
        if not self.is_square():
            raise LinearAlgebraError("Determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        den = reduce(_lcm, (x.denominator for r in self._rows for x in r), 1)
        a = [[int(x * den) for x in r] for r in self._rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return Fraction(0)
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return Fraction(sign * a[n - 1][n - 1], den ** n)

    def inverse(self):
        if not self.is_square():
            raise LinearAlgebraError("Inverse of a non-square matrix")
        n = self.rows
        aug = ExactMatrix._wrap(tuple(r + ExactMatrix.identity(n)._rows[i] for i, r in enumerate(self._rows)), 2 * n)
        reduced, _rank, pivots = rref(aug)
        if [p for p in pivots if p < n] != list(range(n)):
            raise LinearAlgebraError("Matrix is singular")
        return reduced.submatrix(range(n), range(n, 2 * n))

    def solve(self, rhs):
        """
        Solve self @ X = rhs for a matrix of full column rank.
        @param rhs: L{ExactMatrix} with the same number of rows
        @return: X, or None when the system is inconsistent
        """
        if rhs.rows != self.rows:
            raise LinearAlgebraError("solve: row mismatch")
        k = self._ncols
        aug = ExactMatrix._wrap(tuple(r + s for r, s in zip(self._rows, rhs._rows)), k + rhs.cols)
        reduced, _rank, pivots = rref(aug)
        if [p for p in pivots if p < k] != list(range(k)):
            raise LinearAlgebraError("solve: matrix does not have full column rank")
        if any(p >= k for p in pivots):
            return None
        return reduced.submatrix(range(k), range(k, k + rhs.cols))

    def to_json(self):
        ''' Row-major entries as canonical strings with explicit shape. '''
        return {'rows': self.rows, 'cols': self.cols,
                'entries': [format_scalar(x) for x in self.flatten()]}

    @classmethod
    def from_json(cls, obj):
        rows, cols, entries = obj['rows'], obj['cols'], obj['entries']
        if len(entries) != rows * cols:
            raise LinearAlgebraError("Matrix JSON has " + str(len(entries)) + " entries, expected " +
                                     str(rows * cols))
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _integer_row(row):
    ''' Scale a row of Fractions to a primitive integer row. '''
    den = reduce(_lcm, (x.denominator for x in row if x), 1)
    ints = [int(x * den) for x in row]
    g = reduce(math.gcd, ints, 0)
    return [x // g for x in ints] if g > 1 else ints


def rref(m):
    """
    Reduced row echelon form.

    Gauss-Jordan elimination on primitive integer rows, pivoting on the first
    nonzero entry in each column and dividing every updated row by the gcd of
    its entries. Pivot rows are normalised to 1 at the end.
    @param m: L{ExactMatrix}
    @return: (reduced, rank, pivots)
    """
    rows = [_integer_row(r) for r in m._rows]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            b = rows[i][c]
            if b == 0:
                continue
            new = [a * x - b * y for x, y in zip(rows[i], prow)]
            g = reduce(math.gcd, new, 0)
            rows[i] = [x // g for x in new] if g > 1 else new
        pivots.append(c)
        r += 1
    out = []
    for i, row in enumerate(rows):
        if i < len(pivots):
            a = row[pivots[i]]
            out.append(tuple(Fraction(x, a) for x in row))
        else:
            out.append(tuple(Fraction(0) for _x in row))
    return ExactMatrix._wrap(tuple(out), ncols), len(pivots), pivots


def rank(m):
    return rref(m)[1]


def kernel_basis(m):
    """
    Basis of the null space, one vector per free column of the rref.
    @param m: L{ExactMatrix}
    @return: list of vectors v with m.apply(v) == 0
    """
    reduced, rk, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        basis.append(tuple(v))
    return basis


def joint_kernel(matrices, n):
    ''' Common null space of a list of matrices with n columns. '''
    if not matrices:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return kernel_basis(ExactMatrix.vstack(matrices, n))


def independent_columns(vectors, n):
    ''' Subset of the given vectors forming a basis of their span, in input order. '''
    if not vectors:
        return []
    _reduced, _rk, pivots = rref(ExactMatrix.from_columns(vectors, n))
    return [vectors[p] for p in pivots]


def commutator(a, b):
    return a @ b - b @ a


def restrict_to(op, basis):
    """
    Matrix of an operator on an invariant subspace.
    @param op: n x n L{ExactMatrix}
    @param basis: n x k L{ExactMatrix} of independent columns
    @return: k x k X with basis @ X == op @ basis, or None if the subspace is not invariant
    """
    if basis.cols == 0:
        return ExactMatrix.zeros(0, 0)
    return basis.solve(op @ basis)


def char_poly(m):
    """
    Characteristic polynomial det(t I - m) by the Faddeev-LeVerrier recurrence.
    @param m: square L{ExactMatrix}
    @return: coefficients in descending degree, leading coefficient 1
    """
    if not m.is_square():
        raise LinearAlgebraError("Characteristic polynomial of a non-square " + str(m.shape) + " matrix")
    n = m.rows
    coeffs = [Fraction(1)]
    mk = ExactMatrix.zeros(n, n)
    ident = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        coeffs.append(-(m @ mk).trace() / k)
    return coeffs


def poly_eval_matrix(coeffs, m):
    ''' Evaluate a polynomial (descending coefficients) at a square matrix. '''
    n = m.rows
    acc = ExactMatrix.zeros(n, n)
    for c in coeffs:
        acc = m @ acc + ExactMatrix.scalar(n, c)
    return acc


def _to_poly(coeffs):
    coeffs = [parse_scalar(c) for c in coeffs]
    if not any(coeffs):
        raise LinearAlgebraError("Zero polynomial has no factorization")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], T, domain='QQ')


def _from_poly(poly):
    coeffs = [parse_scalar(sympy.Rational(c)) for c in poly.all_coeffs()]
    lead = coeffs[0]
    return [c / lead for c in coeffs]


def squarefree_split(coeffs):
    """
    Squarefree decomposition of a rational polynomial.
    @param coeffs: coefficients in descending degree
    @return: list of (monic factor coefficients, multiplicity)
    """
    _lc, factors = _to_poly(coeffs).sqf_list()
    return [(_from_poly(f), k) for f, k in factors]


def irreducible_split(coeffs):
    """
    Factorization into monic irreducible factors over the rationals.
    @param coeffs: coefficients in descending degree
    @return: list of (monic factor coefficients, multiplicity), sorted by degree then coefficients
    """
    _lc, factors = _to_poly(coeffs).factor_list()
    out = [(_from_poly(f), k) for f, k in factors]
    return sorted(out, key=lambda fk: (len(fk[0]), fk[0]))


def format_poly(coeffs):
    ''' Human readable form in the variable t. '''
    return str(_to_poly(coeffs).as_expr())

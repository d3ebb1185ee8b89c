"""
Finite-dimensional commutative algebras of matrices: closure of a generator set,
cyclic vectors, Frobenius certificates and joint eigenspaces.
"""
from collections import OrderedDict
from fractions import Fraction
import logging
import time

from django.conf import settings
import numpy
import sympy

from gaudinlab.exceptions import LinearAlgebraError
from gaudinlab.linalg import (ExactMatrix, char_poly, format_poly, format_scalar, irreducible_split,
                              joint_kernel, kernel_basis, poly_eval_matrix, rank, rref)


logger = logging.getLogger(__name__)


def random_rational_vector(rng, n):
    ''' Nonzero vector with integer entries drawn from RANDOM_ENTRY_RANGE. '''
    lo, hi = settings.RANDOM_ENTRY_RANGE
    while True:
        v = tuple(Fraction(int(x)) for x in rng.integers(lo, hi + 1, size=n))
        if any(v):
            return v


class _EchelonSpan(object):
    ''' Incrementally grown span of vectors, kept reduced on pivot columns. '''

    def __init__(self):
        self.rows = OrderedDict()

    def reduce(self, v):
        v = list(v)
        for p, r in self.rows.items():
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, r)]
        return v

    def add(self, v):
        """
        @return: True when v was independent of the span and has been added
        """
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        lead = v[p]
        v = [x / lead for x in v]
        for q, r in list(self.rows.items()):
            c = r[p]
            if c:
                self.rows[q] = [a - c * b for a, b in zip(r, v)]
        self.rows[p] = v
        return True

    def __len__(self):
        return len(self.rows)


class CommutativeAlgebraImage(object):
    """
    Unital algebra generated by a list of square matrices, with a basis whose first
    element is the identity.
    """

    def __init__(self, n, basis, provenance, generators, witness=None):
        """
        @param n: size of the matrices
        @param basis: list of independent L{ExactMatrix}, basis[0] the identity
        @param provenance: label of each basis element (product of generator labels)
        @param generators: OrderedDict label -> L{ExactMatrix}
        @keyword witness: pair of generator labels that do not commute, or None
        """
        self.n = n
        self.basis = basis
        self.provenance = provenance
        self.generators = generators
        self.witness = witness
        self.cyclic_vector = None
        self.frobenius_functional = None
        self.gram_determinant = None
        self._coords = None
        self._table = None

    @property
    def dim(self):
        return len(self.basis)

    @property
    def commutative(self):
        return self.witness is None

    def _pivot_solver(self):
        ''' Entry positions on which the basis is independent, and the inverse of the basis there. '''
        if self._coords is None:
            flat = [b.flatten() for b in self.basis]
            _reduced, _rank, positions = rref(ExactMatrix(flat, cols=self.n * self.n))
            square = ExactMatrix.from_columns([[f[p] for p in positions] for f in flat], len(positions))
            self._coords = (positions, square.inverse())
        return self._coords

    def coordinates(self, m):
        """
        Coordinates of a matrix in the basis.
        @return: tuple of Fractions, or None when m is not in the algebra
        """
        positions, inverse = self._pivot_solver()
        flat = m.flatten()
        x = inverse.apply([flat[p] for p in positions])
        if self.element(x) != m:
            return None
        return x

    def multiplication_table(self):
        """
        Structure constants c[i][j] = coordinates of b_i b_j. Only the pivot
        entries of each product are formed; the basis is closed under products.
        """
        if self._table is None:
            start = time.time()
            positions, inverse = self._pivot_solver()
            cells = [divmod(p, self.n) for p in positions]
            rows = [[b.row(r) for r, _c in cells] for b in self.basis]
            cols = [[b.column(c) for _r, c in cells] for b in self.basis]
            table = []
            for i in range(self.dim):
                row = []
                for j in range(self.dim):
                    entries = [sum((a * b for a, b in zip(ri, cj) if a and b), Fraction(0))
                               for ri, cj in zip(rows[i], cols[j])]
                    row.append(inverse.apply(entries))
                table.append(row)
            self._table = table
            logger.debug("MULTIPLICATION TABLE: dim=" + str(self.dim) + "; elapsed time=" + str(time.time() - start))
        return self._table

    def element(self, coeffs):
        ''' Matrix sum_k coeffs[k] b_k. '''
        out = ExactMatrix.zeros(self.n, self.n)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b.scale(c)
        return out


def algebra_coordinates(algebra, m):
    ''' Express an element of the image in the algebra basis (None if it is not an element). '''
    return algebra.coordinates(m)


def close_algebra(generators):
    """
    Span-saturation closure of the unital algebra generated by some matrices.
    @param generators: OrderedDict label -> square L{ExactMatrix}, or a list
    @return: L{CommutativeAlgebraImage}; the witness records a non-commuting pair
    @raise LinearAlgebraError: for non-square or mismatched generators
    """
    start = time.time()
    if not isinstance(generators, dict):
        generators = OrderedDict(('g' + str(k + 1), g) for k, g in enumerate(generators))
    n = None
    for label, g in generators.items():
        if not g.is_square():
            raise LinearAlgebraError("Generator " + label + " is not square: " + str(g.shape))
        if n is None:
            n = g.rows
        elif g.rows != n:
            raise LinearAlgebraError("Generator " + label + " has size " + str(g.rows) + ", expected " + str(n))
    if n is None:
        n = 1
    labels = list(generators.keys())
    witness = None
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if generators[a] @ generators[b] != generators[b] @ generators[a]:
                witness = (a, b)
                break
        if witness is not None:
            break
    if witness is not None:
        logger.warning("ALGEBRA CLOSURE: generators " + witness[0] + " and " + witness[1] + " do not commute")

    ident = ExactMatrix.identity(n)
    span = _EchelonSpan()
    span.add(ident.flatten())
    basis, provenance = [ident], ['1']
    frontier = [(ident, '1')]
    while frontier:
        grown = []
        for b, name in frontier:
            for label in labels:
                p = generators[label] @ b
                if span.add(p.flatten()):
                    basis.append(p)
                    word = label if name == '1' else label + '*' + name
                    provenance.append(word)
                    grown.append((p, word))
        logger.debug("ALGEBRA CLOSURE: dim=" + str(len(basis)) + "; new=" + str(len(grown)))
        frontier = grown
    logger.info("ALGEBRA CLOSURE: n=" + str(n) + "; generators=" + str(len(labels)) + "; dim=" +
                str(len(basis)) + "; elapsed time=" + str(time.time() - start))
    return CommutativeAlgebraImage(n, basis, provenance, generators, witness)


class CyclicReport(object):

    def __init__(self, found, vector=None, trials=0, max_rank=0, reason=None):
        self.found = found
        self.vector = vector
        self.trials = trials
        self.max_rank = max_rank
        self.reason = reason

    def to_json(self):
        out = OrderedDict([('found', self.found), ('trials', self.trials), ('max_rank', self.max_rank)])
        if self.vector is not None:
            out['vector'] = [format_scalar(x) for x in self.vector]
        if self.reason is not None:
            out['reason'] = self.reason
        return out


def orbit_rank(algebra, v):
    ''' Rank of the span of b v over the algebra basis. '''
    return rank(ExactMatrix.from_columns([b.apply(v) for b in algebra.basis], algebra.n))


def find_cyclic_vector(algebra, trials=None, seed=None, rng=None):
    """
    Search for a cyclic vector: standard basis vectors first, then seeded random
    rational vectors. Every candidate is verified exactly by rank.
    @param algebra: L{CommutativeAlgebraImage}
    @keyword trials: number of random candidates, default CYCLIC_VECTOR_TRIALS
    @keyword seed: PRNG seed, default DEFAULT_SEED
    @keyword rng: numpy Generator to draw from instead of a fresh seeded one
    @return: L{CyclicReport}
    """
    n = algebra.n
    if algebra.dim < n:
        return CyclicReport(False, trials=0, max_rank=algebra.dim,
                            reason="dim A = " + str(algebra.dim) + " < dim V = " + str(n))
    trials = settings.CYCLIC_VECTOR_TRIALS if trials is None else trials
    if rng is None:
        rng = numpy.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    best = 0
    candidates = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    tried = 0
    for k in range(n + trials):
        v = candidates[k] if k < n else random_rational_vector(rng, n)
        tried += 1
        r = orbit_rank(algebra, v)
        best = max(best, r)
        if r == n:
            algebra.cyclic_vector = v
            logger.debug("CYCLIC VECTOR: found after " + str(tried) + " candidates")
            return CyclicReport(True, vector=v, trials=tried, max_rank=r)
    logger.debug("CYCLIC VECTOR: not found; trials=" + str(tried) + "; max rank=" + str(best))
    return CyclicReport(False, trials=tried, max_rank=best,
                        reason="no cyclic vector among " + str(tried) + " candidates")


def invariant_forms(algebra):
    """
    Basis of the symmetric bilinear forms G with b^T G = G b for every basis element b.
    @return: list of symmetric L{ExactMatrix}
    """
    n = algebra.n
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    position = {}
    for k, (i, j) in enumerate(pairs):
        position[(i, j)] = position[(j, i)] = k
    equations = []
    for b in algebra.basis[1:]:
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * len(pairs)
                # (b^T G)_ij - (G b)_ij
                for k in range(n):
                    if b[k, i]:
                        row[position[(k, j)]] += b[k, i]
                    if b[k, j]:
                        row[position[(i, k)]] -= b[k, j]
                if any(row):
                    equations.append(row)
    if equations:
        sols = kernel_basis(ExactMatrix(equations, cols=len(pairs)))
    else:
        sols = [tuple(Fraction(int(k == m)) for m in range(len(pairs))) for k in range(len(pairs))]
    return [ExactMatrix([[s[position[(i, j)]] for j in range(n)] for i in range(n)]) for s in sols]


class FrobeniusCertificate(object):
    """
    Outcome of the Frobenius test through an invariant form: either a certificate
    (cyclic vector and nondegenerate induced Gram) or the failed hypothesis.
    """

    def __init__(self, certified, hypothesis=None, detail=None, vector=None, induced_gram=None,
                 determinant=None, cyclic=None):
        self.certified = certified
        self.hypothesis = hypothesis
        self.detail = detail
        self.vector = vector
        self.induced_gram = induced_gram
        self.determinant = determinant
        self.cyclic = cyclic

    def to_json(self):
        out = OrderedDict([('method', 'form'), ('certified', self.certified)])
        if self.certified:
            out['certificate'] = OrderedDict([
                ('vector', [format_scalar(x) for x in self.vector]),
                ('induced_gram', self.induced_gram.to_json()),
                ('determinant', format_scalar(self.determinant)),
            ])
        else:
            out['failed_hypothesis'] = self.hypothesis
            out['detail'] = self.detail
        return out


def certify_frobenius_via_form(algebra, gram, trials=None, seed=None, rng=None, cyclic=None):
    """
    Frobenius certificate from a nondegenerate symmetric form for which the algebra
    is self-adjoint, plus a cyclic vector v: the induced form (a, b) = (a v | b v)
    on the algebra is then nondegenerate.
    @param algebra: L{CommutativeAlgebraImage}
    @param gram: symmetric L{ExactMatrix} on the ambient space
    @keyword cyclic: L{CyclicReport} of an earlier search to reuse
    @return: L{FrobeniusCertificate}
    @raise LinearAlgebraError: for an asymmetric gram
    """
    if not gram.is_symmetric():
        raise LinearAlgebraError("Frobenius certificate needs a symmetric Gram matrix")
    det = gram.det()
    if det == 0:
        return FrobeniusCertificate(False, 'nondegenerate', "det of the form is 0 (rank " +
                                    str(rank(gram)) + " of " + str(gram.rows) + ")")
    for label, b in zip(algebra.provenance, algebra.basis):
        if b.T @ gram != gram @ b:
            return FrobeniusCertificate(False, 'invariance', "basis element " + label + " is not self-adjoint")
    if cyclic is None:
        cyclic = find_cyclic_vector(algebra, trials=trials, seed=seed, rng=rng)
    if not cyclic.found:
        return FrobeniusCertificate(False, 'cyclic', cyclic.reason, cyclic=cyclic)
    v = cyclic.vector
    images = ExactMatrix.from_columns([b.apply(v) for b in algebra.basis], algebra.n)
    induced = images.T @ gram @ images
    ind_det = induced.det()
    if ind_det == 0:
        return FrobeniusCertificate(False, 'induced_gram', "induced Gram is degenerate", cyclic=cyclic)
    algebra.frobenius_functional = 'form'
    algebra.gram_determinant = ind_det
    return FrobeniusCertificate(True, vector=v, induced_gram=induced, determinant=ind_det, cyclic=cyclic)


def check_induced_form(algebra, certificate, samples=20, rng=None):
    """
    Symmetry and associativity (ab, c) = (a, bc) of the induced form on sampled
    basis triples.
    @return: list of failures
    """
    failures = []
    g = certificate.induced_gram
    if not g.is_symmetric():
        failures.append("induced Gram is not symmetric")
    if rng is None:
        rng = numpy.random.default_rng(settings.DEFAULT_SEED)
    table = algebra.multiplication_table()
    d = algebra.dim

    def pair(x, y):
        return sum((x[i] * g[i, j] * y[j] for i in range(d) if x[i] for j in range(d) if y[j]), Fraction(0))

    for _k in range(samples):
        i, j, k = (int(x) for x in rng.integers(0, d, size=3))
        ek = tuple(Fraction(int(m == k)) for m in range(d))
        ei = tuple(Fraction(int(m == i)) for m in range(d))
        if pair(table[i][j], ek) != pair(ei, table[j][k]):
            failures.append("associativity at " + str((i, j, k)))
    return failures


def functional_gram(algebra, functional):
    ''' Gram matrix lambda(b_i b_j) of a linear functional on the algebra. '''
    table = algebra.multiplication_table()
    return ExactMatrix([[sum((c * l for c, l in zip(table[i][j], functional)), Fraction(0))
                         for j in range(algebra.dim)] for i in range(algebra.dim)])


def symbolic_functional_determinant(algebra):
    ''' det lambda(b_i b_j) as a polynomial in the coordinates of a generic lambda. '''
    syms = sympy.symbols('l0:' + str(algebra.dim))
    table = algebra.multiplication_table()
    mat = sympy.Matrix(algebra.dim, algebra.dim, lambda i, j: sum(
        sympy.Rational(c.numerator, c.denominator) * s for c, s in zip(table[i][j], syms)))
    return mat, sympy.expand(mat.det(method='berkowitz'))


class FrobeniusProbe(object):

    def __init__(self, frobenius, method, trials, functional=None, determinant=None, polynomial=None):
        self.frobenius = frobenius
        self.method = method
        self.trials = trials
        self.functional = functional
        self.determinant = determinant
        self.polynomial = polynomial

    @property
    def summary(self):
        if self.frobenius:
            return "Frobenius: certified"
        if self.frobenius is False:
            return "not Frobenius: certified"
        return "probably not Frobenius (" + str(self.trials) + " trials)"

    def to_json(self):
        out = OrderedDict([('method', self.method), ('frobenius', self.frobenius), ('summary', self.summary),
                           ('trials', self.trials)])
        if self.functional is not None:
            out['functional'] = [format_scalar(x) for x in self.functional]
            out['determinant'] = format_scalar(self.determinant)
        if self.polynomial is not None:
            out['determinant_polynomial'] = self.polynomial
        return out


def frobenius_gram_probe(algebra, trials=None, seed=None, rng=None):
    """
    Probe the Frobenius property with random functionals lambda: a nonzero
    det lambda(b_i b_j) certifies it. When every trial fails and the algebra is
    small enough the determinant is expanded symbolically; an identically zero
    polynomial certifies that the algebra is not Frobenius.
    @param algebra: commutative L{CommutativeAlgebraImage}
    @return: L{FrobeniusProbe}
    """
    trials = settings.FROBENIUS_PROBE_TRIALS if trials is None else trials
    if rng is None:
        rng = numpy.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    for k in range(trials):
        lam = random_rational_vector(rng, algebra.dim)
        det = functional_gram(algebra, lam).det()
        if det != 0:
            logger.debug("FROBENIUS PROBE: certified at trial " + str(k + 1))
            return FrobeniusProbe(True, 'probe', k + 1, functional=lam, determinant=det)
    if algebra.dim <= settings.FROBENIUS_SYMBOLIC_MAX_DIM:
        _mat, poly = symbolic_functional_determinant(algebra)
        return FrobeniusProbe(poly != 0, 'symbolic', trials, polynomial=str(poly))
    logger.warning("FROBENIUS PROBE: no nondegenerate functional in " + str(trials) +
                   " trials; dim A=" + str(algebra.dim) + " is above the symbolic limit")
    return FrobeniusProbe(None, 'probe', trials)


class EigenBlock(object):
    ''' Generalized joint eigenspace over the rationals, one per maximal ideal of the algebra. '''

    def __init__(self, basis, factors, degree=1):
        """
        @param basis: n x k L{ExactMatrix} spanning the block
        @param factors: OrderedDict generator label -> (irreducible factor, multiplicity)
        @keyword degree: degree of the residue field of the block
        """
        self.basis = basis
        self.factors = factors
        self.degree = degree
        self.eigenspace_dim = None

    @property
    def generalized_dim(self):
        return self.basis.cols

    def to_json(self):
        d = self.degree
        return OrderedDict([
            ('character', OrderedDict((k, format_poly(f)) for k, (f, _m) in self.factors.items())),
            ('degree', d),
            ('eigenspace_dim', self.eigenspace_dim // d),
            ('generalized_dim', self.generalized_dim // d),
        ])


class EigenReport(object):

    def __init__(self, blocks, numeric=None):
        self.blocks = blocks
        self.numeric = numeric
        self.method = 'exact-rational'

    @property
    def eigenspace_dims(self):
        return [b.eigenspace_dim // b.degree for b in self.blocks]

    @property
    def all_one_dimensional(self):
        return all(d == 1 for d in self.eigenspace_dims)

    @property
    def point_count(self):
        ''' Number of complex joint eigenvalues: sum of the residue degrees. '''
        return sum(b.degree for b in self.blocks)

    def to_json(self):
        out = OrderedDict([('method', self.method), ('blocks', [b.to_json() for b in self.blocks]),
                           ('points', self.point_count)])
        if self.numeric is not None:
            out['numeric'] = self.numeric
        return out


def _generalized_eigenspaces(algebra, coeffs):
    """
    Generalized eigenspaces of the element sum coeffs[k] b_k, one per irreducible
    factor of its characteristic polynomial.
    @return: list of (factor, multiplicity, n x k basis)
    """
    c = algebra.element(coeffs)
    factors = irreducible_split(char_poly(c))
    if len(factors) == 1:
        q, m = factors[0]
        return [(q, m, ExactMatrix.identity(algebra.n))]
    parts = []
    for q, m in factors:
        qm = poly_eval_matrix(q, c)
        power = qm
        for _k in range(m - 1):
            power = power @ qm
        parts.append((q, m, ExactMatrix.from_columns(kernel_basis(power), algebra.n)))
    return parts


def _restrictions(algebra, parts):
    """
    Matrix of every basis element on every block: the diagonal blocks of
    S^-1 b S, S the matrix of all block bases side by side.
    @return: per block, the list of restricted basis elements
    """
    s = ExactMatrix.from_columns([col for _q, _m, basis in parts for col in basis.columns()], algebra.n)
    s_inv = s.inverse()
    spans, offset = [], 0
    for _q, _m, basis in parts:
        spans.append(range(offset, offset + basis.cols))
        offset += basis.cols
    out = [[] for _p in parts]
    for b in algebra.basis:
        conj = s_inv @ b @ s
        for k, idx in enumerate(spans):
            out[k].append(conj.submatrix(idx, idx))
    return out


def _combine(coeffs, matrices, k):
    out = ExactMatrix.zeros(k, k)
    for c, m in zip(coeffs, matrices):
        if c:
            out = out + m.scale(c)
    return out


def trace_form(algebra, restricted):
    """
    Gram matrix Tr(b_i b_j) of the trace form of the algebra acting on a block.
    Its rank is the dimension of the algebra modulo its radical there, and its
    kernel is the radical.
    @param restricted: basis elements restricted to the block
    """
    traces = [r.trace() for r in restricted]
    table = algebra.multiplication_table()
    d = algebra.dim
    return ExactMatrix([[sum((c * t for c, t in zip(table[i][j], traces) if c and t), Fraction(0))
                         for j in range(d)] for i in range(d)])


def joint_eigen_analysis(algebra, tolerance=None, seed=None, numeric=True, trials=None):
    """
    Joint generalized eigenspaces of the algebra, split exactly by the
    irreducible factors of a random rational combination of the basis, with a
    float cross-check.

    A combination is accepted once the trace form of every block has rank equal
    to the degree of its factor: the block then carries a single character and
    its residue field is generated by the combination. The joint eigenspace of
    a block is the common kernel of the radical.
    @param algebra: commutative L{CommutativeAlgebraImage}
    @keyword tolerance: float clustering tolerance, default FLOAT_TOLERANCE
    @keyword seed: seed of the random combinations
    @keyword numeric: run the float cross-check
    @keyword trials: combinations to try, default EIGEN_SPLIT_TRIALS
    @return: L{EigenReport}
    """
    start = time.time()
    n = algebra.n
    rng = numpy.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    trials = max(1, settings.EIGEN_SPLIT_TRIALS if trials is None else trials)
    for attempt in range(trials):
        coeffs = (Fraction(0),) + (random_rational_vector(rng, algebra.dim - 1) if algebra.dim > 1 else ())
        parts = _generalized_eigenspaces(algebra, coeffs)
        restricted = _restrictions(algebra, parts)
        forms, degrees = [], []
        for (q, _m, basis), rs in zip(parts, restricted):
            if basis.cols > len(q) - 1:
                form = trace_form(algebra, rs)
                forms.append(form)
                degrees.append(rank(form))
            else:
                forms.append(None)
                degrees.append(len(q) - 1)
        if all(d == len(q) - 1 for d, (q, _m, _b) in zip(degrees, parts)):
            break
        logger.debug("EIGEN ANALYSIS: combination " + str(attempt + 1) + " merges characters; retrying")
    else:
        logger.warning("EIGEN ANALYSIS: no separating combination in " + str(trials) +
                       " trials; blocks may carry several characters")

    gen_coords = OrderedDict((label, algebra.coordinates(g)) for label, g in algebra.generators.items())
    blocks = []
    for (_q, _m, basis), rs, form, d in zip(parts, restricted, forms, degrees):
        k = basis.cols
        factors = OrderedDict()
        for label, coords in gen_coords.items():
            factors[label] = irreducible_split(char_poly(_combine(coords, rs, k)))[0]
        block = EigenBlock(basis, factors, degree=d)
        if form is None:
            block.eigenspace_dim = k
        else:
            radical = [_combine(r, rs, k) for r in kernel_basis(form)]
            block.eigenspace_dim = len(joint_kernel(radical, k))
        blocks.append(block)
    assert sum(b.generalized_dim for b in blocks) == n, "generalized eigenspaces do not fill the space"
    report = EigenReport(blocks)
    if numeric:
        report.numeric = float_eigen_crosscheck(algebra, report, tolerance=tolerance, seed=seed)
    logger.info("EIGEN ANALYSIS: n=" + str(n) + "; blocks=" + str(len(blocks)) + "; eigenspace dims=" +
                str(report.eigenspace_dims) + "; elapsed time=" + str(time.time() - start))
    return report


def _cluster(values, tolerance):
    clusters = []
    for x in sorted(values, key=lambda c: (c.real, c.imag)):
        for cl in clusters:
            if abs(cl[0] - x) <= tolerance * max(1.0, abs(x)):
                cl.append(x)
                break
        else:
            clusters.append([x])
    return clusters


def float_eigen_crosscheck(algebra, report, tolerance=None, seed=None):
    """
    Eigenvalues of a random real combination of the basis, clustered with the
    tolerance and compared with the exact generalized dimensions. A disagreement
    is logged, never raised.
    @return: dict under the report's 'numeric' key
    """
    tolerance = settings.FLOAT_TOLERANCE if tolerance is None else tolerance
    rng = numpy.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    coeffs = rng.standard_normal(algebra.dim)
    mat = numpy.zeros((algebra.n, algebra.n))
    for c, b in zip(coeffs, algebra.basis):
        mat += c * numpy.array([[float(x) for x in r] for r in b.tolist()])
    clusters = _cluster(numpy.linalg.eigvals(mat), tolerance)
    float_dims = sorted(len(cl) for cl in clusters)
    exact_dims = sorted(d for b in report.blocks for d in [b.generalized_dim // b.degree] * b.degree)
    agrees = float_dims == exact_dims
    if not agrees:
        logger.warning("EIGEN ANALYSIS: float clusters " + str(float_dims) + " disagree with exact " +
                       str(exact_dims) + "; tolerance=" + str(tolerance))
    return OrderedDict([('method', 'float-fallback'), ('tolerance', tolerance),
                        ('generalized_dims', float_dims), ('agrees', agrees)])


def check_cross_implications(algebra, cyclic, certificate, probe, eigen):
    """
    Consequences of a Frobenius certificate: a cyclic vector, dim A = dim V, an
    injective orbit map, agreement of the functional probe and one-dimensional
    joint eigenspaces.
    @return: list of failed implications (empty when nothing is certified)
    """
    failures = []
    if certificate is None or not certificate.certified:
        if eigen is not None and probe is not None and not eigen.all_one_dimensional and probe.frobenius:
            # Frobenius algebras acting cyclically have one-dimensional eigenspaces
            if cyclic is not None and cyclic.found:
                failures.append("cyclic Frobenius algebra with an eigenspace of dim > 1")
        return failures
    if cyclic is None or not cyclic.found:
        failures.append("certified without a cyclic vector")
    if algebra.dim != algebra.n:
        failures.append("dim A = " + str(algebra.dim) + " != dim V = " + str(algebra.n))
    if certificate.vector is not None and orbit_rank(algebra, certificate.vector) != algebra.dim:
        failures.append("orbit map a -> a v is not injective")
    if probe is not None and probe.frobenius is False:
        failures.append("functional probe certifies the algebra is not Frobenius")
    if eigen is not None:
        if not eigen.all_one_dimensional:
            failures.append("eigenspace of dim > 1: " + str(eigen.eigenspace_dims))
        if eigen.point_count != algebra.dim:
            failures.append("number of joint eigenvalues " + str(eigen.point_count) + " != dim A")
    if failures:
        logger.error("CROSS CHECK: " + "; ".join(failures))
    return failures


def counterexample_generators():
    """
    Regular representation of Q[x1, x2]/(x1^2, x2^2, x1 x2) on the basis (1, x1, x2).
    @return: OrderedDict label -> multiplication matrix
    """
    x1 = ExactMatrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    x2 = ExactMatrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    return OrderedDict([('x1', x1), ('x2', x2)])


def counterexample_report(seed=None):
    """
    Run the regular representation of Q[x1, x2]/(x1^2, x2^2, x1 x2) through the
    laboratory: it is cyclic, not Frobenius and its joint eigenspace has dimension 2.
    @return: OrderedDict report with a 'checks' entry per assertion
    """
    algebra = close_algebra(counterexample_generators())
    cyclic = find_cyclic_vector(algebra, seed=seed)
    probe = frobenius_gram_probe(algebra, seed=seed)
    forms = invariant_forms(algebra)
    generic = ExactMatrix.zeros(algebra.n, algebra.n)
    for g in forms:
        generic = generic + g
    certificate = certify_frobenius_via_form(algebra, generic, seed=seed)
    eigen = joint_eigen_analysis(algebra, seed=seed)
    trivial = next(b for b in eigen.blocks if all(f == [1, 0] for f, _m in b.factors.values()))
    mat, poly = symbolic_functional_determinant(algebra)
    checks = OrderedDict([
        ('cyclic', cyclic.found),
        ('not_frobenius', probe.frobenius is False),
        ('trivial_eigenspace_dim_2', trivial.eigenspace_dim == 2),
    ])
    return OrderedDict([
        ('algebra', OrderedDict([('basis', algebra.provenance), ('dim', algebra.dim)])),
        ('cyclic', cyclic.to_json()),
        ('frobenius', probe.to_json()),
        ('form_certificate', certificate.to_json()),
        ('invariant_forms', [g.to_json() for g in forms]),
        ('eigen', eigen.to_json()),
        ('trivial_character', OrderedDict([('eigenspace_dim', trivial.eigenspace_dim),
                                           ('generalized_dim', trivial.generalized_dim)])),
        ('functional_gram', [[str(x) for x in row] for row in mat.tolist()]),
        ('functional_determinant', str(poly)),
        ('checks', checks),
        ('passed', all(checks.values())),
    ])

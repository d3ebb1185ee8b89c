"""
Chevalley bases with exact structure constants.

Basis order is e_beta for the positive roots (in root order), then h_1..h_r, then
f_beta = e_{-beta}. Signs of the structure constants follow the extraspecial
pair convention: for every non-simple positive root xi, the pair (alpha, beta)
with alpha the first positive root such that xi - alpha is a positive root gets
N_{alpha,beta} = +(p+1). The basis satisfies [e_beta, f_beta] = h_beta and
N_{-x,-y} = -N_{x,y}.
"""
from collections import OrderedDict
from fractions import Fraction
from functools import lru_cache
import hashlib
import json
import logging
import re
import time

from django.conf import settings

from gaudinlab.exceptions import DegenerateFormError, LinearAlgebraError
from gaudinlab.lie.roots import RootSystem
from gaudinlab.linalg import ExactMatrix, format_scalar, parse_scalar


logger = logging.getLogger(__name__)

LABEL_ROOT = re.compile(r'^([ef])\[(-?\d+(?:,-?\d+)*)\]$')
LABEL_SIMPLE = re.compile(r'^([efh])(\d+)$')


def _neg(x):
    return tuple(-c for c in x)


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _exact_int(q):
    assert q.denominator == 1, "non-integral structure constant " + str(q)
    return int(q)


class StructureConstants(object):
    """
    Integer structure constants N_{x,y} for roots x, y, with [e_x, e_y] = N_{x,y} e_{x+y}.
    """

    def __init__(self, rs):
        self.rs = rs
        self.table = {}
        self.extraspecial = OrderedDict()
        for xi in rs.positive_roots[rs.rank:]:
            self._fill(xi)

    def _fill(self, xi):
        rs = self.rs
        pairs = []
        for gamma in rs.positive_roots:
            delta = _sub(xi, gamma)
            if rs.is_positive_root(delta) and rs.root_index(gamma) < rs.root_index(delta):
                pairs.append((gamma, delta))
        alpha, beta = pairs[0]
        n_ab = rs.root_string_p(alpha, beta) + 1
        self.extraspecial[xi] = (alpha, beta)
        self._set(alpha, beta, n_ab)
        norm_xi = rs.inner(xi, xi)
        for gamma, delta in pairs[1:]:
            total = Fraction(0)
            d_a = _sub(delta, alpha)
            if rs.is_root(d_a):
                total += Fraction(self.N(delta, _neg(alpha)) * self.N(gamma, _neg(beta)), rs.inner(d_a, d_a))
            g_a = _sub(gamma, alpha)
            if rs.is_root(g_a):
                total += Fraction(self.N(_neg(alpha), gamma) * self.N(delta, _neg(beta)), rs.inner(g_a, g_a))
            n_gd = total * norm_xi / n_ab
            assert n_gd.denominator == 1 and n_gd != 0, "inconsistent structure constant"
            self._set(gamma, delta, int(n_gd))

    def _set(self, x, y, n):
        self.table[(x, y)] = n
        self.table[(y, x)] = -n

    def N(self, x, y):
        ''' Structure constant for roots x, y; 0 when x + y is not a root. '''
        rs = self.rs
        s = _add(x, y)
        if not rs.is_root(s):
            return 0
        xpos, ypos = rs.is_positive_root(x), rs.is_positive_root(y)
        if xpos and ypos:
            return self.table[(x, y)]
        if not xpos and not ypos:
            return -self.N(_neg(x), _neg(y))
        if not xpos:
            return -self.N(y, x)
        # x positive, y negative
        if rs.is_positive_root(s):
            return _exact_int(Fraction(-rs.inner(s, s) * self.N(_neg(y), s), rs.inner(x, x)))
        z = _neg(s)
        return _exact_int(Fraction(rs.inner(z, z) * self.N(z, x), rs.inner(y, y)))


class ChevalleyAlgebra(object):
    """
    A finite-type simple Lie algebra in its Chevalley basis, with an invariant form.
    Elements are coordinate tuples of Fractions over L{labels}.
    """

    def __init__(self, rs, form='killing'):
        """
        @param rs: L{RootSystem}
        @keyword form: form normalization, 'killing' or 'normalized'
        """
        if form not in settings.FORM_NORMALIZATIONS:
            raise LinearAlgebraError("Unknown form normalization '" + str(form) + "'")
        start = time.time()
        self.rs = rs
        self.form_normalization = form
        self.rank = rs.rank
        self.n_pos = len(rs.positive_roots)
        self.dim = 2 * self.n_pos + self.rank
        self.constants = StructureConstants(rs)
        self.labels = ([ChevalleyAlgebra.root_label('e', b) for b in rs.positive_roots] +
                       ['h' + str(i + 1) for i in range(self.rank)] +
                       [ChevalleyAlgebra.root_label('f', b) for b in rs.positive_roots])
        self._label_index = {lab: k for k, lab in enumerate(self.labels)}
        self.weights = ([tuple(b) for b in rs.positive_roots] + [tuple([0] * self.rank)] * self.rank +
                        [_neg(b) for b in rs.positive_roots])
        self._brackets = self._bracket_table()
        self.gram = self._form_gram(form)
        self._gram_rows = [[(j, g) for j, g in enumerate(self.gram.row(i)) if g] for i in range(self.dim)]
        self._dual = None
        logger.debug("CHEVALLEY BASIS: algebra=" + rs.name + "; dim=" + str(self.dim) +
                     "; form=" + form + "; elapsed time=" + str(time.time() - start))

    @classmethod
    def root_label(cls, letter, beta):
        return letter + '[' + ','.join(str(c) for c in beta) + ']'

    def __repr__(self):
        return "ChevalleyAlgebra(" + self.rs.name + ", " + self.form_normalization + ")"

    # basis indexing

    def e_index(self, beta):
        return self.rs.root_index(beta)

    def h_index(self, i):
        ''' Index of h_{i+1} (0-based i). '''
        return self.n_pos + i

    def f_index(self, beta):
        return self.n_pos + self.rank + self.rs.root_index(beta)

    def root_vector_index(self, x):
        ''' Index of e_x for a signed root x. '''
        x = tuple(x)
        if self.rs.is_positive_root(x):
            return self.e_index(x)
        return self.f_index(_neg(x))

    def index(self, label):
        """
        Basis index of a label. Accepts 'e[1,1]', 'f[0,1]', 'h2' and the simple
        root aliases 'e1', 'f2'.
        """
        label = label.strip()
        if label in self._label_index:
            return self._label_index[label]
        m = LABEL_SIMPLE.match(label)
        if m:
            i = int(m.group(2)) - 1
            if 0 <= i < self.rank:
                if m.group(1) == 'h':
                    return self.h_index(i)
                beta = tuple(int(i == j) for j in range(self.rank))
                return self.e_index(beta) if m.group(1) == 'e' else self.f_index(beta)
        m = LABEL_ROOT.match(label)
        if m:
            beta = tuple(int(c) for c in m.group(2).split(','))
            if len(beta) == self.rank and self.rs.is_positive_root(beta):
                return self.e_index(beta) if m.group(1) == 'e' else self.f_index(beta)
        raise LinearAlgebraError("Unknown basis label '" + label + "' for " + self.rs.name)

    def basis_vector(self, k):
        return tuple(Fraction(int(j == k)) for j in range(self.dim))

    def element(self, coords):
        """
        Build an element from a mapping of basis label to exact scalar.
        @param coords: dict label -> scalar
        """
        v = [Fraction(0)] * self.dim
        for label, c in coords.items():
            v[self.index(label)] += parse_scalar(c)
        return tuple(v)

    def describe(self, x):
        ''' Mapping label -> canonical scalar string of the nonzero coordinates. '''
        return OrderedDict((self.labels[k], format_scalar(c)) for k, c in enumerate(x) if c)

    def support(self, x):
        ''' Set of 'e', 'h', 'f' parts carrying nonzero coordinates. '''
        parts = set()
        for k, c in enumerate(x):
            if c:
                parts.add('e' if k < self.n_pos else ('h' if k < self.n_pos + self.rank else 'f'))
        return parts

    # brackets

    def _bracket_table(self):
        """
        Sparse bracket of basis elements, dict (i, j) -> {k: coefficient}, for i < j.
        """
        rs = self.rs
        roots = [tuple(b) for b in rs.positive_roots] + [_neg(b) for b in rs.positive_roots]
        table = {}
        for x in roots:
            ix = self.root_vector_index(x)
            for i in range(self.rank):
                c = rs.pairing_simple(x, i)
                if c:
                    # [h_i, e_x] = <x, alpha_i^vee> e_x
                    hi = self.h_index(i)
                    if hi < ix:
                        table[(hi, ix)] = {ix: Fraction(c)}
                    else:
                        table[(ix, hi)] = {ix: Fraction(-c)}
            for y in roots:
                iy = self.root_vector_index(y)
                if ix >= iy:
                    continue
                s = _add(x, y)
                if not any(s):
                    h = self.coroot(x) if rs.is_positive_root(x) else tuple(-c for c in self.coroot(y))
                    table[(ix, iy)] = {self.h_index(i): c for i, c in enumerate(h) if c}
                elif rs.is_root(s):
                    table[(ix, iy)] = {self.root_vector_index(s): Fraction(self.constants.N(x, y))}
        return table

    def coroot(self, beta):
        ''' Coordinates of h_beta = [e_beta, f_beta] on h_1..h_r. '''
        return self.rs.coroot_coefficients(beta)

    def bracket_basis(self, i, j):
        ''' [b_i, b_j] as a sparse dict. '''
        if i < j:
            return self._brackets.get((i, j), {})
        if i > j:
            return {k: -c for k, c in self._brackets.get((j, i), {}).items()}
        return {}

    def bracket(self, x, y):
        ''' Lie bracket of two coordinate vectors. '''
        out = [Fraction(0)] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            for j, b in ys:
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += a * b * c
        return tuple(out)

    def ad(self, x):
        ''' Matrix of ad(x) on the basis. '''
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    # invariant form

    def _killing(self, i, j):
        ''' tr(ad b_i ad b_j) from the sparse table. '''
        total = Fraction(0)
        for k in range(self.dim):
            for m, c in self.bracket_basis(j, k).items():
                total += c * self.bracket_basis(i, m).get(k, 0)
        return total

    def _form_gram(self, form):
        n = self.dim
        entries = {}
        for b in self.rs.positive_roots:
            ie, jf = self.e_index(b), self.f_index(b)
            entries[(ie, jf)] = entries[(jf, ie)] = self._killing(ie, jf)
        for i in range(self.rank):
            for j in range(i, self.rank):
                hi, hj = self.h_index(i), self.h_index(j)
                entries[(hi, hj)] = entries[(hj, hi)] = self._killing(hi, hj)
        scale = Fraction(1)
        if form == 'normalized':
            long_i = max(range(self.rank), key=lambda i: (self.rs.root_lengths[i], -i))
            hl = self.h_index(long_i)
            scale = Fraction(2) / entries[(hl, hl)]
        rows = [[entries.get((i, j), 0) * scale for j in range(n)] for i in range(n)]
        return ExactMatrix(rows)

    def form(self, x, y):
        ''' Invariant form <x, y>. '''
        return sum((a * g * y[j] for i, a in enumerate(x) if a for j, g in self._gram_rows[i] if y[j]),
                   Fraction(0))

    def dual_bases(self):
        """
        Dual bases with respect to the invariant form.
        @return: (basis, dual) lists of coordinate vectors with <basis[a], dual[b]> = delta_ab
        """
        if self._dual is None:
            try:
                inv = self.gram.inverse()
            except LinearAlgebraError:
                raise DegenerateFormError("Invariant form of " + self.rs.name + " is degenerate")
            basis = [self.basis_vector(k) for k in range(self.dim)]
            self._dual = (basis, inv.columns())
        return self._dual

    def canonical_tensor(self, basis=None):
        """
        Coordinates of sum_a X_a (x) X^a as a dim x dim matrix, computed from the
        given basis (columns of an invertible matrix) and its dual.
        @keyword basis: L{ExactMatrix} whose columns form a basis of the algebra
        """
        if basis is None:
            basis = ExactMatrix.identity(self.dim)
        gram_b = basis.T @ self.gram @ basis
        return basis @ gram_b.inverse() @ basis.T

    def casimir_eigenvalue(self, weight):
        ''' (lambda, lambda + 2 rho) in the normalization of the form. '''
        return self._weight_form(weight, tuple(w + 2 for w in weight))

    def _weight_form(self, lam, mu):
        """
        Form on weights given in fundamental coordinates, induced from the form on h.
        """
        # element of h representing lambda: H_lam with <H_lam, h_i> = lam_i
        h_block = self.gram.submatrix([self.h_index(i) for i in range(self.rank)],
                                      [self.h_index(i) for i in range(self.rank)])
        inv = h_block.inverse()
        return sum((Fraction(lam[i]) * inv[i, j] * mu[j] for i in range(self.rank)
                    for j in range(self.rank)), Fraction(0))

    # Cartan anti-involution

    def cartan_antiinvolution(self):
        """
        The anti-involution fixing h and sending e_i to f_i.
        @return: L{CartanInvolutionMap}
        """
        return CartanInvolutionMap(self)

    # verification

    def check_jacobi(self, triples=None):
        """
        Jacobi identity on basis triples.
        @keyword triples: iterable of index triples, default all i < j < k
        @return: first failing triple, or None
        """
        if triples is None:
            triples = ((i, j, k) for i in range(self.dim) for j in range(i + 1, self.dim)
                       for k in range(j + 1, self.dim))
        for i, j, k in triples:
            x, y, z = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            total = [a + b + c for a, b, c in zip(self.bracket(x, self.bracket(y, z)),
                                                  self.bracket(y, self.bracket(z, x)),
                                                  self.bracket(z, self.bracket(x, y)))]
            if any(total):
                return (self.labels[i], self.labels[j], self.labels[k])
        return None

    def check_serre(self):
        """
        Chevalley-Serre relations on the generators.
        @return: list of failing relations as strings
        """
        failures = []
        rs = self.rs
        simple = rs.simple_roots
        for i in range(self.rank):
            ei, fi, hi = (self.basis_vector(self.e_index(simple[i])), self.basis_vector(self.f_index(simple[i])),
                          self.basis_vector(self.h_index(i)))
            for j in range(self.rank):
                ej, fj = self.basis_vector(self.e_index(simple[j])), self.basis_vector(self.f_index(simple[j]))
                expected = hi if i == j else tuple([Fraction(0)] * self.dim)
                if self.bracket(ei, fj) != expected:
                    failures.append("[e" + str(i + 1) + ",f" + str(j + 1) + "]")
                a = rs.cartan_matrix[j][i]
                if self.bracket(hi, ej) != tuple(a * c for c in ej):
                    failures.append("[h" + str(i + 1) + ",e" + str(j + 1) + "]")
                if self.bracket(hi, fj) != tuple(-a * c for c in fj):
                    failures.append("[h" + str(i + 1) + ",f" + str(j + 1) + "]")
                if i == j:
                    continue
                xe, xf = ej, fj
                for _k in range(1 - a):
                    xe = self.bracket(ei, xe)
                    xf = self.bracket(fi, xf)
                if any(xe):
                    failures.append("ad(e" + str(i + 1) + ")^" + str(1 - a) + " e" + str(j + 1))
                if any(xf):
                    failures.append("ad(f" + str(i + 1) + ")^" + str(1 - a) + " f" + str(j + 1))
        return failures

    def check_form_invariance(self):
        """
        Symmetry and invariance <[x,y],z> = <x,[y,z]> on all basis triples.
        @return: first failing triple, or None
        """
        if not self.gram.is_symmetric():
            return ('asymmetric',)
        for i in range(self.dim):
            x = self.basis_vector(i)
            for j in range(self.dim):
                y = self.basis_vector(j)
                xy = self.bracket(x, y)
                for k in range(self.dim):
                    z = self.basis_vector(k)
                    if self.form(xy, z) != self.form(x, self.bracket(y, z)):
                        return (self.labels[i], self.labels[j], self.labels[k])
        return None

    def to_json(self):
        ''' Structure-constant table keyed by basis label pairs. '''
        brackets = OrderedDict()
        for (i, j) in sorted(self._brackets):
            brackets[self.labels[i] + ',' + self.labels[j]] = OrderedDict(
                (self.labels[k], format_scalar(c)) for k, c in sorted(self._brackets[(i, j)].items()))
        data = self.rs.to_json()
        data.update({'form': self.form_normalization, 'basis': list(self.labels), 'brackets': brackets,
                     'gram': self.gram.to_json()})
        return data

    def digest(self):
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode('utf-8')).hexdigest()


class CartanInvolutionMap(object):
    """
    Signed permutation of the Chevalley basis realizing the anti-involution:
    e_beta -> c_beta f_beta, f_beta -> c_beta e_beta, h_i -> h_i. The signs are
    propagated along extraspecial pairs from the simple roots.
    """

    def __init__(self, alg):
        self.alg = alg
        rs = alg.rs
        consts = alg.constants
        self.signs = OrderedDict((b, Fraction(1)) for b in rs.simple_roots)
        for xi in rs.positive_roots[rs.rank:]:
            alpha, beta = consts.extraspecial[xi]
            # w(e_xi) = w([e_a, e_b])/N_ab = [w e_b, w e_a]/N_ab
            self.signs[xi] = (self.signs[alpha] * self.signs[beta] *
                              Fraction(consts.N(_neg(beta), _neg(alpha)), consts.N(alpha, beta)))
        image = [None] * alg.dim
        for b, c in self.signs.items():
            image[alg.e_index(b)] = (alg.f_index(b), c)
            image[alg.f_index(b)] = (alg.e_index(b), c)
        for i in range(alg.rank):
            image[alg.h_index(i)] = (alg.h_index(i), Fraction(1))
        self.image = image

    def apply(self, x):
        out = [Fraction(0)] * self.alg.dim
        for k, a in enumerate(x):
            if a:
                j, c = self.image[k]
                out[j] += c * a
        return tuple(out)

    def matrix(self):
        cols = [self.apply(self.alg.basis_vector(k)) for k in range(self.alg.dim)]
        return ExactMatrix.from_columns(cols, self.alg.dim)

    def sign(self, beta):
        return self.signs[tuple(beta)]

    def check(self):
        """
        Anti-involution identity w([x,y]) = [w(y), w(x)], w^2 = id and w-invariance of
        the form, on all basis pairs.
        @return: list of failures as strings
        """
        alg = self.alg
        failures = []
        for i in range(alg.dim):
            x = alg.basis_vector(i)
            wx = self.apply(x)
            if self.apply(wx) != x:
                failures.append("square " + alg.labels[i])
            for j in range(alg.dim):
                y = alg.basis_vector(j)
                wy = self.apply(y)
                if self.apply(alg.bracket(x, y)) != alg.bracket(wy, wx):
                    failures.append("bracket " + alg.labels[i] + "," + alg.labels[j])
                if alg.form(wx, wy) != alg.form(x, y):
                    failures.append("form " + alg.labels[i] + "," + alg.labels[j])
        return failures


@lru_cache(maxsize=32)
def get_algebra(type_letter, rank, form='killing'):
    """
    Build (once per process) the Chevalley algebra of a finite type.
    @param type_letter: A-G
    @param rank: rank
    @keyword form: form normalization
    """
    return ChevalleyAlgebra(RootSystem(type_letter, rank), form=form)

"""
Gaudin models on tensor products of irreducible modules.

Operators are exact matrices on V = V_1 (x) ... (x) V_l with the first site on the
slowest index. The twist mu is an element of the algebra; as a functional it acts
by X -> <mu, X> for the configured invariant form.
"""
from collections import OrderedDict
from fractions import Fraction
from math import comb
import logging
import time

from django.conf import settings

from gaudinlab.exceptions import ChainSpaceError, ConfigError, LinearAlgebraError, WeightError
from gaudinlab.highest_weight import build_irrep
from gaudinlab.lie.chevalley import get_algebra
from gaudinlab.linalg import ExactMatrix, format_scalar, joint_kernel, kernel_basis, parse_scalar, restrict_to


logger = logging.getLogger(__name__)


class GaudinConfig(object):
    """
    Parameters of a Gaudin model: algebra, highest weights, evaluation points, twist
    and boundary condition mode.
    """

    def __init__(self, type_letter, rank, weights, z, mu=None, form=None, mode='periodic',
                 include_cartan=None, extra_generators=None, checks=None, allow_zero_z=False):
        """
        @param type_letter: finite type letter
        @param rank: rank
        @param weights: list of dominant integral weights, one per site
        @param z: list of evaluation points (exact scalars)
        @keyword mu: twist as a dict with optional 'h' (list of coordinates on h_i) and
                     'f' (dict label -> scalar) parts
        @keyword form: invariant form normalization
        @keyword mode: 'periodic', 'regular' or 'general'
        @keyword include_cartan: add the diagonal Cartan operators to the generators,
                                 default on for periodic and regular modes
        @keyword extra_generators: list of current monomials, each a list of (label, s)
        @keyword checks: dict of exactness checks to enable or disable
        @keyword allow_zero_z: accept a zero evaluation point
        """
        self.type_letter = type_letter
        self.rank = rank
        self.form = settings.DEFAULT_FORM if form is None else form
        self.weights = [tuple(w) for w in weights]
        self.z = [parse_scalar(x) for x in z]
        self.mu_spec = mu if mu is not None else {}
        self.mode = mode
        self.include_cartan = (mode != 'general') if include_cartan is None else include_cartan
        self.extra_generators = [[(lab, int(s)) for lab, s in mono] for mono in (extra_generators or [])]
        self.checks = OrderedDict(settings.VERDICT_CHECKS)
        self.checks.update(checks or {})
        self.allow_zero_z = allow_zero_z
        self.alg = get_algebra(type_letter, rank, self.form)
        self.mu = self._mu_vector()
        self.validate()

    def _mu_vector(self):
        alg = self.alg
        coords = OrderedDict()
        h = self.mu_spec.get('h', [])
        if len(h) not in (0, alg.rank):
            raise ConfigError({'mu.h': "expected " + str(alg.rank) + " coordinates, found " + str(len(h))})
        for i, c in enumerate(h):
            coords['h' + str(i + 1)] = c
        for label, c in self.mu_spec.get('f', {}).items():
            if not label.startswith('f'):
                raise ConfigError({'mu.f': "'" + label + "' is not a lowering basis label"})
            try:
                alg.index(label)
            except LinearAlgebraError:
                raise ConfigError({'mu.f': "unknown basis label '" + label + "'"})
            coords[label] = c
        return alg.element(coords)

    @property
    def sites(self):
        return len(self.weights)

    def validate(self):
        """
        Check the configuration invariants.
        @raise ConfigError: detail keyed by the config field path
        """
        if len(self.weights) == 0:
            raise ConfigError({'weights': "at least one site is required"})
        if len(self.z) != len(self.weights):
            raise ConfigError({'z': "expected " + str(len(self.weights)) + " evaluation points, found " +
                               str(len(self.z))})
        if len(set(self.z)) != len(self.z):
            raise ConfigError({'z': "evaluation points must be pairwise distinct: " +
                               str([format_scalar(x) for x in self.z])})
        if any(x == 0 for x in self.z):
            if not self.allow_zero_z:
                raise ConfigError({'z': "evaluation points must be nonzero"})
            logger.warning("GAUDIN CONFIG: zero evaluation point accepted; negative degrees cannot be evaluated")
        for a, w in enumerate(self.weights):
            try:
                self.alg.rs.check_dominant(w)
            except WeightError as e:
                raise ConfigError({'weights[' + str(a) + ']': str(e.detail['Weight Error'])})
        if self.mode not in settings.GAUDIN_MODES:
            raise ConfigError({'mode': "unknown mode '" + str(self.mode) + "'"})
        parts = self.alg.support(self.mu)
        if self.mode == 'periodic' and parts:
            raise ConfigError({'mu': "periodic mode requires mu = 0"})
        if self.mode == 'regular':
            if parts - {'h'}:
                raise ConfigError({'mu': "regular mode requires mu in the Cartan subalgebra"})
            verdict = check_mu_regular(self.alg, self.mu)
            if not verdict['regular']:
                raise ConfigError({'mu': "mu is not regular, vanishing roots: " +
                                   ", ".join(verdict['vanishing'])})
        if self.mode == 'general' and 'e' in parts:
            raise ConfigError({'mu': "general mode requires mu in the lower Borel subalgebra"})

    def to_json(self):
        ''' Canonical form used for digests and reports. '''
        return OrderedDict([
            ('algebra', OrderedDict([('type', self.type_letter), ('rank', self.rank), ('form', self.form)])),
            ('weights', [list(w) for w in self.weights]),
            ('z', [format_scalar(x) for x in self.z]),
            ('mu', self.alg.describe(self.mu)),
            ('mode', self.mode),
            ('include_cartan', self.include_cartan),
            ('extra_generators', [[[lab, s] for lab, s in mono] for mono in self.extra_generators]),
            ('checks', self.checks),
            ('allow_zero_z', self.allow_zero_z),
        ])


def check_mu_regular(alg, mu):
    """
    Regularity of an element of the Cartan subalgebra.
    @param alg: L{ChevalleyAlgebra}
    @param mu: coordinates of an element supported on h
    @return: dict with 'regular', 'values' (root label -> alpha(mu)) and 'vanishing' (root labels)
    @raise ConfigError: if mu has raising or lowering components
    """
    if alg.support(mu) - {'h'}:
        raise ConfigError({'mu': "regularity is defined for mu in the Cartan subalgebra only"})
    rs = alg.rs
    c = [mu[alg.h_index(i)] for i in range(alg.rank)]
    values = OrderedDict()
    vanishing = []
    for beta in rs.positive_roots:
        label = 'alpha' + str(list(beta))
        val = sum((ci * rs.pairing_simple(beta, i) for i, ci in enumerate(c)), Fraction(0))
        values[label] = format_scalar(val)
        if val == 0:
            vanishing.append(label)
    return OrderedDict([('regular', not vanishing), ('values', values), ('vanishing', vanishing)])


def evaluation_action(module, z, x, s):
    """
    Image of X[s] under evaluation at z: z^s times the action of X.
    @param module: L{HighestWeightModule}
    @param z: evaluation point
    @param x: algebra element (coordinates)
    @param s: integer degree
    """
    z = parse_scalar(z)
    if z == 0 and s < 0:
        raise ConfigError({'z': "negative degree " + str(s) + " evaluated at z = 0"})
    return module.action(x).scale(z ** s)


class TensorModule(object):
    """
    Tensor product of highest-weight modules with site embeddings (X)_a.
    """

    def __init__(self, alg, modules):
        self.alg = alg
        self.factors = list(modules)
        self.dims = [m.dim for m in self.factors]
        self.dim = 1
        for d in self.dims:
            self.dim *= d
        self._dual_actions = {}

    def embed(self, ops):
        """
        Kronecker product with the given factor operators and identities elsewhere.
        @param ops: dict site index -> factor matrix
        """
        out = ExactMatrix.identity(1)
        for a, d in enumerate(self.dims):
            out = out.kron(ops[a] if a in ops else ExactMatrix.identity(d))
        return out

    def site_action(self, a, x):
        ''' (X)_a for an algebra element X. '''
        return self.embed({a: self.factors[a].action(x)})

    def diagonal(self, x):
        ''' Diagonal action sum_a (X)_a. '''
        out = ExactMatrix.zeros(self.dim, self.dim)
        for a in range(len(self.factors)):
            out = out + self.site_action(a, x)
        return out

    def weights(self):
        ''' Weight of every tensor basis vector, in fundamental coordinates. '''
        out = [tuple([0] * self.alg.rank)]
        for m in self.factors:
            site = [b.weight for b in m.blocks.values() for _w in b.words]
            out = [tuple(x + y for x, y in zip(w, v)) for w in out for v in site]
        return out

    def weight_decomposition(self):
        dec = OrderedDict()
        for w in self.weights():
            dec[w] = dec.get(w, 0) + 1
        return dec

    def gram(self):
        ''' Tensor Shapovalov Gram matrix. '''
        out = ExactMatrix.identity(1)
        for m in self.factors:
            out = out.kron(m.gram)
        return out

    def dual_actions(self, a):
        ''' Factor matrices of the basis and of the dual basis at site a. '''
        if a not in self._dual_actions:
            basis, dual = self.alg.dual_bases()
            m = self.factors[a]
            self._dual_actions[a] = ([m.action(x) for x in basis], [m.action(y) for y in dual])
        return self._dual_actions[a]


def omega_pair(tensor, a, b):
    """
    Omega_ab = sum_k (X_k)_a (X^k)_b over dual bases of the invariant form.
    @param tensor: L{TensorModule}
    @param a: site index (0-based)
    @param b: site index (0-based)
    """
    xs, _d = tensor.dual_actions(a)
    _b, ys = tensor.dual_actions(b)
    n = tensor.dims[a]
    if a == b:
        cas = ExactMatrix.zeros(n, n)
        for x, y in zip(xs, ys):
            cas = cas + x @ y
        return tensor.embed({a: cas})
    out = ExactMatrix.zeros(tensor.dim, tensor.dim)
    for x, y in zip(xs, ys):
        if x.is_zero() or y.is_zero():
            continue
        out = out + tensor.embed({a: x, b: y})
    return out


def combined_map(config, tensor, x, s):
    """
    sum_a z_a^s (X)_a + delta_{s,-1} <mu, X> Id.
    @param config: L{GaudinConfig}
    @param tensor: L{TensorModule}
    @param x: algebra element (coordinates)
    @param s: integer degree
    """
    out = ExactMatrix.zeros(tensor.dim, tensor.dim)
    for a, z in enumerate(config.z):
        out = out + tensor.embed({a: evaluation_action(tensor.factors[a], z, x, s)})
    if s == -1:
        out = out + ExactMatrix.scalar(tensor.dim, config.alg.form(config.mu, x))
    return out


class RationalOperatorFunction(object):
    """
    Operator-valued rational function of u with poles at the evaluation points:
    constant + sum over (site, order) of C / (u - z_site)^order.
    """

    def __init__(self, poles, dim, terms=None, constant=None):
        """
        @param poles: evaluation points, indexed by site
        @param dim: operator size
        @keyword terms: dict (site, order) -> L{ExactMatrix}
        @keyword constant: L{ExactMatrix}, default zero
        """
        self.poles = [parse_scalar(p) for p in poles]
        self.dim = dim
        self.terms = OrderedDict()
        for key in sorted(terms or {}):
            if not terms[key].is_zero():
                self.terms[key] = terms[key]
        self.constant = ExactMatrix.zeros(dim, dim) if constant is None else constant

    def coefficient(self, site, order):
        ''' Coefficient of (u - z_site)^-order; order 0 is the constant term. '''
        if order == 0:
            return self.constant
        return self.terms.get((site, order), ExactMatrix.zeros(self.dim, self.dim))

    @property
    def max_order(self):
        return max([o for _s, o in self.terms] + [0])

    def evaluate(self, u):
        ''' Value at a point off the poles. '''
        u = parse_scalar(u)
        out = self.constant
        for (a, m), c in self.terms.items():
            diff = u - self.poles[a]
            if diff == 0:
                raise ConfigError({'u': "evaluation at the pole " + format_scalar(u)})
            out = out + c.scale(1 / diff ** m)
        return out

    def _combine(self, terms, constant):
        return RationalOperatorFunction(self.poles, self.dim, terms, constant)

    def __add__(self, other):
        terms = OrderedDict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return self._combine(terms, self.constant + other.constant)

    def scale(self, c):
        return self._combine(OrderedDict((k, m.scale(c)) for k, m in self.terms.items()), self.constant.scale(c))

    def derivative(self, s):
        ''' (1/s!) d^s/du^s, term by term. '''
        if s == 0:
            return self
        terms = OrderedDict()
        for (a, m), c in self.terms.items():
            terms[(a, m + s)] = c.scale((-1) ** s * comb(m + s - 1, s))
        return self._combine(terms, ExactMatrix.zeros(self.dim, self.dim))

    def _pole_product(self, a, m, b, n):
        """
        Partial fractions of 1/((u-z_a)^m (u-z_b)^n) for a != b.
        @return: list of ((site, order), coefficient)
        """
        za, zb = self.poles[a], self.poles[b]
        out = []
        for i in range(1, m + 1):
            k = m - i
            out.append(((a, i), Fraction((-1) ** k * comb(n + k - 1, k)) / (za - zb) ** (n + k)))
        for j in range(1, n + 1):
            k = n - j
            out.append(((b, j), Fraction((-1) ** k * comb(m + k - 1, k)) / (zb - za) ** (m + k)))
        return out

    def __mul__(self, other):
        terms = OrderedDict()

        def add(key, mat):
            terms[key] = terms[key] + mat if key in terms else mat

        for (a, m), c in self.terms.items():
            if not other.constant.is_zero():
                add((a, m), c @ other.constant)
            for (b, n), d in other.terms.items():
                prod = c @ d
                if prod.is_zero():
                    continue
                if a == b:
                    add((a, m + n), prod)
                else:
                    for key, coeff in self._pole_product(a, m, b, n):
                        add(key, prod.scale(coeff))
        if not self.constant.is_zero():
            for key, d in other.terms.items():
                add(key, self.constant @ d)
        return self._combine(terms, self.constant @ other.constant)

    def to_json(self):
        return OrderedDict([
            ('poles', [format_scalar(p) for p in self.poles]),
            ('constant', self.constant.to_json()),
            ('terms', [OrderedDict([('site', a), ('order', m), ('matrix', c.to_json())])
                       for (a, m), c in self.terms.items()]),
        ])


def current(config, tensor, x):
    """
    Evaluated current X^mu(u) = <mu, X> Id + sum_a (X)_a / (u - z_a).
    """
    terms = OrderedDict(((a, 1), tensor.site_action(a, x)) for a in range(len(tensor.factors)))
    return RationalOperatorFunction(config.z, tensor.dim, terms,
                                    ExactMatrix.scalar(tensor.dim, config.alg.form(config.mu, x)))


def realize_current_monomial(config, tensor, monomial):
    """
    Realize (-1)^k / (s_1! ... s_k!) d^s_1 X_1^mu(u) ... d^s_k X_k^mu(u) on the tensor module.
    @param config: L{GaudinConfig}
    @param tensor: L{TensorModule}
    @param monomial: list of (X, s), X a basis label or coordinates, s >= 0
    @return: L{RationalOperatorFunction}
    """
    if not monomial:
        raise ConfigError({'extra_generators': "empty current monomial"})
    alg = config.alg
    result = None
    for x, s in monomial:
        if s < 0:
            raise ConfigError({'extra_generators': "negative derivative order " + str(s)})
        if isinstance(x, str):
            x = alg.basis_vector(alg.index(x))
        factor = current(config, tensor, x).derivative(s)
        result = factor if result is None else result * factor
    return result.scale((-1) ** len(monomial))


def segal_sugawara_series(config, tensor, basis=None):
    """
    Realization of sum_k X_k[-1] X^k[-1] as a function of u.
    @keyword basis: L{ExactMatrix} whose columns form a basis of the algebra, default
                    the Chevalley basis; the dual basis is computed from the form
    """
    alg = config.alg
    if basis is None:
        basis, dual = alg.dual_bases()
    else:
        dual = (basis @ (basis.T @ alg.gram @ basis).inverse()).columns()
        basis = basis.columns()
    series = None
    for x, y in zip(basis, dual):
        term = realize_current_monomial(config, tensor, [(x, 0), (y, 0)])
        series = term if series is None else series + term
    return series


def gaudin_hamiltonians(config, tensor):
    """
    H_a = sum_{b != a} Omega_ab / (z_a - z_b) + (mu)_a.
    @return: list of L{ExactMatrix}, one per site
    """
    start = time.time()
    ell = len(config.z)
    omegas = {}
    for a in range(ell):
        for b in range(a + 1, ell):
            omegas[(a, b)] = omegas[(b, a)] = omega_pair(tensor, a, b)
    hams = []
    for a in range(ell):
        h = tensor.site_action(a, config.mu)
        for b in range(ell):
            if b != a:
                h = h + omegas[(a, b)].scale(1 / (config.z[a] - config.z[b]))
        hams.append(h)
    logger.debug("GAUDIN HAMILTONIANS: sites=" + str(ell) + "; dim=" + str(tensor.dim) +
                 "; elapsed time=" + str(time.time() - start))
    return hams


def check_residue_identity(config, tensor, hams, series=None):
    """
    Compare the Hamiltonians with the realized quadratic series: H_a = Res/2, double
    pole = site Casimir, constant = <mu, mu>, and sum_a H_a = diagonal mu.
    @return: list of failures
    """
    if series is None:
        series = segal_sugawara_series(config, tensor)
    failures = []
    alg = config.alg
    for a, h in enumerate(hams):
        if series.coefficient(a, 1).scale(Fraction(1, 2)) != h:
            failures.append("H" + str(a + 1) + " != Res/2")
        cas = alg.casimir_eigenvalue(tensor.factors[a].weight)
        if series.coefficient(a, 2) != ExactMatrix.scalar(tensor.dim, cas):
            failures.append("double pole at z" + str(a + 1) + " != Casimir")
    if series.max_order > 2:
        failures.append("pole of order " + str(series.max_order))
    if series.constant != ExactMatrix.scalar(tensor.dim, alg.form(config.mu, config.mu)):
        failures.append("constant term != <mu,mu>")
    total = ExactMatrix.zeros(tensor.dim, tensor.dim)
    for h in hams:
        total = total + h
    if total != tensor.diagonal(config.mu):
        failures.append("sum of H_a != diagonal mu")
    return failures


def centralizer_in_nplus(alg, mu):
    """
    Basis of z_mu(g) intersected with n_+, as coordinate vectors.
    """
    ad_mu = alg.ad(mu)
    e_cols = list(range(alg.n_pos))
    restricted = ad_mu.submatrix(range(alg.dim), e_cols)
    out = []
    for v in kernel_basis(restricted):
        x = [Fraction(0)] * alg.dim
        for k, c in zip(e_cols, v):
            x[k] = c
        out.append(tuple(x))
    return out


def centralizer(alg, mu):
    ''' Basis of z_mu(g). '''
    return kernel_basis(alg.ad(mu))


class ChainSpace(object):
    ''' Basis of the chain space as the columns of an n x k matrix. '''

    def __init__(self, basis, tag, conditions):
        """
        @param basis: list of vectors in the tensor module
        @param tag: 'singular', 'full' or 'centralizer'
        @param conditions: algebra elements whose diagonal action annihilates the space
        """
        self.vectors = basis
        self.tag = tag
        self.conditions = conditions
        self.dim = len(basis)

    def matrix(self, n):
        return ExactMatrix.from_columns(self.vectors, n)

    def restrict(self, op, name='operator'):
        """
        Matrix of an operator on the chain space.
        @raise ChainSpaceError: when the operator does not preserve the space
        """
        b = self.matrix(op.rows)
        x = restrict_to(op, b)
        if x is None:
            raise ChainSpaceError(name + " does not preserve the " + self.tag + " chain space")
        return x


def chain_space(config, tensor):
    """
    Chain space: joint kernel of the diagonal raising operators (periodic), the whole
    space (regular) or the joint kernel of z_mu(g) intersected with n_+ (general).
    @return: L{ChainSpace}
    """
    alg = config.alg
    n = tensor.dim
    if config.mode == 'periodic':
        conditions = [alg.basis_vector(alg.e_index(b)) for b in alg.rs.simple_roots]
        tag = 'singular'
    elif config.mode == 'regular':
        conditions = centralizer_in_nplus(alg, config.mu)
        if conditions:
            raise ConfigError({'mu': "regular mu has a nonzero centralizer in n_+"})
        tag = 'full'
    else:
        conditions = centralizer_in_nplus(alg, config.mu)
        tag = 'centralizer'
    basis = joint_kernel([tensor.diagonal(x) for x in conditions], n)
    logger.debug("CHAIN SPACE: mode=" + config.mode + "; dim=" + str(len(basis)) + " of " + str(n))
    return ChainSpace(basis, tag, conditions)


def gaudin_generators(config, tensor, chain, hams=None):
    """
    Labelled generators of the realized Gaudin algebra restricted to the chain space.
    @return: (OrderedDict label -> restricted matrix, generator set tag)
    """
    alg = config.alg
    if hams is None:
        hams = gaudin_hamiltonians(config, tensor)
    gens = OrderedDict()
    for a, h in enumerate(hams):
        gens['H' + str(a + 1)] = chain.restrict(h, 'H' + str(a + 1))
    tag = 'quadratic'
    if config.include_cartan:
        for i in range(alg.rank):
            label = 'Delta(h' + str(i + 1) + ')'
            gens[label] = chain.restrict(tensor.diagonal(alg.basis_vector(alg.h_index(i))), label)
        tag += '+cartan'
    for k, mono in enumerate(config.extra_generators):
        series = realize_current_monomial(config, tensor, mono)
        for key in [None] + list(series.terms):
            mat = series.constant if key is None else series.terms[key]
            suffix = 'const' if key is None else 'z' + str(key[0] + 1) + '^' + str(key[1])
            label = 'X' + str(k + 1) + '[' + suffix + ']'
            gens[label] = chain.restrict(mat, label)
    if config.extra_generators:
        tag += '+extra'
    return gens, tag


class GaudinRealization(object):
    """
    Gaudin model realized on a tensor module: factor modules, Hamiltonians and
    chain space.
    """

    def __init__(self, config, cache=None, dim_cap=None):
        """
        @param config: L{GaudinConfig}
        @keyword cache: L{RepresentationCache} used to load or store the factor modules
        @keyword dim_cap: per-site dimension cap
        """
        self.config = config
        alg = config.alg
        modules = []
        for w in config.weights:
            if cache is not None:
                modules.append(cache.get_or_build(alg, w, dim_cap=dim_cap))
            else:
                modules.append(build_irrep(alg, w, dim_cap=dim_cap))
        self.tensor = TensorModule(alg, modules)
        self.hamiltonians = gaudin_hamiltonians(config, self.tensor)
        self.chain = chain_space(config, self.tensor)

    def generators(self):
        return gaudin_generators(self.config, self.tensor, self.chain, hams=self.hamiltonians)

    def check_commutativity(self):
        ''' Pairs (a, b) with [H_a, H_b] != 0. '''
        hams = self.hamiltonians
        return [(a + 1, b + 1) for a in range(len(hams)) for b in range(a + 1, len(hams))
                if hams[a] @ hams[b] != hams[b] @ hams[a]]

    def check_shapovalov_symmetry(self):
        ''' Sites with G H_a != H_a^T G; only meaningful for mu in h. '''
        gram = self.tensor.gram()
        return [a + 1 for a, h in enumerate(self.hamiltonians) if gram @ h != h.T @ gram]

    def check_diagonal_invariance(self):
        ''' (site, generator) pairs with [H_a, Delta(x)] != 0 for Chevalley generators x, h_i included. '''
        alg = self.config.alg
        indices = [idx for b in alg.rs.simple_roots for idx in (alg.e_index(b), alg.f_index(b))]
        indices += [alg.h_index(i) for i in range(alg.rank)]
        failures = []
        for idx in indices:
            d = self.tensor.diagonal(alg.basis_vector(idx))
            for a, h in enumerate(self.hamiltonians):
                if h @ d != d @ h:
                    failures.append((a + 1, alg.labels[idx]))
        return failures

    def check_centralizer_invariance(self):
        ''' Conditions x of the chain space with [H_a, Delta(x)] != 0. '''
        failures = []
        for x in self.chain.conditions:
            d = self.tensor.diagonal(x)
            for a, h in enumerate(self.hamiltonians):
                if h @ d != d @ h:
                    failures.append((a + 1, self.config.alg.describe(x)))
        return failures

    def chain_gram(self):
        ''' Tensor Shapovalov form restricted to the chain space. '''
        b = self.chain.matrix(self.tensor.dim)
        return b.T @ self.tensor.gram() @ b

    def residue_failures(self):
        return check_residue_identity(self.config, self.tensor, self.hamiltonians)


"""
Finite-dimensional irreducible highest-weight modules.

V_lambda is built as the quotient of the Verma module by the radical of the
Shapovalov form, one weight space at a time. Weight spaces are indexed by depth
vectors d (the weight is lambda - sum d_i alpha_i). Candidates for the space at d
are f_i b for basis vectors b at d - e_i; their Gram matrix comes from the
contravariance S(f_i b, w) = S(b, e_i w) and the pivot candidates of that Gram
form the basis.
"""
from collections import OrderedDict
from fractions import Fraction
from functools import lru_cache
import logging
import time

from django.conf import settings

from gaudinlab.exceptions import DimensionCapExceeded, WeightError
from gaudinlab.linalg import ExactMatrix, commutator, rref


logger = logging.getLogger(__name__)


def word_label(word):
    ''' Label of f_{w1}...f_{wk} v, e.g. "f2f1" or "v" for the highest vector. '''
    if not word:
        return 'v'
    return ''.join('f' + str(i + 1) for i in word)


def parse_word(label):
    if label == 'v':
        return ()
    return tuple(int(p) - 1 for p in label.split('f')[1:])


def _unit(d, i):
    return tuple(c + (1 if k == i else 0) for k, c in enumerate(d))


def _minus(d, i):
    return tuple(c - (1 if k == i else 0) for k, c in enumerate(d))


def weight_at(rs, weight, depth):
    ''' lambda - sum d_i alpha_i in fundamental coordinates. '''
    return tuple(w - sum(d * rs.cartan_matrix[k][i] for k, d in enumerate(depth)) for i, w in enumerate(weight))


def depth_of(rs, weight, mu):
    """
    Depth vector d with mu = lambda - sum d_i alpha_i.
    @raise WeightError: if mu is not below lambda in the root lattice
    """
    diff = [Fraction(w - m) for w, m in zip(weight, mu)]
    # d^T C = diff
    cartan = ExactMatrix(rs.cartan_matrix)
    d = cartan.T.solve(ExactMatrix([[x] for x in diff]))
    coords = d.column(0) if d is not None else ()
    if d is None or any(c.denominator != 1 or c < 0 for c in coords):
        raise WeightError("Weight " + str(list(mu)) + " is not below " + str(list(weight)))
    return tuple(int(c) for c in coords)


def verma_weight_basis(alg, weight, depth_cap):
    """
    Words in the simple lowering operators up to a depth, grouped by weight.
    @param alg: L{ChevalleyAlgebra}
    @param weight: dominant integral highest weight (fundamental coordinates)
    @param depth_cap: maximal word length
    @return: OrderedDict weight -> lexicographically sorted list of words
    """
    rs = alg.rs
    rs.check_dominant(weight)
    needed = rs.lowest_weight_depth(weight)
    if depth_cap < needed:
        raise WeightError("Depth cap " + str(depth_cap) + " is below the lowest weight depth " + str(needed))
    grouped = OrderedDict()
    level = [()]
    for _k in range(depth_cap + 1):
        for w in level:
            depth = [0] * rs.rank
            for i in w:
                depth[i] += 1
            grouped.setdefault(weight_at(rs, weight, depth), []).append(w)
        level = [(i,) + w for w in level for i in range(rs.rank)]
    for mu in grouped:
        grouped[mu].sort()
    return grouped


class VermaForm(object):
    """
    Shapovalov form on words of the Verma module, computed by moving raising
    operators to the right.
    """

    def __init__(self, alg, weight):
        self.rs = alg.rs
        self.weight = tuple(weight)
        self.rs.check_dominant(self.weight)
        self._pair = lru_cache(maxsize=None)(self._pair_uncached)

    def raise_word(self, j, word):
        """
        e_j applied to f_{w1}...f_{wm} v.
        @return: dict word -> coefficient
        """
        out = {}
        depth = [0] * self.rs.rank
        # walk from the innermost operator outwards
        for p in range(len(word) - 1, -1, -1):
            if word[p] == j:
                mu = weight_at(self.rs, self.weight, depth)
                c = mu[j]
                if c:
                    reduced = word[:p] + word[p + 1:]
                    out[reduced] = out.get(reduced, 0) + c
            depth[word[p]] += 1
        return out

    def _pair_uncached(self, x, y):
        if not x:
            return Fraction(1) if not y else Fraction(0)
        total = Fraction(0)
        for w, c in self.raise_word(x[0], y).items():
            total += c * self._pair(x[1:], w)
        return total

    def pair(self, x, y):
        return self._pair(tuple(x), tuple(y))


def shapovalov_gram(alg, weight, mu, words=None):
    """
    Shapovalov Gram matrix on the Verma words of weight mu.
    @param alg: L{ChevalleyAlgebra}
    @param weight: highest weight lambda
    @param mu: weight in fundamental coordinates, below lambda
    @keyword words: words to use, default all words of that weight in lexicographic order
    @return: L{ExactMatrix}
    """
    rs = alg.rs
    rs.check_dominant(weight)
    depth = depth_of(rs, weight, mu)
    if words is None:
        words = _words_of_depth(depth)
    form = VermaForm(alg, weight)
    return ExactMatrix([[form.pair(x, y) for y in words] for x in words], cols=len(words))


def _words_of_depth(depth):
    words = [()]
    for _k in range(sum(depth)):
        words = [(i,) + w for w in words for i in range(len(depth))]
    target = tuple(depth)
    out = []
    for w in words:
        counts = [0] * len(depth)
        for i in w:
            counts[i] += 1
        if tuple(counts) == target:
            out.append(w)
    return sorted(out)


class WeightBlock(object):
    ''' Basis words, weight and Shapovalov Gram of one weight space. '''

    def __init__(self, depth, weight, words, gram):
        self.depth = depth
        self.weight = weight
        self.words = words
        self.gram = gram
        self.offset = 0

    @property
    def dim(self):
        return len(self.words)


class HighestWeightModule(object):
    """
    Irreducible module V_lambda with action matrices of every basis element of the
    algebra and the Shapovalov Gram matrix, in a weight-graded basis.
    """

    def __init__(self, alg, weight, blocks, e_blocks, f_blocks):
        self.alg = alg
        self.rs = alg.rs
        self.weight = tuple(weight)
        self.blocks = blocks
        offset = 0
        for b in self.blocks.values():
            b.offset = offset
            offset += b.dim
        self.dim = offset
        self.e_blocks = e_blocks
        self.f_blocks = f_blocks
        r = self.rs.rank
        self.E = [self._assemble(e_blocks, i, -1) for i in range(r)]
        self.F = [self._assemble(f_blocks, i, 1) for i in range(r)]
        self.H = [ExactMatrix.diagonal([b.weight[i] for b in self.blocks.values() for _w in b.words])
                  for i in range(r)]
        self._basis_matrices = None

    def _assemble(self, parts, i, step):
        n = self.dim
        rows = [[Fraction(0)] * n for _k in range(n)]
        for d, src in self.blocks.items():
            m = parts.get((i, d))
            if m is None:
                continue
            tgt = self.blocks.get(_unit(d, i) if step > 0 else _minus(d, i))
            if tgt is None:
                continue
            for a in range(m.rows):
                for b in range(m.cols):
                    if m[a, b]:
                        rows[tgt.offset + a][src.offset + b] = m[a, b]
        return ExactMatrix(rows, cols=n)

    @property
    def gram(self):
        ''' Full Shapovalov Gram matrix, block diagonal over weights. '''
        n = self.dim
        rows = [[Fraction(0)] * n for _k in range(n)]
        for b in self.blocks.values():
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[b.offset + i][b.offset + j] = b.gram[i, j]
        return ExactMatrix(rows, cols=n)

    @property
    def basis_labels(self):
        return [word_label(w) for b in self.blocks.values() for w in b.words]

    def weight_multiplicities(self):
        ''' OrderedDict weight -> multiplicity, highest weight first. '''
        return OrderedDict((b.weight, b.dim) for b in self.blocks.values())

    def basis_matrices(self):
        """
        Action matrices of all Chevalley basis elements, in the algebra's basis order.
        Non-simple root vectors come from commutators along extraspecial pairs.
        """
        if self._basis_matrices is not None:
            return self._basis_matrices
        alg, rs = self.alg, self.rs
        consts = alg.constants
        e_mats, f_mats = {}, {}
        for i, b in enumerate(rs.simple_roots):
            e_mats[b] = self.E[i]
            f_mats[b] = self.F[i]
        for xi in rs.positive_roots[rs.rank:]:
            alpha, beta = consts.extraspecial[xi]
            neg_a, neg_b = tuple(-c for c in alpha), tuple(-c for c in beta)
            e_mats[xi] = commutator(e_mats[alpha], e_mats[beta]).scale(Fraction(1, consts.N(alpha, beta)))
            f_mats[xi] = commutator(f_mats[beta], f_mats[alpha]).scale(Fraction(1, consts.N(neg_b, neg_a)))
        mats = ([e_mats[b] for b in rs.positive_roots] + list(self.H) +
                [f_mats[b] for b in rs.positive_roots])
        self._basis_matrices = mats
        return mats

    def action(self, x):
        ''' Matrix of an algebra element given by coordinates. '''
        mats = self.basis_matrices()
        out = ExactMatrix.zeros(self.dim, self.dim)
        for k, c in enumerate(x):
            if c:
                out = out + mats[k].scale(c)
        return out

    def check_relations(self):
        """
        Commutation and Serre identities of the generator matrices.
        @return: list of failing relations
        """
        failures = []
        r = self.rs.rank
        zero = ExactMatrix.zeros(self.dim, self.dim)
        for i in range(r):
            for j in range(r):
                a = self.rs.cartan_matrix[j][i]
                expected = self.H[i] if i == j else zero
                if commutator(self.E[i], self.F[j]) != expected:
                    failures.append("[E" + str(i + 1) + ",F" + str(j + 1) + "]")
                if commutator(self.H[i], self.E[j]) != self.E[j].scale(a):
                    failures.append("[H" + str(i + 1) + ",E" + str(j + 1) + "]")
                if commutator(self.H[i], self.F[j]) != self.F[j].scale(-a):
                    failures.append("[H" + str(i + 1) + ",F" + str(j + 1) + "]")
                if i != j:
                    xe, xf = self.E[j], self.F[j]
                    for _k in range(1 - a):
                        xe = commutator(self.E[i], xe)
                        xf = commutator(self.F[i], xf)
                    if not xe.is_zero() or not xf.is_zero():
                        failures.append("Serre " + str(i + 1) + "," + str(j + 1))
        return failures

    def check_contravariance(self):
        """
        Shapovalov adjointness G M(x) = M(w x)^T G for every basis element x.
        @return: list of labels failing the identity
        """
        gram = self.gram
        mats = self.basis_matrices()
        inv = self.alg.cartan_antiinvolution()
        failures = []
        for k, m in enumerate(mats):
            image = self.action(inv.apply(self.alg.basis_vector(k)))
            if gram @ m != image.T @ gram:
                failures.append(self.alg.labels[k])
        return failures

    def casimir_matrix(self):
        ''' sum_a M(X_a) M(X^a) over dual bases of the invariant form. '''
        basis, dual = self.alg.dual_bases()
        out = ExactMatrix.zeros(self.dim, self.dim)
        for x, y in zip(basis, dual):
            out = out + self.action(x) @ self.action(y)
        return out

    def to_json(self):
        blocks = []
        for b in self.blocks.values():
            blocks.append(OrderedDict([
                ('depth', list(b.depth)),
                ('weight', list(b.weight)),
                ('basis', [word_label(w) for w in b.words]),
                ('gram', b.gram.to_json()),
            ]))
        return OrderedDict([
            ('type', self.rs.type_letter),
            ('rank', self.rs.rank),
            ('highest_weight', list(self.weight)),
            ('dim', self.dim),
            ('blocks', blocks),
            ('E', [m.to_json() for m in self.E]),
            ('F', [m.to_json() for m in self.F]),
        ])

    @classmethod
    def from_json(cls, alg, obj):
        """
        Rebuild a module from its JSON form.
        @param alg: L{ChevalleyAlgebra} the module belongs to
        @param obj: dict produced by L{to_json}
        """
        blocks = OrderedDict()
        for b in obj['blocks']:
            depth = tuple(b['depth'])
            blocks[depth] = WeightBlock(depth, tuple(b['weight']), [parse_word(w) for w in b['basis']],
                                        ExactMatrix.from_json(b['gram']))
        module = cls.__new__(cls)
        module.alg = alg
        module.rs = alg.rs
        module.weight = tuple(obj['highest_weight'])
        module.blocks = blocks
        offset = 0
        for b in blocks.values():
            b.offset = offset
            offset += b.dim
        module.dim = offset
        module.e_blocks, module.f_blocks = {}, {}
        module.E = [ExactMatrix.from_json(m) for m in obj['E']]
        module.F = [ExactMatrix.from_json(m) for m in obj['F']]
        module.H = [ExactMatrix.diagonal([b.weight[i] for b in blocks.values() for _w in b.words])
                    for i in range(alg.rank)]
        module._basis_matrices = None
        return module


def build_irrep(alg, weight, dim_cap=None):
    """
    Build the irreducible module of a dominant integral highest weight.
    @param alg: L{ChevalleyAlgebra}
    @param weight: highest weight in fundamental coordinates
    @keyword dim_cap: dimension cap, default settings.DIM_CAP
    @return: L{HighestWeightModule}
    @raise DimensionCapExceeded: if the module is larger than the cap
    """
    rs = alg.rs
    weight = tuple(weight)
    rs.check_dominant(weight)
    cap = settings.DIM_CAP if dim_cap is None else dim_cap
    expected = rs.weyl_dimension(weight)
    if expected > cap:
        raise DimensionCapExceeded("dim V" + str(list(weight)) + " = " + str(expected) +
                                   " exceeds the dimension cap " + str(cap))
    start = time.time()
    r = rs.rank
    top = tuple([0] * r)
    blocks = OrderedDict([(top, WeightBlock(top, weight, [()], ExactMatrix([[1]])))])
    e_blocks, f_blocks = {}, {}
    level = [top]
    total = 1
    while level:
        targets = sorted(set(_unit(d, i) for d in level for i in range(r)))
        next_level = []
        for dp in targets:
            block = _build_block(rs, weight, dp, blocks, e_blocks, f_blocks)
            if block is None:
                continue
            blocks[dp] = block
            next_level.append(dp)
            total += block.dim
            if total > cap:
                raise DimensionCapExceeded("Module dimension exceeds the cap " + str(cap))
        level = next_level
    module = HighestWeightModule(alg, weight, blocks, e_blocks, f_blocks)
    logger.info("IRREP BUILD: algebra=" + rs.name + "; weight=" + str(list(weight)) +
                "; dim=" + str(module.dim) + "; elapsed time=" + str(time.time() - start))
    assert module.dim == expected, "quotient dimension disagrees with the Weyl dimension formula"
    return module


def _build_block(rs, weight, dp, blocks, e_blocks, f_blocks):
    """
    Build the weight space at depth dp from the spaces one level up.
    Fills f_blocks[(i, dp - e_i)] and e_blocks[(j, dp)].
    @return: L{WeightBlock} or None when the space is zero
    """
    r = rs.rank
    sources = [i for i in range(r) if dp[i] > 0 and _minus(dp, i) in blocks]
    if not sources:
        return None
    cand_words, cand_src = [], []
    for i in sources:
        for b, w in enumerate(blocks[_minus(dp, i)].words):
            cand_words.append((i,) + w)
            cand_src.append((i, b))
    ncand = len(cand_words)

    # e_j applied to every candidate, in the basis of the space at dp - e_j
    e_cand = {}
    for j in range(r):
        target = _minus(dp, j)
        if target not in blocks:
            continue
        cols = []
        for i, b in cand_src:
            d = _minus(dp, i)
            col = [Fraction(0)] * blocks[target].dim
            # e_j f_i b = f_i e_j b + delta_ij h_i b
            ej = e_blocks.get((j, d))
            fi = f_blocks.get((i, _minus(d, j)))
            if ej is not None and fi is not None:
                for a, x in enumerate(fi.apply(ej.column(b))):
                    col[a] += x
            if i == j:
                col[b] += weight_at(rs, weight, d)[i]
            cols.append(col)
        e_cand[j] = ExactMatrix.from_columns(cols, blocks[target].dim)

    # S(f_i b, c) = S(b, e_i c)
    rows = []
    for i, b in cand_src:
        d = _minus(dp, i)
        rows.append((blocks[d].gram @ e_cand[i]).row(b))
    gram_cand = ExactMatrix(rows, cols=ncand)
    _reduced, rank, pivots = rref(gram_cand)
    if rank == 0:
        return None
    gram = gram_cand.submatrix(pivots, pivots)
    coords = gram.solve(gram_cand.submatrix(pivots, range(ncand)))
    assert coords is not None, "candidate outside the span of the pivot candidates"

    start = 0
    for i in sources:
        k = blocks[_minus(dp, i)].dim
        f_blocks[(i, _minus(dp, i))] = coords.submatrix(range(rank), range(start, start + k))
        start += k
    for j, m in e_cand.items():
        e_blocks[(j, dp)] = m.submatrix(range(m.rows), pivots)
    return WeightBlock(dp, weight_at(rs, weight, dp), [cand_words[p] for p in pivots], gram)

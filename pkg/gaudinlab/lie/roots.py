'''
Finite-type root systems.

Simple roots are numbered as in Bourbaki. The Cartan matrix entry a_ij is
<alpha_i, alpha_j^vee> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j), so alpha_i written in
fundamental-weight coordinates is row i. Short roots have squared length 2.
'''
from fractions import Fraction
import logging

from django.conf import settings

from gaudinlab.exceptions import RootSystemError, WeightError


logger = logging.getLogger(__name__)


def _dynkin_data(type_letter, rank):
    """
    Squared lengths of the simple roots and the edges of the Dynkin diagram.
    @return: (lengths, edges) with 0-based node indices
    """
    chain = [(i, i + 1) for i in range(rank - 1)]
    if type_letter == 'A':
        return [2] * rank, chain
    if type_letter == 'B':
        return [4] * (rank - 1) + [2], chain
    if type_letter == 'C':
        return [2] * (rank - 1) + [4], chain
    if type_letter == 'D':
        return [2] * rank, [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if type_letter == 'E':
        # 1-3-4-5-...-r with node 2 attached to node 4
        return [2] * rank, [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]
    if type_letter == 'F':
        return [4, 4, 2, 2], chain
    if type_letter == 'G':
        return [2, 6], chain
    raise RootSystemError("Unknown type letter: " + str(type_letter))


class RootSystem(object):
    '''
    Root data of a finite-type simple Lie algebra. Roots are integer tuples in
    the simple-root basis; positive roots are sorted by height and then by
    descending coordinates, so the first rank entries are the simple roots.
    '''

    def __init__(self, type_letter, rank):
        RootSystem.validate(type_letter, rank)
        self.type_letter = type_letter
        self.rank = rank
        lengths, edges = _dynkin_data(type_letter, rank)
        self.root_lengths = tuple(lengths)
        form = [[0] * rank for _i in range(rank)]
        for i in range(rank):
            form[i][i] = lengths[i]
        for i, j in edges:
            form[i][j] = form[j][i] = -max(lengths[i], lengths[j]) // 2
        self.symmetric_form = tuple(tuple(r) for r in form)
        self.cartan_matrix = tuple(tuple(2 * form[i][j] // form[j][j] for j in range(rank))
                                   for i in range(rank))
        self.positive_roots = self._reflection_closure()
        self._root_set = set(self.positive_roots) | set(tuple(-c for c in r) for r in self.positive_roots)
        self._index = {r: k for k, r in enumerate(self.positive_roots)}

    @classmethod
    def validate(cls, type_letter, rank):
        """
        Check a (type, rank) pair names a finite type.
        @raise RootSystemError: for an invalid pair
        """
        allowed = settings.ALLOWED_TYPES
        if type_letter not in allowed:
            raise RootSystemError("Unknown type letter '" + str(type_letter) + "', expected one of " +
                                  ", ".join(allowed.keys()))
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise RootSystemError("Rank must be an integer: " + str(rank))
        lims = allowed[type_letter]
        if rank < lims['MIN_RANK'] or (lims['MAX_RANK'] is not None and rank > lims['MAX_RANK']):
            raise RootSystemError("Invalid rank " + str(rank) + " for type " + type_letter)

    @property
    def name(self):
        return self.type_letter + str(self.rank)

    def __repr__(self):
        return "RootSystem(" + self.name + ")"

    def pairing_simple(self, beta, i):
        ''' <beta, alpha_i^vee> for beta in simple-root coordinates. '''
        return sum(b * self.cartan_matrix[j][i] for j, b in enumerate(beta))

    def reflect(self, beta, i):
        ''' Simple reflection s_i applied to a vector in simple-root coordinates. '''
        c = self.pairing_simple(beta, i)
        return tuple(b - c if j == i else b for j, b in enumerate(beta))

    def _reflection_closure(self):
        simple = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(self.rank):
                    gamma = self.reflect(beta, i)
                    if gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        positive = [r for r in seen if all(c >= 0 for c in r)]
        return sorted(positive, key=RootSystem.root_order_key)

    @staticmethod
    def root_order_key(beta):
        return (sum(beta), tuple(-c for c in beta))

    @property
    def simple_roots(self):
        return self.positive_roots[:self.rank]

    @property
    def highest_root(self):
        return self.positive_roots[-1]

    def is_root(self, beta):
        return tuple(beta) in self._root_set

    def is_positive_root(self, beta):
        return tuple(beta) in self._index

    def root_index(self, beta):
        ''' Position of a positive root in the ordering. '''
        return self._index[tuple(beta)]

    def height(self, beta):
        return sum(beta)

    def inner(self, beta, gamma):
        ''' Symmetric form (beta, gamma) on simple-root coordinates. '''
        return sum(b * self.symmetric_form[i][j] * g
                   for i, b in enumerate(beta) if b for j, g in enumerate(gamma) if g)

    def coroot_coefficients(self, beta):
        ''' Coefficients k_i with beta^vee = sum k_i alpha_i^vee. '''
        norm = self.inner(beta, beta)
        return tuple(Fraction(b * self.root_lengths[i], norm) for i, b in enumerate(beta))

    def to_weight(self, beta):
        ''' Simple-root coordinates to fundamental-weight coordinates. '''
        return tuple(sum(b * self.cartan_matrix[j][i] for j, b in enumerate(beta)) for i in range(self.rank))

    def weight_pairing(self, weight, beta):
        ''' <weight, beta^vee> for a weight in fundamental coordinates. '''
        return sum(k * w for k, w in zip(self.coroot_coefficients(beta), weight))

    def weyl_vector(self):
        return tuple([1] * self.rank)

    def check_dominant(self, weight):
        """
        @raise WeightError: when the weight is not a dominant integral weight of this rank
        """
        if len(weight) != self.rank:
            raise WeightError("Weight " + str(list(weight)) + " has " + str(len(weight)) +
                              " coordinates, expected " + str(self.rank) + " for " + self.name)
        for w in weight:
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise WeightError("Weight " + str(list(weight)) + " is not dominant integral")

    def weyl_dimension(self, weight):
        """
        Dimension of the irreducible module from the Weyl dimension formula.
        @param weight: dominant weight in fundamental coordinates
        """
        self.check_dominant(weight)
        rho = self.weyl_vector()
        shifted = tuple(w + r for w, r in zip(weight, rho))
        dim = Fraction(1)
        for beta in self.positive_roots:
            dim *= self.weight_pairing(shifted, beta) / self.weight_pairing(rho, beta)
        assert dim.denominator == 1, "non-integral Weyl dimension"
        return int(dim)

    def lowest_weight_depth(self, weight):
        """
        Height of weight - w0(weight), the depth of the lowest weight space.
        @param weight: dominant weight in fundamental coordinates
        """
        self.check_dominant(weight)
        current = list(weight)
        depth = 0
        moved = True
        while moved:
            moved = False
            for i in range(self.rank):
                c = current[i]
                if c > 0:
                    depth += c
                    alpha = self.cartan_matrix[i]
                    current = [x - c * a for x, a in zip(current, alpha)]
                    moved = True
        return depth

    def root_string_p(self, alpha, beta):
        ''' Largest p >= 0 with beta - p alpha a root. '''
        p = 0
        while self.is_root(tuple(b - (p + 1) * a for a, b in zip(alpha, beta))):
            p += 1
        return p

    def to_json(self):
        return {
            'type': self.type_letter,
            'rank': self.rank,
            'cartan_matrix': [list(r) for r in self.cartan_matrix],
            'positive_roots': [list(r) for r in self.positive_roots],
        }

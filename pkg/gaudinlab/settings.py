"""
Settings for the Gaudin model laboratory. Import into the project settings with
``from gaudinlab.settings import *``; modules read the values through
``django.conf.settings`` so they can be overridden per project or per test.
"""
from collections import OrderedDict
import os

# representation cache
GAUDINLAB_CACHE_DIR = os.environ.get('GAUDINLAB_CACHE', os.path.join(os.getcwd(), 'cache'))
CACHE_FORMAT_VERSION = 1

# maximum dimension of a single irreducible factor
DIM_CAP = 400

#
# invariant form normalizations; 'killing' is tr(ad x ad y), 'normalized'
# rescales it so that long roots have squared length 2
FORM_NORMALIZATIONS = ['killing', 'normalized']
DEFAULT_FORM = 'killing'

#
# finite types and allowed ranks
ALLOWED_TYPES = OrderedDict([
    ('A', {'MIN_RANK': 1, 'MAX_RANK': None}),
    ('B', {'MIN_RANK': 2, 'MAX_RANK': None}),
    ('C', {'MIN_RANK': 2, 'MAX_RANK': None}),
    ('D', {'MIN_RANK': 4, 'MAX_RANK': None}),
    ('E', {'MIN_RANK': 6, 'MAX_RANK': 8}),
    ('F', {'MIN_RANK': 4, 'MAX_RANK': 4}),
    ('G', {'MIN_RANK': 2, 'MAX_RANK': 2}),
])

#
# boundary condition modes
GAUDIN_MODES = ['periodic', 'regular', 'general']

# randomness: a single seeded generator per run
DEFAULT_SEED = 0
RANDOM_ENTRY_RANGE = (-3, 3)
CYCLIC_VECTOR_TRIALS = 20
FROBENIUS_PROBE_TRIALS = 10
# random combinations tried before the joint eigenspaces are accepted as primary
EIGEN_SPLIT_TRIALS = 10

# symbolic lambda-Gram determinant used to certify non-Frobenius algebras
FROBENIUS_SYMBOLIC_MAX_DIM = 6

# float cross-check of the eigen analysis
FLOAT_TOLERANCE = 1e-9

# sweep worker pool size
SWEEP_WORKERS = 2

#
# exactness checks run by the verdict pipeline and their defaults
VERDICT_CHECKS = OrderedDict([
    ('commutativity', True),
    ('shapovalov_symmetry', True),
    ('residue_identity', True),
    ('diagonal_invariance', True),
    ('chain_invariance', True),
    ('float_eigen', True),
])

#
# command line exit codes
EXIT_CODES = {
    'ok': 0,
    'check_failed': 1,
    'config_error': 2,
    'resource_cap': 3,
}

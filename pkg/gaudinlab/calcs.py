""" Perfect integrability calculations for Gaudin model configurations. """
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from copy import deepcopy
import csv
import hashlib
import json
import logging
import os
import time

from django.conf import settings
import numpy

from gaudinlab import __version__
from gaudinlab.commutant import (certify_frobenius_via_form, check_cross_implications, close_algebra,
                                 find_cyclic_vector, frobenius_gram_probe, joint_eigen_analysis)
from gaudinlab.exceptions import ChainSpaceError, ConfigError
from gaudinlab.gaudin import GaudinRealization
from gaudinlab.linalg import parse_scalar
from gaudinlab.serializers import GaudinConfigSerializer, VerdictSerializer


logger = logging.getLogger(__name__)

CONVENTION = "H_a = 1/2 Res_{u=z_a} S(u), S(u) the realized quadratic Segal-Sugawara series"


def load_config(source):
    """
    Validate a Gaudin configuration.
    @param source: path to a JSON file or the parsed JSON object
    @return: L{GaudinConfig}
    @raise ConfigError: with the serializer errors keyed by field path
    """
    if isinstance(source, str):
        try:
            with open(source, 'r') as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            raise ConfigError({'file': "Unable to read config " + source + ": " + str(e)})
    else:
        data = source
    serializer = GaudinConfigSerializer(data=data)
    if not serializer.is_valid():
        raise ConfigError(serializer.errors)
    return serializer.save()


def config_digest(config):
    return hashlib.sha256(json.dumps(config.to_json(), sort_keys=True).encode('utf-8')).hexdigest()


class PerfectIntegrability(object):
    """
    Run the perfect integrability pipeline on a configuration: realize the
    Gaudin operators, run the exactness checks, close the algebra on the chain
    space and certify cyclicity, the Frobenius property and the eigenspaces.
    """

    def __init__(self, config, seed=None, cache=None, dim_cap=None, tolerance=None):
        """
        @param config: L{GaudinConfig}
        @keyword seed: PRNG seed, default settings.DEFAULT_SEED
        @keyword cache: L{RepresentationCache}
        @keyword dim_cap: per-site dimension cap
        @keyword tolerance: float eigen tolerance
        """
        self.config = config
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.cache = cache
        self.tolerance = settings.FLOAT_TOLERANCE if tolerance is None else tolerance
        self.timings = OrderedDict()
        self.digest = config_digest(config)
        start = time.time()

        self.realization = self._stage('realization', lambda: GaudinRealization(config, cache=cache,
                                                                                dim_cap=dim_cap))
        self.checks = self._stage('checks', self._run_checks)
        self.generators, self.generator_set = OrderedDict(), 'quadratic'
        self.algebra = self.cyclic = self.certificate = self.probe = self.eigen = None
        self.quadratic_dim = None
        self.cross_checks = []
        if not self.checks.get('chain_invariance'):
            self._stage('algebra', self._analyse)
        logger.info("GAUDIN RUN: config=" + self.digest[:12] + "; dim V=" + str(self.realization.tensor.dim) +
                    "; dim M=" + str(self.realization.chain.dim) + "; dim A=" +
                    (str(self.algebra.dim) if self.algebra else "-") +
                    "; elapsed time=" + str(time.time() - start))

    def _stage(self, name, fn):
        start = time.time()
        out = fn()
        self.timings[name] = int(round((time.time() - start) * 1000))
        return out

    def _run_checks(self):
        """
        Exactness checks enabled in the configuration.
        @return: OrderedDict check name -> list of failures
        """
        config = self.config
        real = self.realization
        enabled = config.checks
        parts = config.alg.support(config.mu)
        out = OrderedDict()
        if enabled['commutativity']:
            out['commutativity'] = [str(p) for p in real.check_commutativity()]
        if enabled['shapovalov_symmetry'] and parts <= {'h'}:
            out['shapovalov_symmetry'] = [str(a) for a in real.check_shapovalov_symmetry()]
        if enabled['residue_identity']:
            out['residue_identity'] = real.residue_failures()
        if enabled['diagonal_invariance']:
            if not parts:
                out['diagonal_invariance'] = [str(p) for p in real.check_diagonal_invariance()]
            elif config.mode == 'general':
                out['diagonal_invariance'] = [str(p) for p in real.check_centralizer_invariance()]
        if enabled['chain_invariance']:
            out['chain_invariance'] = []
            for a, h in enumerate(real.hamiltonians):
                try:
                    real.chain.restrict(h, 'H' + str(a + 1))
                except ChainSpaceError as e:
                    out['chain_invariance'].append(str(e.detail['Chain Space Error']))
        for name, failures in out.items():
            if failures:
                logger.error("GAUDIN CHECK: " + name + " failed; " + "; ".join(failures))
        return out

    def _analyse(self):
        rng = numpy.random.default_rng(self.seed)
        self.generators, self.generator_set = self.realization.generators()
        self.algebra = close_algebra(self.generators)
        if self.generator_set != 'quadratic':
            quadratic = OrderedDict((k, g) for k, g in self.generators.items() if k.startswith('H'))
            self.quadratic_dim = close_algebra(quadratic).dim
        self.cyclic = find_cyclic_vector(self.algebra, rng=rng)
        self.certificate = certify_frobenius_via_form(self.algebra, self.realization.chain_gram(), rng=rng,
                                                      cyclic=self.cyclic)
        if self.algebra.commutative:
            self.probe = frobenius_gram_probe(self.algebra, rng=rng)
            self.eigen = joint_eigen_analysis(self.algebra, tolerance=self.tolerance, seed=self.seed,
                                              numeric=self.config.checks['float_eigen'])
        self.cross_checks = check_cross_implications(self.algebra, self.cyclic, self.certificate, self.probe,
                                                     self.eigen)

    @property
    def perfectly_integrable(self):
        if self.algebra is None or not self.algebra.commutative or not self.cyclic.found:
            return False
        return bool(self.certificate.certified or (self.probe is not None and self.probe.frobenius))

    @property
    def passed(self):
        return not any(self.checks.values()) and not self.cross_checks

    def algebra_scope(self):
        if self.config.extra_generators:
            return "quadratic Gaudin algebra with user supplied generators"
        return "quadratic Gaudin algebra"

    def verdict(self, timings=False):
        """
        Verdict as rendered by L{VerdictSerializer}.
        @keyword timings: include the stage timings
        """
        config = self.config
        real = self.realization
        dims = OrderedDict([('V', real.tensor.dim), ('M', real.chain.dim),
                            ('algebra', self.algebra.dim if self.algebra else None)])
        if self.quadratic_dim is not None:
            dims['algebra_quadratic'] = self.quadratic_dim
        commutative = None
        if self.algebra is not None:
            commutative = True if self.algebra.commutative else list(self.algebra.witness)
        data = OrderedDict([
            ('config_digest', self.digest),
            ('config', config.to_json()),
            ('version', __version__),
            ('seed', self.seed),
            ('form_normalization', config.form),
            ('mode', config.mode),
            ('convention', CONVENTION),
            ('generator_set', self.generator_set),
            ('algebra_scope', self.algebra_scope()),
            ('generators', list(self.generators.keys())),
            ('dims', dims),
            ('commutative', commutative),
            ('chain_space', OrderedDict([
                ('tag', real.chain.tag),
                ('conditions', [config.alg.describe(x) for x in real.chain.conditions]),
            ])),
            ('cyclic', self.cyclic.to_json() if self.cyclic else {}),
            ('frobenius', self.certificate.to_json() if self.certificate else {}),
            ('probe', self.probe.to_json() if self.probe else {}),
            ('eigen', self.eigen.to_json() if self.eigen else {}),
            ('checks', OrderedDict((k, OrderedDict([('passed', not v), ('failures', v)]))
                                   for k, v in self.checks.items())),
            ('cross_checks', self.cross_checks),
            ('perfectly_integrable', self.perfectly_integrable),
            ('passed', self.passed),
        ])
        if timings:
            data['timings_ms'] = self.timings
        return VerdictSerializer(data).data

    def manifest(self, config_path=None, outputs=None):
        ''' Run manifest: provenance, cache statistics and stage timings. '''
        return OrderedDict([
            ('config', config_path),
            ('config_digest', self.digest),
            ('version', __version__),
            ('seed', self.seed),
            ('cache', self.cache.stats() if self.cache is not None else None),
            ('timings_ms', self.timings),
            ('outputs', outputs or []),
        ])


def perfect_integrability_verdict(config, seed=None, cache=None, dim_cap=None, tolerance=None):
    ''' Verdict dictionary of a configuration. '''
    return PerfectIntegrability(config, seed=seed, cache=cache, dim_cap=dim_cap, tolerance=tolerance).verdict()


def dump_json(data):
    ''' Canonical JSON text: sorted keys, fixed indentation, trailing newline. '''
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_outputs(run, out_dir, config_path=None, timings=False):
    """
    Write verdict.json and manifest.json.
    @return: list of written paths
    """
    os.makedirs(out_dir, exist_ok=True)
    verdict_path = os.path.join(out_dir, 'verdict.json')
    manifest_path = os.path.join(out_dir, 'manifest.json')
    with open(verdict_path, 'w') as f:
        f.write(dump_json(run.verdict(timings=timings)))
    with open(manifest_path, 'w') as f:
        f.write(dump_json(run.manifest(config_path=config_path, outputs=[verdict_path, manifest_path])))
    return [verdict_path, manifest_path]


SWEEP_COLUMNS = ['index', 'parameter', 'value', 'status', 'dim_V', 'dim_M', 'dim_A', 'commutative', 'cyclic',
                 'frobenius', 'perfectly_integrable', 'eigenspace_dims', 'checks_passed', 'message']


def _substitute(data, parameter, value):
    """
    Copy of the raw config with one parameter replaced.
    @param parameter: 'z<i>' or 'mu.h<i>' with 1-based i
    """
    data = deepcopy(data)
    if parameter.startswith('z') and parameter[1:].isdigit():
        i = int(parameter[1:]) - 1
        if not 0 <= i < len(data['z']):
            raise ConfigError({'vary': "No evaluation point " + parameter})
        data['z'][i] = value
    elif parameter.startswith('mu.h') and parameter[4:].isdigit():
        mu = data.setdefault('mu', {})
        h = mu.setdefault('h', [])
        i = int(parameter[4:]) - 1
        rank = data['algebra']['rank']
        if not 0 <= i < rank:
            raise ConfigError({'vary': "No Cartan coordinate " + parameter + " for rank " + str(rank)})
        if len(h) < rank:
            h.extend(["0"] * (rank - len(h)))
        h[i] = value
    else:
        raise ConfigError({'vary': "Unknown sweep parameter '" + parameter + "', expected z<i> or mu.h<i>"})
    return data


def _collision(data, parameter, value):
    ''' Reason a z grid value is skipped, or None. '''
    if not parameter.startswith('z'):
        return None
    i = int(parameter[1:]) - 1
    others = [str(x) for k, x in enumerate(data['z']) if k != i]
    v = parse_scalar(value)
    if v == 0 and not data.get('allow_zero_z'):
        return "z" + str(i + 1) + " = 0"
    if any(parse_scalar(x) == v for x in others):
        return "z" + str(i + 1) + " = " + str(value) + " collides with another evaluation point"
    return None


def sweep_point(args):
    """
    One sweep row.
    @param args: (index, raw config, parameter, value, seed)
    """
    index, data, parameter, value, seed = args
    row = OrderedDict((c, '') for c in SWEEP_COLUMNS)
    row.update(index=index, parameter=parameter, value=value)
    reason = _collision(data, parameter, value)
    if reason is not None:
        row.update(status='skipped', message=reason)
        return row
    try:
        config = load_config(_substitute(data, parameter, value))
    except ConfigError as e:
        row.update(status='config_error', message=json.dumps(e.detail, sort_keys=True))
        return row
    run = PerfectIntegrability(config, seed=seed)
    row.update(status='ok', dim_V=run.realization.tensor.dim, dim_M=run.realization.chain.dim,
               dim_A=run.algebra.dim if run.algebra else '',
               commutative=run.algebra.commutative if run.algebra else '',
               cyclic=run.cyclic.found if run.cyclic else '',
               frobenius=run.certificate.certified if run.certificate else '',
               perfectly_integrable=run.perfectly_integrable,
               eigenspace_dims=' '.join(str(d) for d in run.eigen.eigenspace_dims) if run.eigen else '',
               checks_passed=run.passed)
    return row


def sweep(data, parameter, grid, seed=None, workers=None):
    """
    Verdict rows over a parameter grid, in grid order.
    @param data: raw config object
    @param parameter: 'z<i>' or 'mu.h<i>'
    @param grid: list of scalar strings
    @keyword workers: process pool size, default settings.SWEEP_WORKERS; 1 runs inline
    """
    start = time.time()
    seed = settings.DEFAULT_SEED if seed is None else seed
    workers = settings.SWEEP_WORKERS if workers is None else workers
    _substitute(data, parameter, "1")
    tasks = [(k, data, parameter, str(v), seed) for k, v in enumerate(grid)]
    if workers <= 1 or len(tasks) <= 1:
        rows = [sweep_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(sweep_point, tasks))
    for row in rows:
        if row['status'] == 'skipped':
            logger.warning("GAUDIN SWEEP: skipped " + parameter + "=" + str(row['value']) + "; " + row['message'])
    logger.info("GAUDIN SWEEP: parameter=" + parameter + "; points=" + str(len(rows)) +
                "; elapsed time=" + str(time.time() - start))
    return rows


def write_sweep_csv(rows, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([row[c] for c in SWEEP_COLUMNS])

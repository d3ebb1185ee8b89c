"""
On-disk cache of highest-weight modules, one JSON file per (algebra, form, weight).
"""
from collections import OrderedDict
import hashlib
import json
import logging
import time

from django.conf import settings
from django.core.files.base import ContentFile
from django.core.files.storage import FileSystemStorage

from gaudinlab.highest_weight import HighestWeightModule, build_irrep


logger = logging.getLogger(__name__)


def module_digest(module):
    ''' sha256 of the canonical module JSON. '''
    return hashlib.sha256(json.dumps(module.to_json(), sort_keys=True).encode('utf-8')).hexdigest()


class RepresentationCache(object):
    """
    Cache of L{HighestWeightModule} objects laid out as
    {type}{rank}/{form}/{weight-dashed}.json below the cache directory. An entry is
    valid when its format version and algebra digest match the running ones.
    """

    def __init__(self, location=None):
        """
        @keyword location: cache directory, default settings.GAUDINLAB_CACHE_DIR
        """
        self.location = settings.GAUDINLAB_CACHE_DIR if location is None else location
        self.storage = FileSystemStorage(location=self.location)
        self.hits = 0
        self.misses = 0

    @classmethod
    def entry_name(cls, alg, weight):
        return (alg.rs.name + '/' + alg.form_normalization + '/' +
                '-'.join(str(w) for w in weight) + '.json')

    def path(self, alg, weight):
        return self.storage.path(RepresentationCache.entry_name(alg, weight))

    def load(self, alg, weight):
        """
        Read a cached module.
        @return: L{HighestWeightModule}, or None for a missing or stale entry
        """
        name = RepresentationCache.entry_name(alg, weight)
        if not self.storage.exists(name):
            return None
        with self.storage.open(name, 'rb') as f:
            try:
                obj = json.loads(f.read().decode('utf-8'))
            except ValueError:
                logger.warning("REPRESENTATION CACHE: unreadable entry " + name)
                return None
        if obj.get('format_version') != settings.CACHE_FORMAT_VERSION:
            logger.debug("REPRESENTATION CACHE: stale format version for " + name)
            return None
        if obj.get('algebra_digest') != alg.digest():
            logger.debug("REPRESENTATION CACHE: algebra digest mismatch for " + name)
            return None
        return HighestWeightModule.from_json(alg, obj['module'])

    def store(self, alg, module):
        name = RepresentationCache.entry_name(alg, module.weight)
        content = OrderedDict([
            ('format_version', settings.CACHE_FORMAT_VERSION),
            ('algebra_digest', alg.digest()),
            ('module', module.to_json()),
        ])
        if self.storage.exists(name):
            self.storage.delete(name)
        self.storage.save(name, ContentFile(json.dumps(content, sort_keys=True).encode('utf-8')))
        return self.storage.path(name)

    def get_or_build(self, alg, weight, dim_cap=None):
        """
        Cached module of a highest weight, built and stored on a miss.
        @param alg: L{ChevalleyAlgebra}
        @param weight: dominant integral weight
        @keyword dim_cap: dimension cap passed to L{build_irrep}
        """
        start = time.time()
        weight = tuple(weight)
        module = self.load(alg, weight)
        if module is not None:
            self.hits += 1
            logger.debug("REPRESENTATION CACHE: hit " + RepresentationCache.entry_name(alg, weight) +
                         "; elapsed time=" + str(time.time() - start))
            return module
        self.misses += 1
        module = build_irrep(alg, weight, dim_cap=dim_cap)
        self.store(alg, module)
        logger.debug("REPRESENTATION CACHE: miss " + RepresentationCache.entry_name(alg, weight) +
                     "; elapsed time=" + str(time.time() - start))
        return module

    def stats(self):
        return OrderedDict([('hits', self.hits), ('misses', self.misses)])

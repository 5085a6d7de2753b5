# -*- coding: utf-8 -*-

''' Command line runner for test classes, and random input generators. '''

import time
import cProfile
import pstats
import inspect

from .core.catalog import Catalog, Technique, PropertyVector, LatencyProfile, LatencyMode
from .constants import RATING_BOUNDS
from .utils import logger
from .parsers import TestParser


class TestBase:
    ''' Base of test classes whose test_* methods can be collected by pytest or run as
        individual subsets from the command line (with optional profiling).
    '''

    prefix = 'test_'
    parser_class = TestParser

    def execute(self, func, is_profiled):
        ''' Call a function, optionally under the profiler, and return its output. '''
        if not is_profiled:
            return func()
        profile = cProfile.Profile()
        out = profile.runcall(func)
        stats = pstats.Stats(profile).strip_dirs().sort_stats('cumulative')
        stats.print_stats(20)
        return out

    def collectTestSets(self):
        ''' Test methods indexed by subset name (method name without prefix). '''
        n = len(self.prefix)
        return {name[n:]: method for name, method in inspect.getmembers(
            self, predicate=inspect.ismethod) if name.startswith(self.prefix)}

    def parseCommandLineArgs(self, testsets):
        args = self.parser_class(list(testsets.keys())).parse()
        logger.setLevel(args['loglevel'])
        if args['profile'] and len(args['subset']) > 1:
            raise ValueError('profiling can only be run on individual tests')
        return args

    def main(self):
        testsets = self.collectTestSets()
        try:
            args = self.parseCommandLineArgs(testsets)
        except ValueError as err:
            logger.error(err)
            return
        t0 = time.perf_counter()
        for s in args['subset']:
            t = time.perf_counter()
            testsets[s](args['profile'])
            logger.debug('%s: %.2f s', s, time.perf_counter() - t)
        logger.info('tests completed in %.2f s', time.perf_counter() - t0)


def randomRatings(rng, n=7):
    ''' Uniform random ratings within the rating interval. '''
    return rng.uniform(*RATING_BOUNDS, size=n).tolist()


def randomTechnique(rng, tid, integer=False):
    ''' Random tabular technique, online with probability 0.8. '''
    ratings = rng.integers(1, 6, size=7).tolist() if integer else randomRatings(rng)
    if rng.random() < 0.8:
        latency = LatencyProfile(LatencyMode.ONLINE, float(rng.uniform(0., 200.)))
    else:
        latency = LatencyProfile(LatencyMode.OFFLINE_ONLY)
    return Technique(
        tid, f'technique {tid}', 'random', ('tabular',), PropertyVector(*ratings), latency)


def randomCatalog(rng, n, integer=False):
    ''' Random catalog of n techniques with identifiers T000, T001, ... '''
    return Catalog(randomTechnique(rng, f'T{i:03d}', integer=integer) for i in range(n))

# -*- coding: utf-8 -*-

''' Test utilities, efficiency ratios, latency feasibility, ranking and Pareto frontiers. '''

import math
import numpy as np

from PyESS.core import *
from PyESS.constants import RATING_BOUNDS
from PyESS.utils import logger
from PyESS.test import TestBase, randomCatalog

NCATALOGS = 1000

# Utility, published (rounded) ratio, full-precision ratio and feasibility of the built-in catalog
SELECTION_REFERENCE = {
    'SHAP': (3.824, 15.3, 15.296, FeasibilityClass.FITS),
    'LIME': (3.564, 10.8, 10.692, FeasibilityClass.FITS),
    'CF': (3.804, 11.5, 11.412, FeasibilityClass.MARGINAL),
    'RULE': (3.904, 7.8, 7.808, FeasibilityClass.INFEASIBLE_ONLINE),
    'PROTO': (3.52, 10.7, 10.56, FeasibilityClass.FITS)
}


def builtinSelection(mode, ctx=None):
    catalog = builtinPaperCatalog()
    ctx = ScenarioContext.substitution() if ctx is None else ctx
    scores = scoreCatalog(catalog, AxisWeights(), ctx)
    return {r.technique_id: r for r in selectTechniques(scores, catalog, ctx, mode)}


def bruteForceFrontier(coordinates):
    return {tid for tid, x in coordinates
            if not any(dominates(y, x) for tid2, y in coordinates if tid2 != tid)}


class TestSelection(TestBase):

    ctx = ScenarioContext.substitution()

    def test_reference_values(self, is_profiled=False):
        logger.info('Test: selection figures of the built-in catalog')
        published = self.execute(lambda: builtinSelection(RoundingMode.PAPER), is_profiled)
        full = builtinSelection(RoundingMode.FULL)
        assert list(published.keys()) == list(SELECTION_REFERENCE.keys())
        for tid, (u, ratio_published, ratio_full, feasibility) in SELECTION_REFERENCE.items():
            assert math.isclose(published[tid].utility, u, abs_tol=1e-9), tid
            assert published[tid].efficiency_ratio == ratio_published, \
                f'{tid}: {published[tid].efficiency_ratio} vs. {ratio_published}'
            assert math.isclose(full[tid].efficiency_ratio, ratio_full, abs_tol=1e-9), tid
            assert published[tid].feasibility is full[tid].feasibility is feasibility, tid
            assert math.isclose(full[tid].resource_cost, 1 / full[tid].efficiency)
        assert {tid for tid, r in full.items() if r.on_pareto_frontier} == {'SHAP', 'CF', 'RULE'}

    def test_ratio(self, is_profiled=False):
        logger.info('Test: efficiency ratio arithmetic')
        assert efficiencyRatio(3.564, 1 / 3, RoundingMode.PAPER) == 10.8
        assert math.isclose(efficiencyRatio(3.564, 1 / 3, RoundingMode.FULL), 10.692)
        assert efficiencyRatio(3.904, 0.5, RoundingMode.PAPER) == 7.8
        for cost in [0., -1.]:
            try:
                efficiencyRatio(3., cost)
            except ValueError:
                logger.debug('cost = %s: OK', cost)
            else:
                raise AssertionError(f'invalid resource cost {cost} not detected')
        try:
            utility((3., 3., 3.), (0.5, 0.5, 0.5))
        except ValueError:
            logger.debug('invalid selection weights: OK')
        else:
            raise AssertionError('invalid selection weights not detected')
        assert math.isclose(utility((3.91, 3.30, 4.70), self.ctx.selection_weights), 3.824)
        assert resourceCost(4) == 0.25

    def test_monotonicity(self, is_profiled=False):
        logger.info('Test: utility and efficiency ratio monotonicity')
        rng = np.random.default_rng(23)
        for _ in range(NCATALOGS):
            weights = tuple(rng.dirichlet(np.ones(3)).tolist())
            adjusted = rng.uniform(*RATING_BOUNDS, size=3).tolist()
            u = utility(adjusted, weights)

            # utility never decreases when one adjusted component increases
            i = int(rng.integers(3))
            bumped = list(adjusted)
            bumped[i] = float(rng.uniform(adjusted[i], RATING_BOUNDS[1]))
            assert utility(bumped, weights) >= u - 1e-12

            # ratio is monotone in utility and anti-monotone in cost, in both modes
            u1, u2 = sorted(rng.uniform(*RATING_BOUNDS, size=2).tolist())
            e1, e2 = sorted(rng.uniform(*RATING_BOUNDS, size=2).tolist())
            c1, c2 = resourceCost(e2), resourceCost(e1)
            for mode in RoundingMode:
                assert efficiencyRatio(u1, c1, mode) <= efficiencyRatio(u2, c1, mode)
                assert efficiencyRatio(u1, c1, mode) >= efficiencyRatio(u1, c2, mode)
                assert efficiencyRatio(u2, c1, mode) >= efficiencyRatio(u1, c2, mode)

    def test_feasibility(self, is_profiled=False):
        logger.info('Test: latency feasibility classes')
        expected = [
            (50., FeasibilityClass.FITS),
            (80., FeasibilityClass.FITS),
            (80.1, FeasibilityClass.MARGINAL),
            (100., FeasibilityClass.MARGINAL),
            (100.1, FeasibilityClass.INFEASIBLE_ONLINE),
            (2000., FeasibilityClass.INFEASIBLE_ONLINE)]
        for estimate, feasibility in expected:
            latency = LatencyProfile(LatencyMode.ONLINE, estimate)
            assert classifyLatency(latency, self.ctx) is feasibility, f'{estimate} ms'
        offline = LatencyProfile(LatencyMode.OFFLINE_ONLY)
        assert classifyLatency(offline, self.ctx) is FeasibilityClass.INFEASIBLE_ONLINE
        assert FeasibilityClass.FITS > FeasibilityClass.MARGINAL > \
            FeasibilityClass.INFEASIBLE_ONLINE

        # Feasibility never improves with slower estimates
        rng = np.random.default_rng(3)
        for _ in range(NCATALOGS):
            a, b = sorted(rng.uniform(0., 300., size=2).tolist())
            fa = classifyLatency(LatencyProfile(LatencyMode.ONLINE, a), self.ctx)
            fb = classifyLatency(LatencyProfile(LatencyMode.ONLINE, b), self.ctx)
            assert fa >= fb

    def test_frontier(self, is_profiled=False):
        logger.info('Test: Pareto frontier')
        rng = np.random.default_rng(11)
        for _ in range(NCATALOGS):
            n = int(rng.integers(1, 51))
            integer = bool(rng.random() < 0.5)
            catalog = randomCatalog(rng, n, integer=integer)
            scores = scoreCatalog(catalog, AxisWeights(), self.ctx)
            coordinates = [(s.technique_id, s.adjusted) for s in scores]
            frontier = paretoFrontier(coordinates)
            assert len(frontier) >= 1
            assert frontier == bruteForceFrontier(coordinates)

        # Identical points are all kept
        assert paretoFrontier([('A', (3., 3., 3.)), ('B', (3., 3., 3.)),
                               ('C', (2., 3., 3.))]) == {'A', 'B'}
        assert paretoFrontier([('A', (1., 1., 1.))]) == {'A'}
        try:
            paretoFrontier([])
        except EngineError:
            logger.debug('empty frontier input: OK')
        else:
            raise AssertionError('empty frontier input not detected')
        try:
            paretoFrontier([('A', (1., 2., 3.)), ('A', (3., 2., 1.))])
        except ValueError:
            logger.debug('duplicate identifiers: OK')
        else:
            raise AssertionError('duplicate identifiers not detected')

    def test_rank(self, is_profiled=False):
        logger.info('Test: ranking and tie-breaking')
        results = list(builtinSelection(RoundingMode.FULL).values())
        assert [r.technique_id for r in rank(results, RankKey.RATIO)] == [
            'SHAP', 'CF', 'LIME', 'PROTO', 'RULE']
        assert [r.technique_id for r in rank(results, RankKey.UTILITY)] == [
            'RULE', 'SHAP', 'CF', 'LIME', 'PROTO']
        assert [r.technique_id for r in rank(results, RankKey.AXIS_C)][0] == 'RULE'

        # U' tie between CF and PROTO, broken by utility
        by_u = [r.technique_id for r in rank(results, RankKey.AXIS_U)]
        assert by_u[:2] == ['CF', 'PROTO']

        # Complete ties fall back to identifiers
        published = list(builtinSelection(RoundingMode.PAPER).values())
        twins = [SelectionResult(tid, (3., 3., 3.), 3., 3., 1 / 3, 9.,
                                 FeasibilityClass.FITS, True) for tid in ['B', 'A', 'C']]
        assert [r.technique_id for r in rank(twins, RankKey.RATIO)] == ['A', 'B', 'C']
        assert rank(published, 'ratio')[0].technique_id == 'SHAP'
        try:
            rank([])
        except EngineError:
            logger.debug('empty ranking: OK')
        else:
            raise AssertionError('empty ranking not detected')


if __name__ == '__main__':
    tester = TestSelection()
    tester.main()

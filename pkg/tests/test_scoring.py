# -*- coding: utf-8 -*-

''' Test axis aggregation, contextual adjustment, discretisation and scenarios. '''

import math
import json
import numpy as np

from PyESS.core import *
from PyESS.constants import PROPERTY_KEYS, AXIS_PROPERTIES, RATING_BOUNDS
from PyESS.utils import logger, fixedStr
from PyESS.test import TestBase, randomRatings, randomCatalog

NDRAWS = 1000

# Final coordinates and levels of the built-in catalog under the substitution scenario
TABLE_ADJUSTED = {
    'SHAP': (('3.91', 'High'), ('3.30', 'Medium'), ('4.70', 'High')),
    'LIME': (('2.76', 'Medium'), ('4.40', 'High'), ('3.50', 'High')),
    'CF': (('2.76', 'Medium'), ('5.00', 'High'), ('3.50', 'High')),
    'RULE': (('5.00', 'High'), ('2.86', 'Medium'), ('3.80', 'High')),
    'PROTO': (('2.30', 'Low'), ('5.00', 'High'), ('3.00', 'Medium'))
}


def close(a, b, tol=1e-9):
    return all(math.isclose(x, y, abs_tol=tol) for x, y in zip(a, b))


def identity():
    return ScenarioContext('identity', 1., 1., 1., 200., 100., 0.8, (0.4, 0.4, 0.2))


class TestScoring(TestBase):

    w = AxisWeights()
    ctx = ScenarioContext.substitution()

    def test_aggregation(self, is_profiled=False):
        logger.info('Test: axis aggregation')
        catalog = builtinPaperCatalog()
        shap = catalog.get('SHAP')
        assert close(aggregateAxes(shap.properties, self.w), (3.40, 3.00, 4.90))
        assert close(rawCoordinates(shap, self.w), (3.40, 3.00, 4.70))
        assert close(rawCoordinates(catalog.get('PROTO'), self.w), (2.00, 4.60, 3.00))
        assert close(rawCoordinates(catalog.get('RULE'), self.w), (5.00, 2.60, 3.80))
        assert close(aggregateAxes(PropertyVector(*[1] * 7), self.w), (1., 1., 1.))

    def test_context(self, is_profiled=False):
        logger.info('Test: contextual adjustment')
        assert close(applyContext((3.40, 3.00, 4.70), self.ctx), (3.91, 3.30, 4.70))
        assert close(applyContext((5.00, 2.60, 3.80), self.ctx), (5.00, 2.86, 3.80))
        assert close(applyContext((2.00, 4.60, 3.00), self.ctx), (2.30, 5.00, 3.00))
        assert applyContext((2.2, 3.7, 4.1), identity()) == (2.2, 3.7, 4.1)
        low = ScenarioContext('low', 0.1, 0.5, 1., 200., 100., 0.8, (0.4, 0.4, 0.2))
        assert applyContext((5., 1.5, 1.), low) == (1., 1., 1.)

    def test_discretise(self, is_profiled=False):
        logger.info('Test: discretisation')
        expected = [
            (1.00, 'Low'), (2.30, 'Low'), (2.4999, 'Low'), (2.50, 'Medium'),
            (2.86, 'Medium'), (3.4999, 'Medium'), (3.50, 'High'), (5.00, 'High')]
        for score, level in expected:
            assert discretise(score) is QualitativeLevel(level), f'{score} -> {level}'
        for score in [0.99, 5.01]:
            try:
                discretise(score)
            except ValueError:
                logger.debug('out of range score %s: OK', score)
            else:
                raise AssertionError(f'out of range score {score} not detected')

    def test_table_reproduction(self, is_profiled=False):
        logger.info('Test: final ESS coordinates of the built-in catalog')
        scores = self.execute(
            lambda: scoreCatalog(builtinPaperCatalog(), self.w, self.ctx), is_profiled)
        assert [s.technique_id for s in scores] == list(TABLE_ADJUSTED.keys())
        for s in scores:
            for x, level, (xref, levelref) in zip(
                    s.adjusted, s.levels, TABLE_ADJUSTED[s.technique_id]):
                assert fixedStr(x, 2) == xref, f'{s.technique_id}: {x} vs. {xref}'
                assert math.isclose(x, float(xref), abs_tol=1e-9)
                assert level.value == levelref, f'{s.technique_id}: {level} vs. {levelref}'

    def test_properties(self, is_profiled=False):
        logger.info('Test: aggregation and adjustment properties')
        rng = np.random.default_rng(42)
        axes_of = {k: [a for a, keys in AXIS_PROPERTIES.items() if k in keys][0]
                   for k in PROPERTY_KEYS}
        axis_index = {a: i for i, a in enumerate(AXIS_PROPERTIES.keys())}
        for _ in range(NDRAWS):
            ratings = randomRatings(rng)
            p = PropertyVector(*ratings)
            raw = aggregateAxes(p, self.w)

            # monotonicity w.r.t. each property
            k = PROPERTY_KEYS[int(rng.integers(7))]
            i = PROPERTY_KEYS.index(k)
            bumped = list(ratings)
            bumped[i] = float(rng.uniform(ratings[i], RATING_BOUNDS[1]))
            raw2 = aggregateAxes(PropertyVector(*bumped), self.w)
            for axis, j in axis_index.items():
                if axis == axes_of[k]:
                    assert raw2[j] >= raw[j] - 1e-12
                else:
                    assert raw2[j] == raw[j]

            # convex combinations stay within bounds, adjusted scores are clipped
            assert all(RATING_BOUNDS[0] - 1e-9 <= x <= RATING_BOUNDS[1] + 1e-9 for x in raw)
            gammas = rng.uniform(0., 3., size=3).tolist()
            ctx = ScenarioContext('random', *gammas, 200., 100., 0.8, (0.4, 0.4, 0.2))
            adjusted = applyContext(raw, ctx)
            assert all(RATING_BOUNDS[0] <= x <= RATING_BOUNDS[1] for x in adjusted)

            # identity multipliers and substitution multipliers
            assert applyContext(raw, identity()) == tuple(
                min(max(x, 1.), 5.) for x in raw)
            sub = applyContext(raw, self.ctx)
            assert all(x >= min(y, 5.) - 1e-12 for x, y in zip(sub, raw))

            # bands partition the rating interval, monotonically
            x, y = sorted(rng.uniform(*RATING_BOUNDS, size=2).tolist())
            assert discretise(x) in QualitativeLevel
            order = {QualitativeLevel.LOW: 0, QualitativeLevel.MEDIUM: 1,
                     QualitativeLevel.HIGH: 2}
            assert order[discretise(x)] <= order[discretise(y)]

    def test_argmax_invariance(self, is_profiled=False):
        logger.info('Test: orderings under scaling of one axis multiplier')
        rng = np.random.default_rng(29)
        keys = ['gamma_c', 'gamma_u', 'gamma_d']
        for _ in range(NDRAWS):
            catalog = randomCatalog(
                rng, int(rng.integers(2, 15)), integer=bool(rng.random() < 0.5))
            gammas = rng.uniform(0.5, 1.5, size=3).tolist()
            ctx = ScenarioContext('random', *gammas, 200., 100., 0.8, (0.4, 0.4, 0.2))
            j = int(rng.integers(3))
            scaled = ctx.updated(**{keys[j]: gammas[j] * float(rng.uniform(0.1, 3.))})
            before = scoreCatalog(catalog, self.w, ctx)
            after = scoreCatalog(catalog, self.w, scaled)

            # other axes are untouched, hence so are their orderings
            for i in set(range(3)) - {j}:
                assert [s.adjusted[i] for s in before] == [s.adjusted[i] for s in after]

            # the scaled axis keeps the raw ordering, up to ties where clipping binds
            for a in after:
                for b in after:
                    if a.raw[j] <= b.raw[j]:
                        assert a.adjusted[j] <= b.adjusted[j]
            best = max(after, key=lambda s: s.raw[j])
            assert best.adjusted[j] == max(s.adjusted[j] for s in after)

    def test_weight_validation(self, is_profiled=False):
        logger.info('Test: aggregation weight validation')
        rng = np.random.default_rng(7)
        for _ in range(NDRAWS):
            a = float(rng.uniform(0., 1.))
            b = float(rng.uniform(0., 1.))
            if abs(a + b - 1.) <= 1e-9:
                continue
            try:
                AxisWeights(auditability=a, traceability=b)
            except ValidationError as err:
                assert err.field == 'compliance'
            else:
                raise AssertionError(f'weights ({a}, {b}) accepted')
        try:
            AxisWeights(fidelity=-0.1, debuggability=1.0, efficiency=0.1)
        except ValidationError as err:
            assert err.field == 'fidelity'
        else:
            raise AssertionError('negative weight accepted')
        w = AxisWeights(fidelity=0.6, debuggability=0.3, efficiency=0.1)
        assert w.developer == (0.6, 0.3, 0.1)
        assert AxisWeights.fromNested(w.nested()) == w

    def test_scenarios(self, is_profiled=False):
        logger.info('Test: scenario contexts')
        ctx = loadScenarioFile(SUBSTITUTION_SCENARIO_FILE)
        assert ctx == self.ctx == getScenario('substitution')
        assert ctx.gammas == (1.15, 1.10, 1.00)
        assert ctx.explanation_budget_ms == 100.
        assert math.isclose(ctx.fit_threshold_ms, 80.)
        assert loadScenario(json.dumps(scenarioToDict(ctx))) == ctx

        doc = scenarioToDict(ctx)
        doc['axis_weights'] = AxisWeights(comprehensibility=0.5, actionability=0.5).nested()
        custom = loadScenario(json.dumps(doc))
        assert custom.weights().actionability == 0.5
        assert loadScenario(json.dumps(scenarioToDict(custom))) == custom

        invalid = [
            ({'reserved_overhead_ms': 200.}, 'reserved_overhead_ms'),
            ({'fit_fraction': 1.2}, 'fit_fraction'),
            ({'fit_fraction': 0.}, 'fit_fraction'),
            ({'gamma_u': -1.}, 'gamma_u'),
            ({'latency_budget_ms': 0.}, 'latency_budget_ms'),
            ({'selection_weights': {'compliance': 0.5, 'user': 0.5, 'developer': 0.5}},
             'selection_weights'),
            ({'selection_weights': {'compliance': 0.5, 'user': 0.5}},
             'selection_weights.developer'),
        ]
        for changes, field in invalid:
            d = dict(scenarioToDict(ctx), **changes)
            try:
                loadScenario(json.dumps(d))
            except ValidationError as err:
                assert err.field == field, f'{err.field} vs. {field}'
                assert err.owner == 'substitution'
            else:
                raise AssertionError(f'invalid {field} not detected')
        try:
            getScenario('augmentation')
        except ValueError:
            logger.debug('unknown scenario: OK')
        else:
            raise AssertionError('unknown scenario not detected')


if __name__ == '__main__':
    tester = TestScoring()
    tester.main()

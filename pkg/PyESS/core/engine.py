# -*- coding: utf-8 -*-

''' End-to-end evaluation: filter, score, select and recommend, with a provenance trail. '''

from dataclasses import dataclass

from .paramobj import EngineError
from .catalog import Catalog, filterApplicable, catalogToDict
from .scoring import ScenarioContext, AxisWeights, rawCoordinates, applyContext, discretise, \
    EssCoordinates, scenarioToDict
from .selection import RoundingMode, selectTechniques
from .recommendation import TierPlan, synthesizeTiers
from .provenance import ProvenanceTrail
from ..constants import DEFAULT_MODALITY, AXIS_KEYS, RATING_BOUNDS, LOW_UPPER_EDGE, \
    MEDIUM_UPPER_EDGE
from ..utils import logger, countStr


@dataclass(frozen=True)
class EngineRun:
    catalog: Catalog
    scenario: ScenarioContext
    weights: AxisWeights
    modality: str
    mode: RoundingMode
    scores: tuple
    selection: tuple
    plan: TierPlan
    trail: ProvenanceTrail


def axisDict(values):
    return dict(zip(AXIS_KEYS, values))


def runPipeline(catalog, ctx, weights=None, modality=DEFAULT_MODALITY, mode=RoundingMode.FULL,
                timestamps=False):
    ''' Evaluate a catalog under a scenario.

        :param catalog: Catalog
        :param ctx: ScenarioContext
        :param weights: AxisWeights (defaults to the scenario weights)
        :param modality: data modality used to filter applicable techniques
        :param mode: RoundingMode of efficiency ratios
        :param timestamps: whether to timestamp provenance records
        :return: EngineRun
    '''
    mode = RoundingMode(mode)
    if weights is None:
        weights = ctx.weights()
    trail = ProvenanceTrail(timestamps=timestamps)

    applicable = filterApplicable(catalog, modality)
    if len(applicable) == 0:
        raise EngineError('no applicable techniques')
    trail.record(
        'catalog', catalogToDict(catalog), {'modality': modality},
        {'applicable': list(applicable.ids)})

    raw = {t.id: rawCoordinates(t, weights) for t in applicable}
    trail.record(
        'aggregation', {t.id: t.properties.meta for t in applicable},
        {'axis_weights': weights.nested(),
         'calibrated_axes': {t.id: t.calibrated_axes for t in applicable
                             if t.calibrated_axes is not None}},
        {tid: axisDict(x) for tid, x in raw.items()})

    adjusted = {tid: applyContext(x, ctx) for tid, x in raw.items()}
    trail.record(
        'adjustment', {tid: axisDict(x) for tid, x in raw.items()},
        {'gammas': axisDict(ctx.gammas), 'bounds': list(RATING_BOUNDS)},
        {tid: axisDict(x) for tid, x in adjusted.items()})

    scores = tuple(
        EssCoordinates(tid, raw[tid], adjusted[tid], tuple(discretise(x) for x in adjusted[tid]))
        for tid in applicable.ids)
    trail.record(
        'discretisation', {tid: axisDict(x) for tid, x in adjusted.items()},
        {'bands': {
            'Low': [RATING_BOUNDS[0], LOW_UPPER_EDGE],
            'Medium': [LOW_UPPER_EDGE, MEDIUM_UPPER_EDGE],
            'High': [MEDIUM_UPPER_EDGE, RATING_BOUNDS[1]]}},
        {s.technique_id: axisDict([x.value for x in s.levels]) for s in scores})

    selection = tuple(selectTechniques(scores, applicable, ctx, mode))
    trail.record(
        'selection', [s.todict() for s in scores],
        {'selection_weights': axisDict(ctx.selection_weights), 'rounding': mode.value,
         'latency_budget_ms': ctx.latency_budget_ms,
         'reserved_overhead_ms': ctx.reserved_overhead_ms,
         'fit_fraction': ctx.fit_fraction},
        {r.technique_id: {
            'utility': r.utility, 'resource_cost': r.resource_cost,
            'efficiency_ratio': r.efficiency_ratio, 'feasibility': r.feasibility.value,
            'on_pareto_frontier': r.on_pareto_frontier} for r in selection})

    plan = synthesizeTiers(scores, selection)
    trail.record(
        'recommendation', [r.todict() for r in selection], {'scenario': scenarioToDict(ctx)},
        plan.todict())

    logger.debug('pipeline completed on %s: plan %s', countStr(len(applicable), 'technique'),
                 ' / '.join(plan.picks))
    return EngineRun(applicable, ctx, weights, modality, mode, scores, selection, plan, trail)

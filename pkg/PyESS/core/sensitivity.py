# -*- coding: utf-8 -*-

''' One-parameter sensitivity sweeps of the selection pipeline, and rank stability. '''

import math
from enum import Enum
from dataclasses import dataclass
from scipy.stats import kendalltau

from .paramobj import ParamObject, ValidationError, EngineError
from .batches import Batch
from .scoring import scoreCatalog
from .selection import RoundingMode, RankKey, rank, selectTechniques
from .recommendation import TierPlan, synthesizeTiers
from ..constants import AXIS_KEYS, AXIS_PROPERTIES
from ..utils import logger, countStr, pairwise

GRID_TOL = 1e-9
GRID_DECIMALS = 12
MAX_GRID_POINTS = 10000


class SweepParameter(Enum):
    GAMMA_C = 'gamma_c'
    GAMMA_U = 'gamma_u'
    GAMMA_D = 'gamma_d'
    SELECTION_WEIGHT_C = 'selection_weight_c'
    SELECTION_WEIGHT_U = 'selection_weight_u'
    SELECTION_WEIGHT_D = 'selection_weight_d'
    FIT_FRACTION = 'fit_fraction'
    WEIGHT_AUDITABILITY = 'weight_auditability'
    WEIGHT_TRACEABILITY = 'weight_traceability'
    WEIGHT_COMPREHENSIBILITY = 'weight_comprehensibility'
    WEIGHT_ACTIONABILITY = 'weight_actionability'
    WEIGHT_FIDELITY = 'weight_fidelity'
    WEIGHT_DEBUGGABILITY = 'weight_debuggability'
    WEIGHT_EFFICIENCY = 'weight_efficiency'

    @property
    def is_selection_weight(self):
        return self.value.startswith('selection_weight_')

    @property
    def is_axis_weight(self):
        return self.value.startswith('weight_')

    @property
    def target(self):
        ''' Name of the swept quantity (axis key for selection weights, property key
            for aggregation weights, scenario field otherwise).
        '''
        if self.is_selection_weight:
            return {'c': 'compliance', 'u': 'user', 'd': 'developer'}[self.value[-1]]
        if self.is_axis_weight:
            return self.value[len('weight_'):]
        return self.value


class SweepSpec(ParamObject):
    ''' Single-parameter grid: start + i * step up to stop, both ends included. '''

    def __init__(self, parameter, start, stop, step):
        self.parameter = parameter
        self.start = start
        self.stop = stop
        self.step = step
        if self.start > self.stop:
            raise ValidationError(
                'stop', f'sweep upper bound {self.stop} lower than lower bound {self.start}')
        if not (self.stop - self.start) / self.step < MAX_GRID_POINTS or \
                len(self.gridPoints()) > MAX_GRID_POINTS:
            raise ValidationError(
                'step', f'step {self.step} too small over [{self.start}, {self.stop}], '
                f'sweeps are limited to {MAX_GRID_POINTS} grid points')
        self.freeze()

    @property
    def parameter(self):
        return self._parameter

    @parameter.setter
    def parameter(self, value):
        try:
            self._parameter = SweepParameter(value)
        except ValueError:
            raise ValidationError('parameter', f'unknown sweep parameter "{value}"')

    @property
    def start(self):
        return self._start

    @start.setter
    def start(self, value):
        self._start = self.checkFinite('start', value)

    @property
    def stop(self):
        return self._stop

    @stop.setter
    def stop(self, value):
        self._stop = self.checkFinite('stop', value)

    @property
    def step(self):
        return self._step

    @step.setter
    def step(self, value):
        self._step = self.checkFinite('step', self.checkStrictlyPositive('step', value))

    @staticmethod
    def inputs():
        return {
            'parameter': {'desc': 'swept parameter'},
            'start': {'desc': 'sweep lower bound'},
            'stop': {'desc': 'sweep upper bound'},
            'step': {'desc': 'sweep step'}
        }

    def gridPoints(self):
        ''' Ordered grid values. A last step overshooting the upper bound is clamped to it. '''
        n = math.floor((self.stop - self.start) / self.step + GRID_TOL)
        values = [round(self.start + i * self.step, GRID_DECIMALS) for i in range(n + 1)]
        if math.isclose(values[-1], self.stop, rel_tol=GRID_TOL, abs_tol=GRID_TOL):
            values[-1] = self.stop
        else:
            values.append(self.stop)
        return values

    def todict(self):
        return {'parameter': self.parameter.value, 'from': self.start, 'to': self.stop,
                'step': self.step}


@dataclass(frozen=True)
class GridPoint:
    value: float
    valid: bool
    ranking_ratio: tuple = ()
    ranking_utility: tuple = ()
    plan: TierPlan = None
    error: str = None

    def todict(self):
        return {
            'value': self.value,
            'valid': self.valid,
            'ranking_ratio': list(self.ranking_ratio),
            'ranking_utility': list(self.ranking_utility),
            'plan': self.plan.todict() if self.plan is not None else None,
            'error': self.error
        }

    @classmethod
    def fromdict(cls, d):
        plan = TierPlan.fromdict(d['plan']) if d['plan'] is not None else None
        return cls(d['value'], d['valid'], tuple(d['ranking_ratio']),
                   tuple(d['ranking_utility']), plan, d['error'])


@dataclass(frozen=True)
class SweepReport:
    ''' Grid points ordered by value, Kendall tau-b between the efficiency-ratio rankings
        of consecutive points (None when either point is invalid) and values at which
        the tier plan changes.
    '''
    spec: SweepSpec
    points: tuple
    stability: tuple
    change_points: tuple

    def todict(self):
        return {
            'sweep': self.spec.todict(),
            'points': [p.todict() for p in self.points],
            'stability': list(self.stability),
            'change_points': list(self.change_points),
            'stability_metric': 'kendall tau-b between consecutive efficiency-ratio rankings'
        }

    @classmethod
    def fromdict(cls, d):
        s = d['sweep']
        return cls(
            SweepSpec(s['parameter'], s['from'], s['to'], s['step']),
            tuple(GridPoint.fromdict(p) for p in d['points']),
            tuple(d['stability']), tuple(d['change_points']))


def renormalised(values, index, value):
    ''' Set one weight of a simplex and rescale the others proportionally so that the
        weights still sum to 1. If the other weights are all null, the remainder is
        split equally among them.

        :param values: weights summing to 1
        :param index: index of the modified weight
        :param value: new weight value, within [0, 1]
        :return: new weights tuple
    '''
    if value < 0. or value > 1.:
        raise ValidationError('weight', f'{value} not within [0, 1]')
    rest = 1. - value
    others = sum(x for i, x in enumerate(values) if i != index)
    n_others = len(values) - 1
    new = []
    for i, x in enumerate(values):
        if i == index:
            new.append(value)
        elif others > 0.:
            new.append(x * rest / others)
        else:
            new.append(rest / n_others)
    return tuple(new)


def applySweepValue(ctx, weights, parameter, value):
    ''' Scenario and aggregation weights with a single parameter set to a given value.

        Setting a parameter to its current value returns the inputs unchanged.

        :param ctx: ScenarioContext
        :param weights: AxisWeights
        :param parameter: SweepParameter (or its value)
        :param value: parameter value
        :return: (ScenarioContext, AxisWeights) tuple
    '''
    parameter = SweepParameter(parameter)
    if parameter.is_selection_weight:
        i = AXIS_KEYS.index(parameter.target)
        if math.isclose(ctx.selection_weights[i], value, abs_tol=GRID_TOL):
            return ctx, weights
        return ctx.updated(
            selection_weights=renormalised(ctx.selection_weights, i, value)), weights
    if parameter.is_axis_weight:
        key = parameter.target
        if math.isclose(weights[key], value, abs_tol=GRID_TOL):
            return ctx, weights
        axis = [a for a, keys in AXIS_PROPERTIES.items() if key in keys][0]
        keys = AXIS_PROPERTIES[axis]
        try:
            new = renormalised([weights[k] for k in keys], keys.index(key), value)
        except ValidationError as err:
            raise ValidationError(parameter.value, err.msg)
        weights = weights.updated(**dict(zip(keys, new)))
        if ctx.axis_weights is not None:
            ctx = ctx.updated(axis_weights=weights)
        return ctx, weights
    return ctx.updated(**{parameter.value: value}), weights


def evaluateGridPoint(catalog, ctx, weights, parameter, value, mode=RoundingMode.FULL):
    ''' Run scoring, selection and recommendation at one grid point.

        :return: GridPoint, flagged invalid if the value breaks a scenario or
            weight constraint
    '''
    try:
        ctx, weights = applySweepValue(ctx, weights, parameter, value)
    except ValidationError as err:
        logger.warning('%s = %s: invalid grid point, %s', SweepParameter(parameter).value,
                       value, err)
        return GridPoint(value, False, error=str(err))
    scores = scoreCatalog(catalog, weights, ctx)
    results = selectTechniques(scores, catalog, ctx, mode)
    plan = synthesizeTiers(scores, results)
    return GridPoint(
        value, True,
        tuple(r.technique_id for r in rank(results, RankKey.RATIO)),
        tuple(r.technique_id for r in rank(results, RankKey.UTILITY)),
        plan)


def rankStability(ranking_a, ranking_b):
    ''' Kendall tau-b between two rankings of the same identifiers.

        :param ranking_a: ordered identifiers
        :param ranking_b: ordered identifiers, permutation of ranking_a
        :return: correlation in [-1, 1]
    '''
    ranking_a, ranking_b = list(ranking_a), list(ranking_b)
    if len(set(ranking_a)) != len(ranking_a) or len(set(ranking_b)) != len(ranking_b):
        raise ValueError('rankings must not contain duplicate identifiers')
    if set(ranking_a) != set(ranking_b):
        raise ValueError('rankings must cover the same identifiers')
    if len(ranking_a) < 2:
        raise ValueError('rank correlation requires at least 2 ranked items')
    ids = sorted(ranking_a)
    tau, _ = kendalltau([ranking_a.index(x) for x in ids], [ranking_b.index(x) for x in ids])

    # Tie-free permutations give a rational tau; drop the floating-point residue
    return min(1., max(-1., round(float(tau), GRID_DECIMALS) + 0.))


def planKey(plan):
    return tuple(p.technique_id if p is not None else None for p in plan.tiers.values())


def sweep(catalog, ctx, spec, weights=None, mode=RoundingMode.FULL, mpi=False):
    ''' Re-run the pipeline over a one-parameter grid, everything else held fixed.

        :param catalog: Catalog of applicable techniques
        :param ctx: baseline ScenarioContext
        :param spec: SweepSpec
        :param weights: baseline AxisWeights (defaults to the scenario weights)
        :param mode: RoundingMode of efficiency ratios
        :param mpi: whether to evaluate grid points in parallel processes
        :return: SweepReport
    '''
    if len(catalog) == 0:
        raise EngineError('no applicable techniques')
    if weights is None:
        weights = ctx.weights()
    values = spec.gridPoints()
    logger.debug('sweeping %s over %s', spec.parameter.value,
                 countStr(len(values), 'grid point'))
    queue = [[catalog, ctx, weights, spec.parameter, v, mode] for v in values]
    points = Batch(evaluateGridPoint, queue).run(mpi=mpi, loglevel=logger.level)
    points = tuple(sorted(points, key=lambda p: p.value))

    stability = []
    for a, b in pairwise(points):
        if a.valid and b.valid:
            stability.append(rankStability(a.ranking_ratio, b.ranking_ratio))
        else:
            stability.append(None)

    change_points = []
    previous = None
    for p in points:
        if not p.valid:
            continue
        if previous is not None and planKey(p.plan) != planKey(previous.plan):
            change_points.append(p.value)
        previous = p

    n_invalid = sum(not p.valid for p in points)
    if n_invalid > 0:
        logger.warning('%s out of %d skipped', countStr(n_invalid, 'invalid grid point'),
                       len(points))
    return SweepReport(spec, points, tuple(stability), tuple(change_points))

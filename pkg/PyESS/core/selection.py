# -*- coding: utf-8 -*-

''' Multi-objective selection: utility, resource cost, efficiency ratio,
    latency feasibility, ranking and Pareto frontier.
'''

from enum import Enum
from functools import total_ordering
from dataclasses import dataclass
import numpy as np

from .paramobj import EngineError
from ..constants import RATING_BOUNDS, SCORE_DECIMALS, RATIO_DECIMALS, WEIGHT_SUM_TOL
from ..utils import logger, isWithin, roundHalfUp


@total_ordering
class FeasibilityClass(Enum):
    ''' Real-time feasibility, ordered Fits > Marginal > InfeasibleOnline. '''

    FITS = 'fits'
    MARGINAL = 'marginal'
    INFEASIBLE_ONLINE = 'infeasible'

    @property
    def order(self):
        return {'fits': 2, 'marginal': 1, 'infeasible': 0}[self.value]

    @property
    def glyph(self):
        return {'fits': '✓', 'marginal': '≈', 'infeasible': '×'}[self.value]

    def __lt__(self, other):
        if not isinstance(other, self.__class__):
            return NotImplemented
        return self.order < other.order


class RoundingMode(Enum):
    FULL = 'full'
    PAPER = 'paper'


class RankKey(Enum):
    UTILITY = 'utility'
    RATIO = 'ratio'
    AXIS_C = 'c'
    AXIS_U = 'u'
    AXIS_D = 'd'


@dataclass(frozen=True)
class SelectionResult:
    ''' Selection figures of a technique under a scenario. '''
    technique_id: str
    adjusted: tuple
    efficiency: float
    utility: float
    resource_cost: float
    efficiency_ratio: float
    feasibility: FeasibilityClass
    on_pareto_frontier: bool

    def keyValue(self, key):
        return {
            RankKey.UTILITY: self.utility,
            RankKey.RATIO: self.efficiency_ratio,
            RankKey.AXIS_C: self.adjusted[0],
            RankKey.AXIS_U: self.adjusted[1],
            RankKey.AXIS_D: self.adjusted[2]
        }[RankKey(key)]

    def todict(self):
        return {
            'technique_id': self.technique_id,
            'adjusted': list(self.adjusted),
            'efficiency': self.efficiency,
            'utility': self.utility,
            'resource_cost': self.resource_cost,
            'efficiency_ratio': self.efficiency_ratio,
            'feasibility': self.feasibility.value,
            'on_pareto_frontier': self.on_pareto_frontier
        }

    @classmethod
    def fromdict(cls, d):
        return cls(
            d['technique_id'], tuple(d['adjusted']), d['efficiency'], d['utility'],
            d['resource_cost'], d['efficiency_ratio'], FeasibilityClass(d['feasibility']),
            d['on_pareto_frontier'])


def checkWeights(weights):
    weights = tuple(weights)
    if any(w < 0 for w in weights) or abs(sum(weights) - 1.) > WEIGHT_SUM_TOL:
        raise ValueError(f'selection weights {weights} must be non-negative and sum to 1')
    return weights


def utility(adjusted, weights):
    ''' Scenario-weighted convex combination of adjusted axis scores.

        :param adjusted: (C', U', D') adjusted coordinates
        :param weights: (a_C, a_U, a_D) selection weights
        :return: combined utility
    '''
    weights = checkWeights(weights)
    return sum(a * x for a, x in zip(weights, adjusted))


def resourceCost(efficiency):
    ''' Resource cost proxy: reciprocal of the efficiency rating. '''
    efficiency = isWithin('efficiency', efficiency, RATING_BOUNDS)
    return 1. / efficiency


def efficiencyRatio(u, cost, mode=RoundingMode.FULL):
    ''' Efficiency-adjusted utility.

        In paper mode, utility and cost are rounded half-up to 2 decimals before
        division, and the ratio to 1 decimal, as in published tables.

        :param u: utility
        :param cost: resource cost (> 0)
        :param mode: RoundingMode
        :return: utility / cost ratio
    '''
    if cost <= 0:
        raise ValueError(f'resource cost must be strictly positive (got {cost})')
    if RoundingMode(mode) is RoundingMode.FULL:
        return u / cost
    ratio = roundHalfUp(u, SCORE_DECIMALS) / roundHalfUp(cost, SCORE_DECIMALS)
    return float(roundHalfUp(ratio, RATIO_DECIMALS))


def classifyLatency(latency, ctx):
    ''' Real-time feasibility of a latency profile under a scenario budget.

        Offline-only techniques are infeasible online. Online techniques fit when their
        estimate is within the fit fraction of the explanation budget (budget minus
        reserved overhead), are marginal within the full explanation budget, and
        infeasible beyond it. Thresholds are inclusive.
    '''
    if not latency.is_online:
        return FeasibilityClass.INFEASIBLE_ONLINE
    if latency.estimate_ms <= ctx.fit_threshold_ms:
        return FeasibilityClass.FITS
    if latency.estimate_ms <= ctx.explanation_budget_ms:
        return FeasibilityClass.MARGINAL
    return FeasibilityClass.INFEASIBLE_ONLINE


def dominates(a, b):
    ''' Whether point a weakly dominates point b with at least one strict improvement
        (maximisation on all objectives).
    '''
    return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))


def flagParetoFront(points):
    ''' Determine which points are Pareto-optimal, all objectives being maximised.

        Identical points do not dominate each other and are all kept.

        :param points: (n, d) array of objective values
        :return: boolean array of length n, True for Pareto-optimal points
    '''
    points = np.asarray(points, dtype=float)
    n = points.shape[0]
    pareto = np.ones(n, dtype=bool)
    for i in range(n):
        if pareto[i]:
            # Clear the flag on points dominated by points[i]
            pareto[pareto] = (np.any(points[pareto] > points[i], axis=1) |
                              np.all(points[pareto] == points[i], axis=1))
    return pareto


def paretoFrontier(coordinates):
    ''' Identifiers of non-dominated techniques over adjusted coordinates.

        :param coordinates: list of (technique_id, (C', U', D')) pairs with unique ids
        :return: set of technique identifiers on the frontier
    '''
    if len(coordinates) == 0:
        raise EngineError('Pareto frontier of an empty technique set is undefined')
    ids = [tid for tid, _ in coordinates]
    if len(set(ids)) != len(ids):
        raise ValueError('duplicate technique identifiers in Pareto frontier input')
    flags = flagParetoFront([x for _, x in coordinates])
    return {tid for tid, flag in zip(ids, flags) if flag}


def rank(results, key=RankKey.UTILITY):
    ''' Sort selection results by descending key, then descending utility,
        then ascending technique identifier.
    '''
    if len(results) == 0:
        raise EngineError('cannot rank an empty list of selection results')
    key = RankKey(key)
    return sorted(results, key=lambda r: (-r.keyValue(key), -r.utility, r.technique_id))


def selectTechniques(scores, catalog, ctx, mode=RoundingMode.FULL):
    ''' Compute selection results for scored techniques, in score order.

        :param scores: list of EssCoordinates
        :param catalog: Catalog holding the scored techniques
        :param ctx: ScenarioContext
        :param mode: RoundingMode of the efficiency ratio
        :return: list of SelectionResult
    '''
    frontier = paretoFrontier([(s.technique_id, s.adjusted) for s in scores])
    results = []
    for s in scores:
        t = catalog.get(s.technique_id)
        eff = t.properties.efficiency
        u = utility(s.adjusted, ctx.selection_weights)
        cost = resourceCost(eff)
        results.append(SelectionResult(
            s.technique_id, s.adjusted, eff, u, cost, efficiencyRatio(u, cost, mode),
            classifyLatency(t.latency, ctx), s.technique_id in frontier))
    logger.debug('Pareto frontier: %s', ', '.join(s.technique_id for s in scores
                                                   if s.technique_id in frontier))
    return results

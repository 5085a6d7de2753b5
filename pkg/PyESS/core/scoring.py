# -*- coding: utf-8 -*-

''' Projection of property vectors onto the Compliance, User and Developer axes,
    contextual adjustment and qualitative discretisation.
'''

import os
from enum import Enum
from dataclasses import dataclass

from .paramobj import ParamObject, ValidationError
from .catalog import parseJSON
from ..constants import *
from ..utils import logger, clip, isWithin, DATA_DIR


class AxisWeights(ParamObject):
    ''' Stakeholder aggregation weights, one per intrinsic property, each axis
        forming a convex combination of its properties.
    '''

    def __init__(self, auditability=None, traceability=None, comprehensibility=None,
                 actionability=None, fidelity=None, debuggability=None, efficiency=None):
        values = {
            'auditability': auditability,
            'traceability': traceability,
            'comprehensibility': comprehensibility,
            'actionability': actionability,
            'fidelity': fidelity,
            'debuggability': debuggability,
            'efficiency': efficiency
        }
        for k, v in values.items():
            if v is None:
                v = DEFAULT_AXIS_WEIGHTS[k]
            setattr(self, f'_{k}', self.checkPositiveOrNull(k, v))
        for axis, keys in AXIS_PROPERTIES.items():
            self.checkSimplex(axis, [getattr(self, f'_{k}') for k in keys], WEIGHT_SUM_TOL)
        self.freeze()

    auditability = property(lambda self: self._auditability)
    traceability = property(lambda self: self._traceability)
    comprehensibility = property(lambda self: self._comprehensibility)
    actionability = property(lambda self: self._actionability)
    fidelity = property(lambda self: self._fidelity)
    debuggability = property(lambda self: self._debuggability)
    efficiency = property(lambda self: self._efficiency)

    def __getitem__(self, key):
        if key not in PROPERTY_KEYS:
            raise KeyError(key)
        return getattr(self, key)

    @property
    def compliance(self):
        return tuple(self[k] for k in AXIS_PROPERTIES['compliance'])

    @property
    def user(self):
        return tuple(self[k] for k in AXIS_PROPERTIES['user'])

    @property
    def developer(self):
        return tuple(self[k] for k in AXIS_PROPERTIES['developer'])

    @property
    def meta(self):
        return {k: self[k] for k in PROPERTY_KEYS}

    def nested(self):
        ''' Weights grouped per axis, as written in scenario documents. '''
        return {axis: {k: self[k] for k in keys} for axis, keys in AXIS_PROPERTIES.items()}

    @classmethod
    def fromNested(cls, d):
        if not isinstance(d, dict):
            raise ValidationError('axis_weights', 'must be an object')
        kwargs = {}
        for axis, values in d.items():
            if axis not in AXIS_PROPERTIES:
                raise ValidationError(f'axis_weights.{axis}', 'unknown axis')
            if not isinstance(values, dict):
                raise ValidationError(f'axis_weights.{axis}', 'must be an object')
            for k, v in values.items():
                if k not in AXIS_PROPERTIES[axis]:
                    raise ValidationError(
                        f'axis_weights.{axis}.{k}', f'not a {axis} axis property')
                kwargs[k] = v
            missing = set(AXIS_PROPERTIES[axis]) - set(values.keys())
            if len(missing) > 0:
                raise ValidationError(f'axis_weights.{axis}.{sorted(missing)[0]}', 'missing field')
        return cls(**kwargs)

    @staticmethod
    def inputs():
        return {k: {'desc': f'{k} weight'} for k in PROPERTY_KEYS}


class ScenarioContext(ParamObject):
    ''' Usage situation: contextual multipliers, latency budget and selection weights. '''

    def __init__(self, name, gamma_c, gamma_u, gamma_d, latency_budget_ms,
                 reserved_overhead_ms, fit_fraction, selection_weights, axis_weights=None):
        ''' Constructor.

            :param name: scenario name
            :param gamma_c: Compliance axis multiplier
            :param gamma_u: User axis multiplier
            :param gamma_d: Developer axis multiplier
            :param latency_budget_ms: end-to-end latency budget (ms)
            :param reserved_overhead_ms: budget share reserved for non-explanation work (ms)
            :param fit_fraction: fraction of the explanation budget considered a clear fit
            :param selection_weights: (a_C, a_U, a_D) utility weights
            :param axis_weights: optional AxisWeights override
        '''
        self.name = name
        try:
            self.gamma_c = gamma_c
            self.gamma_u = gamma_u
            self.gamma_d = gamma_d
            self.latency_budget_ms = latency_budget_ms
            self.reserved_overhead_ms = reserved_overhead_ms
            self.fit_fraction = fit_fraction
            self.selection_weights = selection_weights
            self.axis_weights = axis_weights
        except ValidationError as err:
            raise err.withOwner(self.name)
        if self.reserved_overhead_ms >= self.latency_budget_ms:
            raise ValidationError(
                'reserved_overhead_ms',
                f'{self.reserved_overhead_ms} ms must be lower than the '
                f'{self.latency_budget_ms} ms latency budget', owner=self.name)
        self.freeze()

    @property
    def name(self):
        return self._name

    @name.setter
    def name(self, value):
        self._name = self.checkString('name', value)

    @property
    def gamma_c(self):
        return self._gamma_c

    @gamma_c.setter
    def gamma_c(self, value):
        self._gamma_c = self.checkPositiveOrNull('gamma_c', value)

    @property
    def gamma_u(self):
        return self._gamma_u

    @gamma_u.setter
    def gamma_u(self, value):
        self._gamma_u = self.checkPositiveOrNull('gamma_u', value)

    @property
    def gamma_d(self):
        return self._gamma_d

    @gamma_d.setter
    def gamma_d(self, value):
        self._gamma_d = self.checkPositiveOrNull('gamma_d', value)

    @property
    def latency_budget_ms(self):
        return self._latency_budget_ms

    @latency_budget_ms.setter
    def latency_budget_ms(self, value):
        self._latency_budget_ms = self.checkStrictlyPositive('latency_budget_ms', value)

    @property
    def reserved_overhead_ms(self):
        return self._reserved_overhead_ms

    @reserved_overhead_ms.setter
    def reserved_overhead_ms(self, value):
        self._reserved_overhead_ms = self.checkPositiveOrNull('reserved_overhead_ms', value)

    @property
    def fit_fraction(self):
        return self._fit_fraction

    @fit_fraction.setter
    def fit_fraction(self, value):
        value = self.checkStrictlyPositive('fit_fraction', value)
        if value > 1.:
            raise ValidationError('fit_fraction', f'{value} > 1, must be within (0, 1]')
        self._fit_fraction = value

    @property
    def selection_weights(self):
        return self._selection_weights

    @selection_weights.setter
    def selection_weights(self, value):
        if not hasattr(value, '__len__') or len(value) != 3:
            raise ValidationError('selection_weights', 'expected (a_C, a_U, a_D) triple')
        value = tuple(self.checkPositiveOrNull('selection_weights', x) for x in value)
        self._selection_weights = self.checkSimplex('selection_weights', value, WEIGHT_SUM_TOL)

    @property
    def axis_weights(self):
        return self._axis_weights

    @axis_weights.setter
    def axis_weights(self, value):
        if value is not None and not isinstance(value, AxisWeights):
            raise ValidationError('axis_weights', 'must be an AxisWeights object')
        self._axis_weights = value

    @property
    def gammas(self):
        return (self.gamma_c, self.gamma_u, self.gamma_d)

    @property
    def explanation_budget_ms(self):
        ''' Share of the end-to-end budget available to explanation generation. '''
        return self.latency_budget_ms - self.reserved_overhead_ms

    @property
    def fit_threshold_ms(self):
        return self.fit_fraction * self.explanation_budget_ms

    def weights(self):
        ''' Aggregation weights in force for this scenario. '''
        return self.axis_weights if self.axis_weights is not None else AxisWeights()

    @staticmethod
    def inputs():
        return {
            'name': {'desc': 'scenario name'},
            'gamma_c': {'desc': 'Compliance multiplier'},
            'gamma_u': {'desc': 'User multiplier'},
            'gamma_d': {'desc': 'Developer multiplier'},
            'latency_budget_ms': {'desc': 'latency budget', 'unit': 'ms'},
            'reserved_overhead_ms': {'desc': 'reserved overhead', 'unit': 'ms'},
            'fit_fraction': {'desc': 'fit fraction'},
            'selection_weights': {'desc': 'selection weight'},
            'axis_weights': {'desc': 'aggregation weights'}
        }

    @classmethod
    def substitution(cls):
        ''' Autonomous decision-making with ex-post human oversight. '''
        gamma_c, gamma_u, gamma_d = SUBSTITUTION_GAMMAS
        return cls(
            'substitution', gamma_c, gamma_u, gamma_d,
            SUBSTITUTION_LATENCY_BUDGET, SUBSTITUTION_RESERVED_OVERHEAD,
            SUBSTITUTION_FIT_FRACTION, SUBSTITUTION_SELECTION_WEIGHTS)


def scenarioFromDict(doc):
    ''' Build a ScenarioContext from a scenario document. '''
    if not isinstance(doc, dict):
        raise ValidationError('scenario', 'scenario document must be an object')
    name = doc.get('name')
    owner = name if isinstance(name, str) else None
    keys = ['name', 'gamma_c', 'gamma_u', 'gamma_d', 'latency_budget_ms',
            'reserved_overhead_ms', 'fit_fraction', 'selection_weights']
    for k in keys:
        if k not in doc:
            raise ValidationError(k, 'missing field', owner=owner)
    sw = doc['selection_weights']
    if not isinstance(sw, dict):
        raise ValidationError('selection_weights', 'must be an object', owner=owner)
    for k in AXIS_KEYS:
        if k not in sw:
            raise ValidationError(f'selection_weights.{k}', 'missing field', owner=owner)
    unknown = sorted(set(sw.keys()) - set(AXIS_KEYS))
    if len(unknown) > 0:
        raise ValidationError(f'selection_weights.{unknown[0]}', 'unknown axis', owner=owner)
    axis_weights = None
    if doc.get('axis_weights') is not None:
        try:
            axis_weights = AxisWeights.fromNested(doc['axis_weights'])
        except ValidationError as err:
            if not err.field.startswith('axis_weights'):
                err = ValidationError(f'axis_weights.{err.field}', err.msg)
            raise err.withOwner(owner)
    return ScenarioContext(
        *[doc[k] for k in keys[:-1]],
        tuple(sw[k] for k in AXIS_KEYS),
        axis_weights=axis_weights)


def scenarioToDict(ctx):
    d = {k: getattr(ctx, k) for k in ctx.inputs().keys() if k not in (
        'selection_weights', 'axis_weights')}
    d['selection_weights'] = dict(zip(AXIS_KEYS, ctx.selection_weights))
    if ctx.axis_weights is not None:
        d['axis_weights'] = ctx.axis_weights.nested()
    return d


def loadScenario(source):
    ''' Load and validate a scenario document (JSON text or readable text stream). '''
    return scenarioFromDict(parseJSON(source, 'scenario'))


def loadScenarioFile(fpath):
    logger.debug('Loading scenario from "%s"', fpath)
    with open(fpath, 'r', encoding='utf-8') as fh:
        return loadScenario(fh)


SUBSTITUTION_SCENARIO_FILE = os.path.join(DATA_DIR, 'scenarios', 'substitution.json')


def getScenariosDict():
    ''' Built-in scenario factories, indexed by name. '''
    return {'substitution': ScenarioContext.substitution}


def getScenario(name):
    ''' Return the built-in scenario with a given name. '''
    scenarios = getScenariosDict()
    try:
        return scenarios[name]()
    except KeyError:
        raise ValueError('"{}" scenario not found. Built-in scenarios are: {}'.format(
            name, ', '.join(list(scenarios.keys()))))


class QualitativeLevel(Enum):
    LOW = 'Low'
    MEDIUM = 'Medium'
    HIGH = 'High'


@dataclass(frozen=True)
class EssCoordinates:
    ''' Raw and adjusted ESS coordinates of a technique, with qualitative levels. '''
    technique_id: str
    raw: tuple
    adjusted: tuple
    levels: tuple

    def todict(self):
        return {
            'technique_id': self.technique_id,
            'raw': list(self.raw),
            'adjusted': list(self.adjusted),
            'levels': [x.value for x in self.levels]
        }

    @classmethod
    def fromdict(cls, d):
        return cls(
            d['technique_id'], tuple(d['raw']), tuple(d['adjusted']),
            tuple(QualitativeLevel(x) for x in d['levels']))


def aggregateAxes(p, w):
    ''' Project a property vector onto the three axes.

        :param p: PropertyVector
        :param w: AxisWeights
        :return: (C, U, D) raw axis scores
    '''
    return tuple(sum(w[k] * p[k] for k in keys) for keys in AXIS_PROPERTIES.values())


def rawCoordinates(t, w):
    ''' Raw axis scores of a technique: aggregated property ratings, replaced by the
        technique calibrated scores on the axes where it carries one.
    '''
    raw = aggregateAxes(t.properties, w)
    if t.calibrated_axes is None:
        return raw
    calibrated = tuple(t.calibrated_axes.get(axis, x) for axis, x in zip(AXIS_KEYS, raw))
    logger.debug('%s: calibrated raw coordinates %s (aggregated %s)', t.id, calibrated, raw)
    return calibrated


def applyContext(raw, ctx):
    ''' Scale raw axis scores by the scenario multipliers and clip them to [1, 5]. '''
    return tuple(clip(gamma * x, RATING_BOUNDS) for gamma, x in zip(ctx.gammas, raw))


def discretise(score):
    ''' Qualitative level of an adjusted score: Low [1, 2.5), Medium [2.5, 3.5),
        High [3.5, 5].
    '''
    score = isWithin('score', score, RATING_BOUNDS)
    if score < LOW_UPPER_EDGE:
        return QualitativeLevel.LOW
    if score < MEDIUM_UPPER_EDGE:
        return QualitativeLevel.MEDIUM
    return QualitativeLevel.HIGH


def scoreTechnique(t, w, ctx):
    ''' Raw coordinates, adjusted coordinates and levels of a technique. '''
    raw = rawCoordinates(t, w)
    adjusted = applyContext(raw, ctx)
    return EssCoordinates(t.id, raw, adjusted, tuple(discretise(x) for x in adjusted))


def scoreCatalog(catalog, w, ctx):
    ''' Score every technique of a catalog, in catalog order. '''
    scores = [scoreTechnique(t, w, ctx) for t in catalog]
    logger.debug('scored %d techniques under "%s" scenario', len(scores), ctx.name)
    return scores

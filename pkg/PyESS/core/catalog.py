# -*- coding: utf-8 -*-

''' Catalog of XAI techniques: intrinsic property vectors, latency profiles,
    document loading, validation and modality filtering.
'''

import os
import json
from enum import Enum

from .paramobj import ParamObject, ValidationError, ParseError
from ..constants import PROPERTY_KEYS, RATING_BOUNDS, AXIS_KEYS
from ..utils import logger, countStr, DATA_DIR


def ratingProperty(key):
    ''' Validating property for a single 1-5 rating field. '''

    def getter(self):
        return getattr(self, f'_{key}')

    def setter(self, value):
        setattr(self, f'_{key}', self.checkBounded(key, value, RATING_BOUNDS))

    return property(getter, setter)


class PropertyVector(ParamObject):
    ''' Seven-dimensional intrinsic property vector, rated on a 1-5 scale. '''

    auditability = ratingProperty('auditability')
    traceability = ratingProperty('traceability')
    comprehensibility = ratingProperty('comprehensibility')
    actionability = ratingProperty('actionability')
    fidelity = ratingProperty('fidelity')
    debuggability = ratingProperty('debuggability')
    efficiency = ratingProperty('efficiency')

    def __init__(self, auditability, traceability, comprehensibility, actionability,
                 fidelity, debuggability, efficiency):
        self.auditability = auditability
        self.traceability = traceability
        self.comprehensibility = comprehensibility
        self.actionability = actionability
        self.fidelity = fidelity
        self.debuggability = debuggability
        self.efficiency = efficiency
        self.freeze()

    @classmethod
    def fromTuple(cls, values):
        if len(values) != len(PROPERTY_KEYS):
            raise ValueError(f'expected {len(PROPERTY_KEYS)} ratings, got {len(values)}')
        return cls(*values)

    def __getitem__(self, key):
        if key not in PROPERTY_KEYS:
            raise KeyError(key)
        return getattr(self, key)

    def astuple(self):
        return tuple(getattr(self, k) for k in PROPERTY_KEYS)

    @staticmethod
    def inputs():
        return {
            'auditability': {'desc': 'auditability rating', 'label': 'Audit.'},
            'traceability': {'desc': 'traceability rating', 'label': 'Trace.'},
            'comprehensibility': {'desc': 'comprehensibility rating', 'label': 'Compr.'},
            'actionability': {'desc': 'actionability rating', 'label': 'Action.'},
            'fidelity': {'desc': 'fidelity rating', 'label': 'Fidelity'},
            'debuggability': {'desc': 'debuggability rating', 'label': 'Debug.'},
            'efficiency': {'desc': 'efficiency rating', 'label': 'Eff.'}
        }


class LatencyMode(Enum):
    ONLINE = 'online'
    OFFLINE_ONLY = 'offline_only'


class LatencyProfile(ParamObject):
    ''' Online technique with a latency estimate, or offline-only technique. '''

    def __init__(self, mode, estimate_ms=None):
        ''' Constructor.

            :param mode: LatencyMode (or its string value)
            :param estimate_ms: latency estimate (ms), required for online techniques only
        '''
        self.mode = mode
        self.estimate_ms = estimate_ms
        self.freeze()

    @property
    def mode(self):
        return self._mode

    @mode.setter
    def mode(self, value):
        try:
            self._mode = LatencyMode(value)
        except ValueError:
            allowed = ', '.join(f'"{m.value}"' for m in LatencyMode)
            raise ValidationError('mode', f'"{value}" is not one of {allowed}')

    @property
    def estimate_ms(self):
        return self._estimate_ms

    @estimate_ms.setter
    def estimate_ms(self, value):
        if self.mode is LatencyMode.OFFLINE_ONLY:
            if value is not None:
                raise ValidationError(
                    'estimate_ms', 'offline-only techniques carry no latency estimate')
        else:
            if value is None:
                raise ValidationError('estimate_ms', 'required for online techniques')
            value = self.checkPositiveOrNull('estimate_ms', value)
        self._estimate_ms = value

    @property
    def is_online(self):
        return self.mode is LatencyMode.ONLINE

    @staticmethod
    def inputs():
        return {
            'mode': {'desc': 'computation mode'},
            'estimate_ms': {'desc': 'latency estimate', 'unit': 'ms'}
        }

    def __repr__(self):
        if self.is_online:
            return f'{self.__class__.__name__}(online, {self.xformat(self.estimate_ms)} ms)'
        return f'{self.__class__.__name__}(offline only)'


class Technique(ParamObject):
    ''' Catalog entry: an XAI technique representing a family. '''

    def __init__(self, id, name, family, modalities, properties, latency, notes=None,
                 calibrated_axes=None):
        ''' Constructor.

            :param id: short unique identifier
            :param name: display name
            :param family: free-form family label
            :param modalities: non-empty iterable of data-modality labels
            :param properties: PropertyVector instance
            :param latency: LatencyProfile instance
            :param notes: optional free text
            :param calibrated_axes: optional raw axis scores, keyed by axis, taking
                precedence over the aggregated property ratings on those axes
        '''
        self.id = id
        try:
            self.name = name
            self.family = family
            self.modalities = modalities
            self.properties = properties
            self.latency = latency
            self.notes = notes
            self.calibrated_axes = calibrated_axes
        except ValidationError as err:
            raise err.withOwner(self.id)
        self.freeze()

    @property
    def id(self):
        return self._id

    @id.setter
    def id(self, value):
        self._id = self.checkString('id', value)

    @property
    def name(self):
        return self._name

    @name.setter
    def name(self, value):
        self._name = self.checkString('name', value)

    @property
    def family(self):
        return self._family

    @family.setter
    def family(self, value):
        self._family = self.checkString('family', value)

    @property
    def modalities(self):
        return self._modalities

    @modalities.setter
    def modalities(self, value):
        if isinstance(value, str) or not hasattr(value, '__iter__'):
            raise ValidationError('modalities', 'must be a list of labels')
        labels = []
        for label in value:
            label = self.checkString('modalities', label)
            if label not in labels:
                labels.append(label)
        if len(labels) == 0:
            raise ValidationError('modalities', 'must not be empty')
        self._modalities = tuple(labels)

    @property
    def properties(self):
        return self._properties

    @properties.setter
    def properties(self, value):
        if not isinstance(value, PropertyVector):
            raise ValidationError('properties', 'must be a PropertyVector')
        self._properties = value

    @property
    def latency(self):
        return self._latency

    @latency.setter
    def latency(self, value):
        if not isinstance(value, LatencyProfile):
            raise ValidationError('latency', 'must be a LatencyProfile')
        self._latency = value

    @property
    def notes(self):
        return self._notes

    @notes.setter
    def notes(self, value):
        if value is not None and not isinstance(value, str):
            raise ValidationError('notes', 'must be a string')
        self._notes = value

    @property
    def calibrated_axes(self):
        return self._calibrated_axes

    @calibrated_axes.setter
    def calibrated_axes(self, value):
        if value is None:
            self._calibrated_axes = None
            return
        if not isinstance(value, dict):
            raise ValidationError('calibrated_axes', 'must be an object keyed by axis')
        for axis in value:
            if axis not in AXIS_KEYS:
                raise ValidationError(f'calibrated_axes.{axis}', 'unknown axis')
        axes = {}
        for axis in AXIS_KEYS:
            if axis in value:
                try:
                    axes[axis] = self.checkBounded('calibrated_axes', value[axis], RATING_BOUNDS)
                except ValidationError as err:
                    raise ValidationError(f'calibrated_axes.{axis}', err.msg)
        self._calibrated_axes = axes if len(axes) > 0 else None

    def isApplicable(self, modality):
        return modality in self.modalities

    @staticmethod
    def inputs():
        return {
            'id': {'desc': 'technique identifier'},
            'name': {'desc': 'display name'},
            'family': {'desc': 'family label'},
            'modalities': {'desc': 'data modality label'},
            'properties': {'desc': 'intrinsic property vector'},
            'latency': {'desc': 'latency profile'},
            'notes': {'desc': 'notes'},
            'calibrated_axes': {'desc': 'calibrated axis score'}
        }

    def __repr__(self):
        return f'{self.__class__.__name__}({self.id})'


class Catalog:
    ''' Ordered, immutable collection of techniques with unique identifiers. '''

    def __init__(self, techniques=()):
        techniques = tuple(techniques)
        seen = set()
        for t in techniques:
            if not isinstance(t, Technique):
                raise TypeError(f'catalog entries must be Technique objects, got {type(t)}')
            if t.id in seen:
                raise ValidationError('id', 'duplicate technique identifier', owner=t.id)
            seen.add(t.id)
        self._techniques = techniques

    def __repr__(self):
        return f'{self.__class__.__name__}({", ".join(self.ids)})'

    def __len__(self):
        return len(self._techniques)

    def __iter__(self):
        return iter(self._techniques)

    def __getitem__(self, index):
        return self._techniques[index]

    def __contains__(self, tid):
        return tid in self.ids

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return False
        return self._techniques == other._techniques

    @property
    def ids(self):
        return tuple(t.id for t in self._techniques)

    def get(self, tid):
        ''' Return the technique with a given identifier. '''
        for t in self._techniques:
            if t.id == tid:
                return t
        raise KeyError(f'"{tid}" technique not found. Catalog techniques are: {", ".join(self.ids)}')

    def names(self):
        ''' Dictionary of display names indexed by technique identifier. '''
        return {t.id: t.name for t in self._techniques}

    def without(self, tid):
        ''' Return a copy of the catalog with one technique removed. '''
        self.get(tid)
        return self.__class__(t for t in self._techniques if t.id != tid)


def requireField(entry, key, owner, prefix=None):
    field = key if prefix is None else f'{prefix}.{key}'
    if not isinstance(entry, dict):
        raise ValidationError(prefix or 'entry', 'must be an object', owner=owner)
    if key not in entry:
        raise ValidationError(field, 'missing field', owner=owner)
    return entry[key]


def techniqueFromDict(entry, index=None):
    ''' Build a Technique from a catalog document entry, attaching the technique
        identifier to any validation error.
    '''
    owner = f'technique #{index}' if index is not None else None
    tid = requireField(entry, 'id', owner)
    owner = tid if isinstance(tid, str) else owner

    props = requireField(entry, 'properties', owner)
    if not isinstance(props, dict):
        raise ValidationError('properties', 'must be an object', owner=owner)
    unknown = sorted(set(props.keys()) - set(PROPERTY_KEYS))
    if len(unknown) > 0:
        raise ValidationError(f'properties.{unknown[0]}', 'unknown property', owner=owner)
    try:
        properties = PropertyVector(
            **{k: requireField(props, k, owner, prefix='properties') for k in PROPERTY_KEYS})
    except ValidationError as err:
        if err.owner is not None:
            raise
        raise err.withOwner(owner, prefix='properties')

    lat = requireField(entry, 'latency', owner)
    if not isinstance(lat, dict):
        raise ValidationError('latency', 'must be an object', owner=owner)
    try:
        latency = LatencyProfile(
            requireField(lat, 'mode', owner, prefix='latency'), lat.get('estimate_ms'))
    except ValidationError as err:
        if err.owner is not None:
            raise
        raise err.withOwner(owner, prefix='latency')

    try:
        return Technique(
            tid,
            requireField(entry, 'name', owner),
            requireField(entry, 'family', owner),
            requireField(entry, 'modalities', owner),
            properties,
            latency,
            notes=entry.get('notes'),
            calibrated_axes=entry.get('calibrated_axes'))
    except ValidationError as err:
        if err.owner is None:
            raise err.withOwner(owner)
        raise


def techniqueToDict(t):
    ''' Inverse of techniqueFromDict. '''
    latency = {'mode': t.latency.mode.value}
    if t.latency.is_online:
        latency['estimate_ms'] = t.latency.estimate_ms
    d = {
        'id': t.id,
        'name': t.name,
        'family': t.family,
        'modalities': list(t.modalities),
        'properties': t.properties.meta,
        'latency': latency
    }
    if t.notes is not None:
        d['notes'] = t.notes
    if t.calibrated_axes is not None:
        d['calibrated_axes'] = dict(t.calibrated_axes)
    return d


def catalogFromDict(doc):
    if not isinstance(doc, dict):
        raise ValidationError('techniques', 'catalog document must be an object')
    entries = requireField(doc, 'techniques', None)
    if not isinstance(entries, list):
        raise ValidationError('techniques', 'must be a list')
    return Catalog(techniqueFromDict(entry, index=i) for i, entry in enumerate(entries))


def catalogToDict(catalog):
    return {'techniques': [techniqueToDict(t) for t in catalog]}


def parseJSON(source, what):
    ''' Parse a JSON document from a string or a readable text stream. '''
    try:
        text = source.read() if hasattr(source, 'read') else source
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(
            f'malformed {what} document: {err.msg} (line {err.lineno}, column {err.colno})')
    except UnicodeDecodeError as err:
        raise ParseError(f'{what} document is not UTF-8 text ({err.reason} at byte {err.start})')


def loadCatalog(source):
    ''' Load and validate a catalog document.

        :param source: JSON text, or readable text stream
        :return: Catalog, techniques in document order
    '''
    catalog = catalogFromDict(parseJSON(source, 'catalog'))
    logger.debug('loaded catalog with %s', countStr(len(catalog), 'technique'))
    return catalog


def loadCatalogFile(fpath):
    ''' Load and validate a catalog document from a file path. '''
    logger.debug('Loading catalog from "%s"', fpath)
    with open(fpath, 'r', encoding='utf-8') as fh:
        return loadCatalog(fh)


PAPER_CATALOG_FILE = os.path.join(DATA_DIR, 'catalogs', 'paper.json')


def builtinPaperCatalog():
    ''' Five tabular techniques of the fraud-detection instantiation, read from the
        package data.

        Latency estimates read the qualitative runtimes ("<50 ms", "~80 ms", "~100 ms",
        "~60 ms") as point values.

        The SHAP developer score is pinned to its published calibration (4.70), the
        aggregated ratings giving 4.90.
    '''
    return loadCatalogFile(PAPER_CATALOG_FILE)


def filterApplicable(catalog, modality):
    ''' Sub-catalog of techniques applicable to a given data modality, order preserved. '''
    sub = Catalog(t for t in catalog if t.isApplicable(modality))
    logger.debug('%s applicable to "%s" data', countStr(len(sub), 'technique'), modality)
    return sub

# -*- coding: utf-8 -*-

''' Base class and exceptions for validated, immutable parameter objects. '''

import abc
import math

from ..utils import isIterable, isWithin, ratingStr


class ValidationError(ValueError):
    ''' Invalid value of a named field, optionally attached to an owner
        (technique id, scenario name).
    '''

    def __init__(self, field, msg, owner=None):
        self.field = field
        self.msg = msg
        self.owner = owner
        super().__init__(str(self))

    def __str__(self):
        prefix = f'{self.owner}: ' if self.owner is not None else ''
        return f'{prefix}invalid {self.field} ({self.msg})'

    def withOwner(self, owner, prefix=None):
        ''' Return a copy of the error attached to a given owner, with an optional
            field prefix (e.g. "properties.").
        '''
        field = self.field if prefix is None else f'{prefix}.{self.field}'
        return ValidationError(field, self.msg, owner=owner)


class ParseError(ValueError):
    ''' Malformed input document. '''
    pass


class EngineError(RuntimeError):
    ''' Domain failure that is not attributable to a single input field. '''
    pass


class ParamObject(metaclass=abc.ABCMeta):
    ''' Generic interface to a validated parameter object.

        Attributes are assigned through validating property setters during
        construction, after which the object is frozen. Modified versions are
        obtained with the `updated` method.
    '''

    @staticmethod
    @abc.abstractmethod
    def inputs():
        ''' Return an informative dictionary on the object input fields. '''
        raise NotImplementedError

    def __setattr__(self, key, value):
        if self.__dict__.get('_frozen', False):
            raise AttributeError(f'{self.__class__.__name__} objects are immutable')
        super().__setattr__(key, value)

    def freeze(self):
        object.__setattr__(self, '_frozen', True)

    @property
    def meta(self):
        return {k: getattr(self, k) for k in self.inputs().keys()}

    def copy(self):
        return self.__class__(**self.meta)

    def updated(self, **kwargs):
        ''' Return a copy of the object with some fields replaced (and re-validated). '''
        meta = self.meta
        for k in kwargs:
            if k not in meta:
                raise ValueError(f'unknown {self.__class__.__name__} field: "{k}"')
        meta.update(kwargs)
        return self.__class__(**meta)

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return False
        for k in self.inputs().keys():
            if getattr(self, k) != getattr(other, k):
                return False
        return True

    def __hash__(self):
        return hash((self.__class__.__name__, repr(self)))

    def paramStr(self, k):
        val = getattr(self, k)
        if val is None:
            return None
        if isIterable(val):
            return f'({", ".join(self.xformat(x) for x in val)})'
        return self.xformat(val)

    @staticmethod
    def xformat(x):
        if isinstance(x, float):
            return ratingStr(x)
        return str(x)

    def __repr__(self):
        params = [f'{k}={self.paramStr(k)}' for k in self.inputs().keys()
                  if getattr(self, k) is not None]
        return f'{self.__class__.__name__}({", ".join(params)})'

    def desc(self, key):
        return self.inputs()[key]['desc']

    def checkFloat(self, key, value):
        if isinstance(value, bool):
            raise ValidationError(key, f'{self.desc(key)} must be a number')
        if isinstance(value, int):
            value = float(value)
        if not isinstance(value, float):
            raise ValidationError(key, f'{self.desc(key)} must be a number')
        if value != value:
            raise ValidationError(key, f'{self.desc(key)} must not be NaN')
        return value

    def checkFinite(self, key, value):
        value = self.checkFloat(key, value)
        if not math.isfinite(value):
            raise ValidationError(key, f'{self.desc(key)} must be finite')
        return value

    def checkString(self, key, value):
        if not isinstance(value, str) or len(value.strip()) == 0:
            raise ValidationError(key, f'{self.desc(key)} must be a non-empty string')
        return value

    def checkPositiveOrNull(self, key, value):
        value = self.checkFloat(key, value)
        if value < 0:
            raise ValidationError(key, f'{value} < 0, must be positive or null')
        return value

    def checkStrictlyPositive(self, key, value):
        value = self.checkFloat(key, value)
        if value <= 0:
            raise ValidationError(key, f'{value} <= 0, must be strictly positive')
        return value

    def checkBounded(self, key, value, bounds):
        value = self.checkFloat(key, value)
        try:
            return isWithin(key, value, bounds)
        except ValueError:
            raise ValidationError(key, f'{ratingStr(value)} not within [{bounds[0]}, {bounds[1]}]')

    def checkSimplex(self, key, values, tol):
        ''' Check that a tuple of non-negative weights sums to 1 within a tolerance. '''
        total = sum(values)
        if abs(total - 1.) > tol:
            raise ValidationError(key, f'weights sum to {total!r}, must sum to 1')
        return values

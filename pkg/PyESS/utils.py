# -*- coding: utf-8 -*-

''' Definition of generic utility functions used in other modules '''

import os
import sys
import math
import json
import hashlib
import logging
from decimal import Decimal, ROUND_HALF_UP
import colorlog
from boltons.strutils import cardinalize

# Package logger
log_layout = '%(asctime)s %(levelname)s %(message)s'
log_datefmt = '%d/%m/%Y %H:%M:%S:'

my_log_formatter = colorlog.ColoredFormatter(
    f'%(log_color)s {log_layout}',
    datefmt=log_datefmt,
    reset=True,
    log_colors={
        'DEBUG': 'green',
        'INFO': 'white',
        'WARNING': 'yellow',
        'ERROR': 'red',
        'CRITICAL': 'red,bg_white',
    },
    style='%')

plain_log_formatter = logging.Formatter(f' {log_layout}', datefmt=log_datefmt, style='%')


def isColorDisabled():
    ''' Terminal styling is disabled by any non-empty ESS_NO_COLOR value. '''
    return bool(os.environ.get('ESS_NO_COLOR'))


def setHandler(logger, handler):
    for h in logger.handlers:
        logger.removeHandler(h)
    logger.addHandler(handler)
    return logger


def setLogger(name, formatter):
    handler = colorlog.StreamHandler()
    if isColorDisabled():
        formatter = plain_log_formatter
    handler.setFormatter(formatter)
    handler.stream = sys.stderr
    logger = colorlog.getLogger(name)
    setHandler(logger, handler)
    logger.propagate = False
    return logger


logger = setLogger('PyESS', my_log_formatter)
logger.setLevel(logging.INFO)

DATA_DIR = os.path.abspath(os.path.join(os.path.split(__file__)[0], 'data'))


def countStr(n, word):
    ''' Return a count followed by the singular or plural form of a word. '''
    return f'{n} {cardinalize(word, n)}'


def isIterable(x):
    return isinstance(x, (list, tuple))


def isWithin(name, val, bounds, rel_tol=1e-9, raise_warning=True):
    ''' Check if a floating point number is within an interval.

        If the value falls outside the interval, an error is raised.

        If the value falls just outside the interval due to rounding errors,
        the associated interval bound is returned.

        :param val: float value
        :param bounds: interval bounds (float tuple)
        :return: original or corrected value
    '''
    if isIterable(val):
        return type(val)(isWithin(name, v, bounds, rel_tol, raise_warning) for v in val)
    if val >= bounds[0] and val <= bounds[1]:
        return val
    elif val < bounds[0] and math.isclose(val, bounds[0], rel_tol=rel_tol):
        if raise_warning:
            logger.warning(
                'Rounding %s value (%s) to interval lower bound (%s)', name, val, bounds[0])
        return bounds[0]
    elif val > bounds[1] and math.isclose(val, bounds[1], rel_tol=rel_tol):
        if raise_warning:
            logger.warning(
                'Rounding %s value (%s) to interval upper bound (%s)', name, val, bounds[1])
        return bounds[1]
    else:
        raise ValueError(f'{name} value ({val}) out of [{bounds[0]}, {bounds[1]}] interval')


def clip(x, bounds):
    ''' Clip a scalar to a closed interval. '''
    return min(max(x, bounds[0]), bounds[1])


def roundHalfUp(x, ndigits):
    ''' Round a float half-up (away from zero on ties) at a given number of decimals.

        The decimal expansion is taken from the shortest float representation,
        so that e.g. 2.865 rounds to 2.87 on every platform.

        :param x: float value
        :param ndigits: number of decimals
        :return: rounded Decimal
    '''
    quantum = Decimal(1).scaleb(-ndigits)
    return Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_HALF_UP)


def fixedStr(x, ndigits):
    ''' Locale-independent fixed-point string of a half-up rounded value. '''
    return str(roundHalfUp(x, ndigits))


def ratingStr(x, ndigits=2):
    ''' Integral ratings are displayed without decimals, others as fixed-point. '''
    if float(x).is_integer():
        return str(int(x))
    return fixedStr(x, ndigits)


def canonicalJSON(obj):
    ''' Key-sorted, whitespace-free JSON encoding used for digests. '''
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=True)


def digest(obj):
    ''' SHA-256 hex digest of the canonical JSON encoding of an object. '''
    return hashlib.sha256(canonicalJSON(obj).encode('utf-8')).hexdigest()


def pairwise(iterable):
    ''' s -> (s0,s1), (s1,s2), (s2, s3), ... '''
    items = list(iterable)
    return list(zip(items[:-1], items[1:]))

# -*- coding: utf-8 -*-

''' Import the core classes, generic utilities and constants. '''

__version__ = '1.0'

from .core import *
from .utils import *
from .constants import *
from .report import *
from .parsers import *

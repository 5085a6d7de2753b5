# -*- coding: utf-8 -*-

from .paramobj import *
from .batches import *
from .catalog import *
from .scoring import *
from .selection import *
from .recommendation import *
from .provenance import *
from .sensitivity import *
from .engine import *

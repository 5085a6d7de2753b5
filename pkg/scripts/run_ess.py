# -*- coding: utf-8 -*-

''' Evaluate a catalog of XAI techniques under a usage scenario. '''

import sys

from PyESS.cli import main


if __name__ == '__main__':
    sys.exit(main())

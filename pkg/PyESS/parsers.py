# -*- coding: utf-8 -*-

''' Command line parsers, assembled from reusable argument blocks. '''

import logging
from argparse import ArgumentParser

from .core.selection import RoundingMode
from .core.sensitivity import SweepParameter
from .core.scoring import getScenariosDict
from .report import OutputFormat
from .constants import DEFAULT_MODALITY


class Parser(ArgumentParser):
    ''' Generic parser interface. '''

    def __init__(self, prog=None, description=None):
        super().__init__(prog=prog, description=description)
        self.defaults = {}
        self.allowed = {}
        self.to_parse = {}
        self.addVerbose()

    def addVerbose(self):
        self.add_argument(
            '-v', '--verbose', default=False, action='store_true', help='Increase verbosity')
        self.to_parse['loglevel'] = self.parseLogLevel

    def addMPI(self):
        self.add_argument(
            '--mpi', default=False, action='store_true', help='Use multiprocessing')

    def addCatalog(self):
        self.defaults['catalog'] = 'builtin'
        self.add_argument(
            '--catalog', type=str,
            help='Catalog document path, or "builtin" for the built-in catalog (default)')

    def addScenario(self):
        self.defaults['scenario'] = 'substitution'
        self.add_argument(
            '--scenario', type=str,
            help=('Scenario document path, or name of a built-in scenario: '
                  f'{", ".join(getScenariosDict().keys())} (default: substitution)'))

    def addModality(self):
        self.defaults['modality'] = DEFAULT_MODALITY
        self.add_argument(
            '--modality', type=str, help=f'Data modality filter (default: {DEFAULT_MODALITY})')

    def addRounding(self):
        self.defaults['rounding'] = RoundingMode.FULL.value
        self.allowed['rounding'] = [x.value for x in RoundingMode]
        self.add_argument(
            '--rounding', type=str, choices=self.allowed['rounding'],
            help='Efficiency ratio arithmetic: "paper" (published tables) or "full" (default)')
        self.to_parse['rounding'] = self.parseRounding

    def addFormat(self):
        self.defaults['format'] = OutputFormat.TABLE.value
        self.allowed['format'] = [x.value for x in OutputFormat]
        self.add_argument(
            '--format', type=str, choices=self.allowed['format'],
            help='Output format (default: table)')
        self.to_parse['format'] = self.parseFormat

    def addOut(self):
        self.add_argument(
            '--out', type=str, default=None, help='Output file path (default: standard output)')

    def addProvenance(self):
        self.add_argument(
            '--provenance', default=False, action='store_true',
            help='Append the provenance trail to table output')

    def addTimestamps(self):
        self.add_argument(
            '--timestamps', default=False, action='store_true',
            help='Timestamp provenance records (output no longer reproducible)')

    def addRawScores(self):
        self.add_argument(
            '--raw', default=False, action='store_true',
            help='Show raw axis scores next to adjusted ones')

    def addBudgetOverrides(self):
        self.add_argument(
            '--budget-ms', dest='budget_ms', type=float, default=None,
            help='End-to-end latency budget override (ms)')
        self.add_argument(
            '--reserved-ms', dest='reserved_ms', type=float, default=None,
            help='Reserved non-explanation overhead override (ms)')
        self.add_argument(
            '--fit-fraction', dest='fit_fraction', type=float, default=None,
            help='Override of the explanation budget fraction considered a clear fit')

    def addSweep(self):
        self.allowed['param'] = [x.value for x in SweepParameter]
        self.add_argument(
            '--param', type=str, required=True, choices=self.allowed['param'],
            help='Swept parameter')
        self.add_argument(
            '--from', dest='start', type=float, required=True, help='Sweep lower bound')
        self.add_argument(
            '--to', dest='stop', type=float, required=True, help='Sweep upper bound')
        self.add_argument(
            '--step', type=float, default=0.05, help='Sweep step (default: 0.05)')
        self.to_parse['step'] = self.parseStep

    def parseLogLevel(self, args):
        return logging.DEBUG if args.pop('verbose') else logging.INFO

    def parseRounding(self, args):
        return RoundingMode(args['rounding'])

    def parseFormat(self, args):
        return OutputFormat(args['format'])

    def parseStep(self, args):
        if not args['step'] > 0:
            self.error(f'argument --step: must be strictly positive (got {args["step"]})')
        if args['start'] > args['stop']:
            self.error(f'argument --to: {args["stop"]} lower than --from {args["start"]}')
        return args['step']

    def parse(self, argv=None):
        args = vars(super().parse_args(argv))
        for k, v in self.defaults.items():
            if k in args and args[k] is None:
                args[k] = v
        for k, parse_method in self.to_parse.items():
            args[k] = parse_method(args)
        return args


class TestParser(Parser):
    def __init__(self, valid_subsets):
        super().__init__()
        self.addProfiling()
        self.addSubset(valid_subsets)

    def addProfiling(self):
        self.add_argument(
            '--profile', default=False, action='store_true', help='Run with profiling')

    def addSubset(self, choices):
        self.add_argument(
            '--subset', type=str, nargs='+', default=['all'], choices=choices + ['all'],
            help='Run specific subset(s)')
        self.subset_choices = choices
        self.to_parse['subset'] = self.parseSubset

    def parseSubset(self, args):
        if args['subset'] == ['all']:
            return self.subset_choices
        else:
            return args['subset']


class InvocationParser(Parser):
    ''' Generic parser of an engine invocation: inputs, filter, arithmetic and output. '''

    command = None
    description = None

    def __init__(self):
        super().__init__(prog=f'ess {self.command}', description=self.description)
        self.addCatalog()
        self.addScenario()
        self.addModality()
        self.addRounding()
        self.addFormat()
        self.addOut()


class ValidateParser(InvocationParser):
    command = 'validate'
    description = 'Load and validate a catalog and a scenario.'


class ScoreParser(InvocationParser):
    command = 'score'
    description = 'Compute final ESS coordinates and qualitative levels.'

    def __init__(self):
        super().__init__()
        self.addRawScores()
        self.addProvenance()
        self.addTimestamps()


class SelectParser(InvocationParser):
    command = 'select'
    description = 'Compute utilities, resource costs, efficiency ratios and feasibility.'

    def __init__(self):
        super().__init__()
        self.addProvenance()
        self.addTimestamps()


class RecommendParser(InvocationParser):
    command = 'recommend'
    description = 'Synthesize the three-tier hybrid recommendation.'

    def __init__(self):
        super().__init__()
        self.addBudgetOverrides()
        self.addProvenance()
        self.addTimestamps()


class SweepParser(InvocationParser):
    command = 'sweep'
    description = 'Sweep one parameter over a grid and report ranking stability.'

    def __init__(self):
        super().__init__()
        self.addSweep()
        self.addMPI()


def getParsersDict():
    ''' Subcommand parser classes, indexed by command name. '''
    return {p.command: p for p in [
        ValidateParser, ScoreParser, SelectParser, RecommendParser, SweepParser]}

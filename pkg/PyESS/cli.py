# -*- coding: utf-8 -*-

''' Command line entry point: validate, score, select, recommend and sweep.

    Exit status: 0 on success, 1 on validation or domain failure, 2 on usage,
    I/O or parse failure.
'''

import os
import sys

from .core.paramobj import ValidationError, ParseError, EngineError
from .core.catalog import builtinPaperCatalog, loadCatalogFile, filterApplicable
from .core.scoring import getScenariosDict, getScenario, loadScenarioFile
from .core.engine import runPipeline
from .core.sensitivity import SweepSpec, sweep
from .parsers import getParsersDict
from .report import OutputFormat, renderScores, renderSelection, renderPlan, \
    renderProvenance, renderSweep, renderDocument
from .utils import logger, countStr

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


def loadCatalogArg(source):
    if source == 'builtin':
        return builtinPaperCatalog()
    return loadCatalogFile(source)


def loadScenarioArg(source):
    if source in getScenariosDict() and not os.path.isfile(source):
        return getScenario(source)
    return loadScenarioFile(source)


def writeOutput(text, fpath=None):
    ''' Write a rendered document to a file, or to standard output. '''
    if fpath is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(fpath, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
        logger.info('output written to "%s"', fpath)


def appendProvenance(text, run, args):
    if not args['provenance']:
        return text
    if args['format'] is OutputFormat.TABLE:
        return text + '\n' + renderProvenance(run.trail, OutputFormat.TABLE)
    logger.warning('provenance trail only appended to table output')
    return text


def runFromArgs(args, ctx=None):
    catalog = loadCatalogArg(args['catalog'])
    if ctx is None:
        ctx = loadScenarioArg(args['scenario'])
    return runPipeline(
        catalog, ctx, modality=args['modality'], mode=args['rounding'],
        timestamps=args.get('timestamps', False))


def cmdValidate(args):
    ''' Load and validate the catalog and scenario, and print findings. '''
    catalog = loadCatalogArg(args['catalog'])
    ctx = loadScenarioArg(args['scenario'])
    applicable = filterApplicable(catalog, args['modality'])
    lines = [
        f'catalog {args["catalog"]}: valid, {countStr(len(catalog), "technique")} '
        f'({len(applicable)} applicable to "{args["modality"]}" data)',
        f'scenario {args["scenario"]}: valid ("{ctx.name}", explanation budget '
        f'{ctx.explanation_budget_ms:g} ms, fit threshold {ctx.fit_threshold_ms:g} ms)'
    ]
    if len(applicable) == 0:
        lines.append(f'warning: no technique applicable to "{args["modality"]}" data')
    writeOutput('\n'.join(lines) + '\n', args['out'])
    return EXIT_OK


def cmdScore(args):
    ''' Final ESS coordinates with qualitative levels. '''
    run = runFromArgs(args)
    if args['format'] is OutputFormat.MACHINE:
        text = renderDocument(run)
    else:
        text = renderScores(run.scores, args['format'], catalog=run.catalog, raw=args['raw'])
    writeOutput(appendProvenance(text, run, args), args['out'])
    return EXIT_OK


def cmdSelect(args):
    ''' Multi-objective selection table. '''
    run = runFromArgs(args)
    if args['format'] is OutputFormat.MACHINE:
        text = renderDocument(run)
    else:
        text = renderSelection(
            run.selection, run.mode, args['format'], catalog=run.catalog, ctx=run.scenario)
    writeOutput(appendProvenance(text, run, args), args['out'])
    return EXIT_OK


def cmdRecommend(args):
    ''' Three-tier recommendation, with optional latency budget overrides. '''
    ctx = loadScenarioArg(args['scenario'])
    overrides = {k: args[a] for k, a in [
        ('latency_budget_ms', 'budget_ms'),
        ('reserved_overhead_ms', 'reserved_ms'),
        ('fit_fraction', 'fit_fraction')] if args[a] is not None}
    if len(overrides) > 0:
        ctx = ctx.updated(**overrides)
        logger.debug('scenario overrides: %s', overrides)
    run = runFromArgs(args, ctx=ctx)
    if args['format'] is OutputFormat.MACHINE:
        text = renderDocument(run)
    else:
        text = renderPlan(run.plan, args['format'], catalog=run.catalog)
    writeOutput(appendProvenance(text, run, args), args['out'])
    return EXIT_OK


def cmdSweep(args):
    ''' One-parameter sensitivity sweep. '''
    catalog = filterApplicable(loadCatalogArg(args['catalog']), args['modality'])
    ctx = loadScenarioArg(args['scenario'])
    spec = SweepSpec(args['param'], args['start'], args['stop'], args['step'])
    report = sweep(catalog, ctx, spec, mode=args['rounding'], mpi=args['mpi'])
    writeOutput(renderSweep(report, args['format'], catalog=catalog), args['out'])
    return EXIT_OK


def getCommandsDict():
    return {
        'validate': cmdValidate,
        'score': cmdScore,
        'select': cmdSelect,
        'recommend': cmdRecommend,
        'sweep': cmdSweep
    }


def usage():
    return f'usage: ess {{{",".join(getCommandsDict().keys())}}} [options]\n'


def main(argv=None):
    ''' Parse a command line, run the corresponding command and return its exit status. '''
    argv = sys.argv[1:] if argv is None else list(argv)
    commands = getCommandsDict()
    if len(argv) == 0 or argv[0] in ('-h', '--help'):
        sys.stdout.write(usage())
        return EXIT_OK if len(argv) > 0 else EXIT_USAGE
    cmd, argv = argv[0], argv[1:]
    if cmd not in commands:
        sys.stderr.write(usage())
        sys.stderr.write(f'ess: error: unknown command "{cmd}"\n')
        return EXIT_USAGE

    parser = getParsersDict()[cmd]()
    try:
        args = parser.parse(argv)
    except SystemExit as err:
        return err.code
    logger.setLevel(args['loglevel'])

    try:
        return commands[cmd](args)
    except (ValidationError, EngineError) as err:
        logger.error(err)
        return EXIT_INVALID
    except ParseError as err:
        logger.error(err)
        return EXIT_USAGE
    except OSError as err:
        logger.error(err)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())

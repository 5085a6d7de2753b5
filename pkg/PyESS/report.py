# -*- coding: utf-8 -*-

''' Rendering of catalogs, scores, selection results, tier plans, sweeps and provenance
    trails as aligned text, CSV or machine-readable (JSON) documents.

    Values are rounded half-up at render time only, with "." as decimal point
    whatever the locale. Machine documents carry full-precision values next to
    their rendered strings.
'''

import io
import csv
import json
from enum import Enum
import numpy as np
import pandas as pd
from tabulate import tabulate

from . import __version__
from .core.paramobj import EngineError, ValidationError
from .core.catalog import catalogToDict, catalogFromDict, parseJSON
from .core.scoring import EssCoordinates, scenarioToDict, scenarioFromDict, discretise
from .core.selection import RoundingMode, SelectionResult
from .core.recommendation import TIER_TITLES, EVIDENCE_LABELS, TierPlan
from .core.provenance import ProvenanceTrail
from .constants import PROPERTY_KEYS, SCORE_DECIMALS, RATIO_DECIMALS, DISPUTE_VOLUME_RANGE
from .utils import roundHalfUp, fixedStr, ratingStr, countStr


class OutputFormat(Enum):
    TABLE = 'table'
    CSV = 'csv'
    MACHINE = 'machine'


def scoreStr(x):
    return fixedStr(x, SCORE_DECIMALS)


def ratioStr(x):
    return fixedStr(x, RATIO_DECIMALS)


def evidenceStr(key, value):
    return ratioStr(value) if key == 'efficiency_ratio' else scoreStr(value)


def displayNames(catalog):
    return catalog.names() if catalog is not None else {}


def textTable(frame, colalign):
    ''' Aligned plain-text table from a frame of pre-formatted cells. '''
    return tabulate(
        frame.values.tolist(), headers=list(frame.columns), tablefmt='simple',
        disable_numparse=True, colalign=colalign) + '\n'


def csvTable(frame):
    ''' CSV document: header row, quoted strings, unquoted numbers, "\\n" line endings. '''
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator='\n')
    writer.writerow(list(frame.columns))
    for row in frame.itertuples(index=False):
        writer.writerow([x.item() if isinstance(x, np.generic) else x for x in row])
    return buf.getvalue()


def machineStr(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + '\n'


def checkNotEmpty(items, what):
    if len(items) == 0:
        raise EngineError(f'no {what} to render')


# -------------------------- Catalog --------------------------

def catalogFrame(catalog, text=True):
    rows = []
    for t in catalog:
        ratings = [t.properties[k] for k in PROPERTY_KEYS]
        if text:
            ratings = [f'{ratingStr(x)} ({discretise(x).value[0]})' for x in ratings]
        if t.latency.is_online:
            latency = f'{ratingStr(t.latency.estimate_ms)} ms' if text else t.latency.estimate_ms
        else:
            latency = 'offline only' if text else ''
        rows.append([t.id, t.name, t.family, ' '.join(t.modalities), *ratings, latency])
    return pd.DataFrame(rows, columns=[
        'id', 'name', 'family', 'modalities', *PROPERTY_KEYS, 'latency_ms'])


def renderCatalog(catalog, fmt=OutputFormat.MACHINE):
    ''' Render a catalog. The machine format is the catalog document format itself,
        and loads back into an equal catalog.

        Text ratings are followed by their qualitative band initial (L, M, H).
    '''
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.MACHINE:
        return machineStr(catalogToDict(catalog))
    checkNotEmpty(catalog, 'techniques')
    if fmt is OutputFormat.CSV:
        return csvTable(catalogFrame(catalog, text=False))
    frame = catalogFrame(catalog)
    frame.columns = ['Id', 'Technique', 'Family', 'Modalities'] + [
        v['label'] for v in catalog[0].properties.inputs().values()] + ['Latency']
    return textTable(frame, ('left',) * 4 + ('right',) * (len(PROPERTY_KEYS) + 1))


# -------------------------- Scores --------------------------

def scoresFrame(scores, catalog=None, raw=False, text=True):
    ''' One row per technique: identifier, (raw coordinates,) adjusted coordinates and
        qualitative levels, in score order.
    '''
    names = displayNames(catalog)
    fmt = scoreStr if text else (lambda x: roundHalfUp(x, SCORE_DECIMALS))
    columns = ['technique']
    if raw:
        columns += ['c_raw', 'u_raw', 'd_raw']
    columns += ['c_prime', 'c_level', 'u_prime', 'u_level', 'd_prime', 'd_level']
    rows = []
    for s in scores:
        row = [names.get(s.technique_id, s.technique_id) if text else s.technique_id]
        if raw:
            row += [fmt(x) for x in s.raw]
        for x, level in zip(s.adjusted, s.levels):
            row += [fmt(x), level.value]
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def renderScores(scores, fmt=OutputFormat.TABLE, catalog=None, raw=False):
    ''' Render final ESS coordinates with their qualitative levels.

        :param scores: non-empty list of EssCoordinates
        :param fmt: OutputFormat
        :param catalog: optional catalog providing technique display names
        :param raw: whether to include raw (unadjusted) coordinates
        :return: rendered document
    '''
    fmt = OutputFormat(fmt)
    checkNotEmpty(scores, 'scores')
    if fmt is OutputFormat.MACHINE:
        return machineStr({'scores': [scoreRecord(s) for s in scores]})
    if fmt is OutputFormat.CSV:
        return csvTable(scoresFrame(scores, raw=raw, text=False))
    frame = scoresFrame(scores, catalog=catalog, raw=raw)
    headers = ['Technique'] + (['C', 'U', 'D'] if raw else []) + [
        "C'", 'Level', "U'", 'Level', "D'", 'Level']
    frame.columns = headers
    colalign = ['left'] + ['right'] * (3 if raw else 0) + ['right', 'left'] * 3
    return textTable(frame, tuple(colalign))


def scoreRecord(s):
    d = s.todict()
    d['rendered'] = {
        'raw': [scoreStr(x) for x in s.raw],
        'adjusted': [scoreStr(x) for x in s.adjusted]
    }
    return d


# -------------------------- Selection --------------------------

def selectionFrame(results, catalog=None, text=True):
    names = displayNames(catalog)
    rows = []
    for r in results:
        if text:
            rows.append([
                names.get(r.technique_id, r.technique_id), scoreStr(r.utility),
                scoreStr(r.resource_cost), ratioStr(r.efficiency_ratio),
                ratingStr(r.efficiency), r.feasibility.glyph])
        else:
            rows.append([
                r.technique_id, roundHalfUp(r.utility, SCORE_DECIMALS),
                roundHalfUp(r.resource_cost, SCORE_DECIMALS),
                roundHalfUp(r.efficiency_ratio, RATIO_DECIMALS),
                roundHalfUp(r.efficiency, SCORE_DECIMALS), r.feasibility.value,
                'yes' if r.on_pareto_frontier else 'no'])
    columns = ['technique', 'utility', 'resource_cost', 'efficiency_ratio', 'efficiency',
               'feasibility']
    if not text:
        columns.append('pareto')
    return pd.DataFrame(rows, columns=columns)


def selectionFooter(results, mode, catalog=None, ctx=None):
    names = displayNames(catalog)
    frontier = [names.get(r.technique_id, r.technique_id) for r in results
                if r.on_pareto_frontier]
    lines = [
        f'Pareto frontier: {", ".join(frontier)}',
        f'Rounding: {RoundingMode(mode).value}'
    ]
    if ctx is not None:
        lines.append(
            f'Feasibility: ✓ <= {ratingStr(ctx.fit_threshold_ms)} ms, '
            f'≈ <= {ratingStr(ctx.explanation_budget_ms)} ms, × beyond or offline only '
            '(thresholds reconstructed from qualitative runtime estimates)')
    return '\n'.join(lines) + '\n'


def renderSelection(results, mode=RoundingMode.FULL, fmt=OutputFormat.TABLE, catalog=None,
                    ctx=None):
    ''' Render multi-objective selection results.

        :param results: non-empty list of SelectionResult
        :param mode: RoundingMode used to compute efficiency ratios
        :param fmt: OutputFormat
        :param catalog: optional catalog providing technique display names
        :param ctx: optional ScenarioContext, to document latency thresholds
        :return: rendered document
    '''
    fmt = OutputFormat(fmt)
    checkNotEmpty(results, 'selection results')
    if fmt is OutputFormat.MACHINE:
        return machineStr({
            'rounding': RoundingMode(mode).value,
            'selection': [selectionRecord(r) for r in results]})
    if fmt is OutputFormat.CSV:
        return csvTable(selectionFrame(results, text=False))
    frame = selectionFrame(results, catalog=catalog)
    frame.columns = ['Technique', 'U', 'R', 'U/R', 'Eff.', 'RT']
    table = textTable(frame, ('left', 'right', 'right', 'right', 'right', 'center'))
    return table + '\n' + selectionFooter(results, mode, catalog, ctx)


def selectionRecord(r):
    d = r.todict()
    d['rendered'] = {
        'utility': scoreStr(r.utility),
        'resource_cost': scoreStr(r.resource_cost),
        'efficiency_ratio': ratioStr(r.efficiency_ratio)
    }
    return d


# -------------------------- Tier plan --------------------------

def tierWarnings(plan, tier):
    return [w for w in plan.warnings if w.startswith(f'Tier {tier} ')]


def pickRationale(tier, pick):
    rationale = pick.rationale
    if tier == 2:
        lo, hi = DISPUTE_VOLUME_RANGE
        rationale += f' (expected volume: {lo:.0%}-{hi:.0%} of blocked transactions)'
    return rationale


def renderPlan(plan, fmt=OutputFormat.TABLE, catalog=None):
    ''' Render a tier plan: one section per tier with the selected technique, its
        numeric justification and the tier warnings. Empty tiers show their warning.
    '''
    fmt = OutputFormat(fmt)
    names = displayNames(catalog)
    if fmt is OutputFormat.MACHINE:
        return machineStr({'plan': planRecord(plan)})
    if fmt is OutputFormat.CSV:
        rows = []
        for tier, pick in plan.tiers.items():
            warnings = '; '.join(tierWarnings(plan, tier))
            if pick is None:
                rows.append([tier, TIER_TITLES[tier], '', '', '', '', '', warnings])
            else:
                rows.append([
                    tier, TIER_TITLES[tier], pick.technique_id, pick.evidence_key,
                    roundHalfUp(pick.evidence_value, RATIO_DECIMALS if
                                pick.evidence_key == 'efficiency_ratio' else SCORE_DECIMALS),
                    pick.feasibility.value, pickRationale(tier, pick), warnings])
        return csvTable(pd.DataFrame(rows, columns=[
            'tier', 'title', 'technique', 'evidence', 'value', 'feasibility', 'rationale',
            'warnings']))
    sections = []
    for tier, pick in plan.tiers.items():
        lines = [f'Tier {tier} - {TIER_TITLES[tier]}']
        if pick is None:
            lines.append('  (empty)')
        else:
            name = names.get(pick.technique_id, pick.technique_id)
            evidence = evidenceStr(pick.evidence_key, pick.evidence_value)
            lines.append(
                f'  {name} ({EVIDENCE_LABELS[pick.evidence_key]} {evidence}, '
                f'{pick.feasibility.glyph})')
            lines.append(f'  {pickRationale(tier, pick)}')
        lines += [f'  warning: {w}' for w in tierWarnings(plan, tier)]
        sections.append('\n'.join(lines))
    return '\n\n'.join(sections) + '\n'


def planRecord(plan):
    d = plan.todict()
    d['rendered'] = {
        str(tier): evidenceStr(pick.evidence_key, pick.evidence_value)
        for tier, pick in plan.tiers.items() if pick is not None}
    return d


# -------------------------- Provenance --------------------------

def renderProvenance(trail, fmt=OutputFormat.TABLE):
    ''' Render a provenance trail, stages in pipeline order. '''
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.MACHINE:
        return machineStr({'provenance': trail.todict()})
    canonical = lambda x: json.dumps(x, sort_keys=True, ensure_ascii=False)
    rows = [[rec.stage, rec.inputs_digest, canonical(rec.parameters), canonical(rec.outputs)]
            for rec in trail]
    frame = pd.DataFrame(rows, columns=['stage', 'inputs_digest', 'parameters', 'outputs'])
    if fmt is OutputFormat.CSV:
        return csvTable(frame)
    frame = frame[['stage', 'inputs_digest', 'parameters']]
    frame.columns = ['Stage', 'Inputs digest (sha256)', 'Parameters']
    return textTable(frame, ('left', 'left', 'left'))


# -------------------------- Sweep --------------------------

def sweepFrame(report, catalog=None, text=True):
    names = displayNames(catalog)
    label = (lambda tid: names.get(tid, tid)) if text else (lambda tid: tid)
    rows = []
    for i, p in enumerate(report.points):
        tau = report.stability[i - 1] if i > 0 else None
        if p.valid:
            tiers = [label(pick.technique_id) if pick is not None else '-'
                     for pick in p.plan.tiers.values()]
            ranking = ' > '.join(label(tid) for tid in p.ranking_ratio)
        else:
            tiers = ['-'] * 3
            ranking = f'invalid: {p.error}'
        if text:
            value = fixedStr(p.value, 4)
            tau = fixedStr(tau, 3) if tau is not None else '-'
        else:
            value = p.value
            tau = tau if tau is not None else ''
        rows.append([value, ranking, *tiers, tau])
    return pd.DataFrame(rows, columns=[
        'value', 'ratio_ranking', 'tier1', 'tier2', 'tier3', 'tau_previous'])


def renderSweep(report, fmt=OutputFormat.TABLE, catalog=None):
    ''' Render a sensitivity sweep: rankings and tier plans at every grid point, rank
        stability with respect to the previous point and tier-plan change points.
    '''
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.MACHINE:
        return machineStr(report.todict())
    if fmt is OutputFormat.CSV:
        return csvTable(sweepFrame(report, text=False))
    frame = sweepFrame(report, catalog=catalog)
    frame.columns = [report.spec.parameter.value, 'Ranking by U/R', 'Tier 1', 'Tier 2',
                     'Tier 3', 'tau-b']
    table = textTable(frame, ('right', 'left', 'left', 'left', 'left', 'right'))
    if len(report.change_points) > 0:
        changes = ', '.join(fixedStr(x, 4) for x in report.change_points)
    else:
        changes = 'none'
    n_invalid = sum(not p.valid for p in report.points)
    footer = [
        f'{countStr(len(report.points), "grid point")}, {n_invalid} invalid',
        f'Tier plan changes at: {changes}',
        'Stability: Kendall tau-b between consecutive efficiency-ratio rankings '
        '(metric chosen by this tool)'
    ]
    return table + '\n' + '\n'.join(footer) + '\n'


# -------------------------- Full document --------------------------

def documentDict(run):
    return {
        'catalog': catalogToDict(run.catalog),
        'scenario': scenarioToDict(run.scenario),
        'scores': [scoreRecord(s) for s in run.scores],
        'selection': {
            'rounding': run.mode.value,
            'results': [selectionRecord(r) for r in run.selection]
        },
        'plan': planRecord(run.plan),
        'provenance': run.trail.todict(),
        'engine_version': __version__
    }


def renderDocument(run):
    ''' Machine document of a full pipeline run (EngineRun). '''
    return machineStr(documentDict(run))


def loadDocument(source):
    ''' Parse a machine document back into domain objects.

        :param source: JSON text or readable text stream
        :return: dictionary with catalog, scenario, scores, selection, rounding, plan,
            provenance and engine_version entries
    '''
    doc = parseJSON(source, 'machine')
    try:
        return {
            'catalog': catalogFromDict(doc['catalog']),
            'scenario': scenarioFromDict(doc['scenario']),
            'scores': [EssCoordinates.fromdict(d) for d in doc['scores']],
            'selection': [SelectionResult.fromdict(d) for d in doc['selection']['results']],
            'rounding': RoundingMode(doc['selection']['rounding']),
            'plan': TierPlan.fromdict(doc['plan']),
            'provenance': ProvenanceTrail.fromdict(doc['provenance']),
            'engine_version': doc['engine_version']
        }
    except (KeyError, TypeError) as err:
        raise ValidationError('document', f'incomplete machine document ({err})')

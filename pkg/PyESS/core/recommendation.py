# -*- coding: utf-8 -*-

''' Three-tier hybrid recommendation: always-on, selective and periodic slots. '''

from dataclasses import dataclass

from .paramobj import EngineError
from .selection import FeasibilityClass
from ..utils import logger


TIER_TITLES = {
    1: 'Always-on (real-time pipeline)',
    2: 'Selective (dispute and analyst review pipeline)',
    3: 'Periodic (offline compliance and governance)'
}

EVIDENCE_LABELS = {
    'efficiency_ratio': 'U/R',
    'u_prime': "U'",
    'c_prime': "C'"
}


@dataclass(frozen=True)
class TierPick:
    ''' Technique assigned to a tier, with the numeric evidence behind the choice. '''
    technique_id: str
    evidence_key: str
    evidence_value: float
    utility: float
    feasibility: FeasibilityClass
    rationale: str

    def todict(self):
        return {
            'technique_id': self.technique_id,
            'evidence_key': self.evidence_key,
            'evidence_value': self.evidence_value,
            'utility': self.utility,
            'feasibility': self.feasibility.value,
            'rationale': self.rationale
        }

    @classmethod
    def fromdict(cls, d):
        return cls(
            d['technique_id'], d['evidence_key'], d['evidence_value'], d['utility'],
            FeasibilityClass(d['feasibility']), d['rationale'])


@dataclass(frozen=True)
class TierPlan:
    tier1_always_on: TierPick = None
    tier2_selective: TierPick = None
    tier3_periodic: TierPick = None
    warnings: tuple = ()

    @property
    def tiers(self):
        return {1: self.tier1_always_on, 2: self.tier2_selective, 3: self.tier3_periodic}

    @property
    def picks(self):
        return tuple(p.technique_id for p in self.tiers.values() if p is not None)

    def todict(self):
        d = {}
        for key, pick in zip(
                ['tier1_always_on', 'tier2_selective', 'tier3_periodic'], self.tiers.values()):
            d[key] = pick.todict() if pick is not None else None
        d['warnings'] = list(self.warnings)
        return d

    @classmethod
    def fromdict(cls, d):
        picks = [TierPick.fromdict(d[k]) if d[k] is not None else None
                 for k in ['tier1_always_on', 'tier2_selective', 'tier3_periodic']]
        return cls(*picks, warnings=tuple(d['warnings']))


def argmaxPick(candidates, evidence, evidence_key, rationale):
    ''' Best candidate by descending evidence, then utility, then ascending identifier. '''
    if len(candidates) == 0:
        return None
    best = sorted(candidates, key=lambda r: (-evidence[r.technique_id], -r.utility,
                                             r.technique_id))[0]
    return TierPick(best.technique_id, evidence_key, evidence[best.technique_id],
                    best.utility, best.feasibility, rationale)


def synthesizeTiers(scores, selection):
    ''' Assign complementary techniques to the always-on, selective and periodic tiers.

        - Tier 1: highest efficiency ratio among techniques that fit the latency budget.
        - Tier 2: highest U' among fitting or marginal techniques, Tier 1 pick excluded.
        - Tier 3: highest C' among all techniques, Tier 1-2 picks excluded.

        Ties are broken by utility (descending), then identifier. Unfillable tiers are
        left empty with a warning.

        :param scores: list of EssCoordinates
        :param selection: list of SelectionResult covering the same techniques
        :return: TierPlan
    '''
    if len(scores) == 0 or len(selection) == 0:
        raise EngineError('cannot synthesize a recommendation without techniques')
    score_ids = {s.technique_id for s in scores}
    if score_ids != {r.technique_id for r in selection} or len(score_ids) != len(selection):
        raise ValueError('scores and selection results must cover the same techniques')
    adjusted = {s.technique_id: s.adjusted for s in scores}
    warnings = []

    # Tier 1: always-on
    fits = [r for r in selection if r.feasibility is FeasibilityClass.FITS]
    tier1 = argmaxPick(
        fits, {r.technique_id: r.efficiency_ratio for r in fits}, 'efficiency_ratio',
        'highest efficiency-adjusted utility among techniques fitting the real-time budget')
    if tier1 is None:
        warnings.append('Tier 1 empty: no technique fits the real-time explanation budget')
    taken = {tier1.technique_id} if tier1 is not None else set()

    # Tier 2: selective
    online = [r for r in selection if r.feasibility is not FeasibilityClass.INFEASIBLE_ONLINE
              and r.technique_id not in taken]
    tier2 = argmaxPick(
        online, {r.technique_id: adjusted[r.technique_id][1] for r in online}, 'u_prime',
        'highest user comprehensibility among techniques runnable online, '
        'triggered for adverse decisions only')
    if tier2 is None:
        warnings.append(
            'Tier 2 empty: no remaining technique runs within the explanation budget')
    else:
        taken.add(tier2.technique_id)
        if tier2.feasibility is FeasibilityClass.MARGINAL:
            warnings.append(
                f'Tier 2 technique {tier2.technique_id} is marginal within the explanation '
                'budget: extending it to every blocking event risks exceeding the latency '
                'budget under peak load')

    # Tier 3: periodic
    remaining = [r for r in selection if r.technique_id not in taken]
    tier3 = argmaxPick(
        remaining, {r.technique_id: adjusted[r.technique_id][0] for r in remaining},
        'c_prime', 'highest compliance value, run offline on a periodic schedule')
    if tier3 is None:
        warnings.append('Tier 3 empty: every technique is already assigned to a tier')
    elif tier3.feasibility is not FeasibilityClass.INFEASIBLE_ONLINE:
        warnings.append(
            f'Tier 3 technique {tier3.technique_id} is not offline-only: no offline-only '
            "technique outranks it on C'")

    for w in warnings:
        logger.debug(w)
    return TierPlan(tier1, tier2, tier3, tuple(warnings))

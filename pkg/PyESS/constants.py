# -*- coding: utf-8 -*-

''' Numerical constants used in the package. '''

# -------------------------- Property ratings --------------------------

RATING_BOUNDS = (1.0, 5.0)  # closed interval of intrinsic property ratings and axis scores
WEIGHT_SUM_TOL = 1e-9       # absolute tolerance on weight sums

PROPERTY_KEYS = (
    'auditability',
    'traceability',
    'comprehensibility',
    'actionability',
    'fidelity',
    'debuggability',
    'efficiency'
)

# Properties aggregated on each ESS axis, in aggregation order
AXIS_PROPERTIES = {
    'compliance': ('auditability', 'traceability'),
    'user': ('comprehensibility', 'actionability'),
    'developer': ('fidelity', 'debuggability', 'efficiency')
}
AXIS_KEYS = tuple(AXIS_PROPERTIES.keys())

# -------------------------- Stakeholder-weighted aggregation --------------------------

DEFAULT_AXIS_WEIGHTS = {
    'auditability': 0.6,
    'traceability': 0.4,
    'comprehensibility': 0.6,
    'actionability': 0.4,
    'fidelity': 0.5,
    'debuggability': 0.4,
    'efficiency': 0.1
}

# -------------------------- Qualitative discretisation --------------------------

LOW_UPPER_EDGE = 2.5     # Low = [1.0, 2.5)
MEDIUM_UPPER_EDGE = 3.5  # Medium = [2.5, 3.5), High = [3.5, 5.0]

# -------------------------- Substitution scenario --------------------------

SUBSTITUTION_GAMMAS = (1.15, 1.10, 1.00)         # (gamma_C, gamma_U, gamma_D)
SUBSTITUTION_LATENCY_BUDGET = 200.               # end-to-end budget (ms)
SUBSTITUTION_RESERVED_OVERHEAD = 100.            # feature engineering + scoring share (ms)
SUBSTITUTION_FIT_FRACTION = 0.8                  # share of explanation budget that "fits"
SUBSTITUTION_SELECTION_WEIGHTS = (0.4, 0.4, 0.2)  # (a_C, a_U, a_D)

# -------------------------- Presentation --------------------------

SCORE_DECIMALS = 2  # axis scores, utility, resource cost
RATIO_DECIMALS = 1  # efficiency-adjusted utility ratio

# Estimated share of blocked transactions entering the dispute pipeline
DISPUTE_VOLUME_RANGE = (0.02, 0.05)

DEFAULT_MODALITY = 'tabular'


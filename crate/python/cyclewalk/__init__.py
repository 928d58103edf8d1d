"""Random transpositions started from an (n-k)-cycle."""

import json

from ._cyclewalk import (
    DEFAULT_SEED,
    CeilingError,
    InvariantError,
    Partition,
    __version__,
    asymptotic_pmf_k1,
    bounds_report_json,
    character_table,
    cycle_character,
    ds_upper_bound,
    exact,
    mn_character,
    moment_k1,
    partitions,
    simulate,
    stationary_measure,
    steps_for_c,
    theorem_envelopes,
    transposition_normalized,
)


def bounds_report(n, k, t=None, c=None, exact=None, samples=None, seed=DEFAULT_SEED):
    """Bounds report as a dict."""
    return json.loads(bounds_report_json(n, k, t=t, c=c, exact=exact, samples=samples, seed=seed))

"""Exact distributions of binary digit-sum differences.

Thin wrapper over the C++ core: the growth recursion for the centered
measures, their stopped-walk trees, the convolution window of the
digit-difference measures, and the odd-integer tail-mass scan.
"""

from ._digitwalk import (
    PlanarTree,
    SpanDist,
    alternating_word,
    bar,
    binary_weight,
    block_count,
    chain_prefix,
    clt_probe,
    convolve,
    empirical_frequency,
    letter_counts,
    limit_iterate,
    mu1_value,
    mu_nonneg_mass,
    mu_value,
    mu_window,
    odd_to_word,
    p_of,
    p_of_word,
    phi,
    point,
    reflect,
    rev,
    sample_stopped,
    scan,
    shift,
    tree_of,
    tree_of_odd,
    word_to_odd,
)

__all__ = [
    "PlanarTree",
    "SpanDist",
    "alternating_word",
    "bar",
    "binary_weight",
    "block_count",
    "chain_prefix",
    "clt_probe",
    "convolve",
    "empirical_frequency",
    "letter_counts",
    "limit_iterate",
    "mu1_value",
    "mu_nonneg_mass",
    "mu_value",
    "mu_window",
    "odd_to_word",
    "p_of",
    "p_of_word",
    "phi",
    "point",
    "reflect",
    "rev",
    "sample_stopped",
    "scan",
    "shift",
    "tree_of",
    "tree_of_odd",
    "word_to_odd",
]

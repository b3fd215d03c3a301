"""Matrix power means, the order region and certified counterexamples."""

from ._powmean import (
    PowmeanError,
    choi_sign_table,
    classify,
    det_coeff_log_euclidean,
    det_coeff_projection,
    det_coeff_rotated,
    dual,
    find_counterexample,
    in_sufficient_region,
    loewner_leq,
    mat_power,
    power_mean,
    verify_lemma,
)

__all__ = [
    "PowmeanError",
    "choi_sign_table",
    "classify",
    "det_coeff_log_euclidean",
    "det_coeff_projection",
    "det_coeff_rotated",
    "dual",
    "find_counterexample",
    "in_sufficient_region",
    "loewner_leq",
    "mat_power",
    "power_mean",
    "verify_lemma",
]

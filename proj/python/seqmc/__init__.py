"""Sequential Monte Carlo p-values with uniformly bounded resampling risk."""

from ._core import (
    BoundaryTable,
    ConfidenceInterval,
    Interval,
    RiskBound,
    RunResult,
    Side,
    SpendingSequence,
    StopTime,
    bootstrap_reference,
    chisq_pvalue,
    confidence_interval,
    expected_stop_time,
    interim_interval,
    lrt_pvalue,
    naive_risk,
    resampling_risk,
    run_bernoulli,
    run_bits,
    wald_lower_bound,
)

__all__ = [
    "BoundaryTable",
    "ConfidenceInterval",
    "Interval",
    "RiskBound",
    "RunResult",
    "Side",
    "SpendingSequence",
    "StopTime",
    "bootstrap_reference",
    "chisq_pvalue",
    "confidence_interval",
    "expected_stop_time",
    "interim_interval",
    "lrt_pvalue",
    "naive_risk",
    "resampling_risk",
    "run_bernoulli",
    "run_bits",
    "wald_lower_bound",
]

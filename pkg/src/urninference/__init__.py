"""Exact inference engine over finite urn models.

Populations and statistical models are finite multisets of values. The
sample space of a size-n draw is itself a finite urn, so p-values,
confidence sets, coverage, and power are all exact proportions: reduced
big-integer rationals, no approximation and no asymptotics. A seeded
Monte Carlo mode exists only to cross-check the exact proportions by
repeated sampling.
"""

from .errors import CapacityError, DomainError
from .families import BinaryFamily, theta_statistic
from .inference import (
    CIPoint,
    ConfidenceSetResult,
    CoverageResult,
    CoverageRow,
    METHOD_COUNTING,
    METHOD_ENUMERATION,
    METHOD_MONTE_CARLO,
    PValueResult,
    PowerResult,
    RandTestResult,
    TailResult,
    confidence_set,
    coverage_urn,
    mc_p_value,
    p_value,
    power,
    randomization_p_value,
)
from .rational import as_rational, proportion, render_decimal
from .sample_space import (
    DEFAULT_ENUM_LIMIT,
    SRS_GENERATOR,
    SampleSpaceView,
    enumerate_compositions,
    enumerate_samples,
    space_size,
    srs_draw,
    srs_stream,
)
from .stats import (
    TestStatistic,
    abs_deviation,
    count_of_value,
    evaluate,
    mean_statistic,
    parse_statistic,
    sum_statistic,
    table_statistic,
)
from .urns import (
    Urn,
    condition,
    event_predicate,
    event_proportion,
    urn_from_json,
    urn_to_json,
    urn_union,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryFamily",
    "CIPoint",
    "CapacityError",
    "ConfidenceSetResult",
    "CoverageResult",
    "CoverageRow",
    "DEFAULT_ENUM_LIMIT",
    "DomainError",
    "METHOD_COUNTING",
    "METHOD_ENUMERATION",
    "METHOD_MONTE_CARLO",
    "PValueResult",
    "PowerResult",
    "RandTestResult",
    "SRS_GENERATOR",
    "SampleSpaceView",
    "TailResult",
    "TestStatistic",
    "Urn",
    "abs_deviation",
    "as_rational",
    "condition",
    "confidence_set",
    "count_of_value",
    "coverage_urn",
    "enumerate_compositions",
    "enumerate_samples",
    "evaluate",
    "event_predicate",
    "event_proportion",
    "mc_p_value",
    "mean_statistic",
    "p_value",
    "parse_statistic",
    "power",
    "proportion",
    "randomization_p_value",
    "render_decimal",
    "space_size",
    "srs_draw",
    "srs_stream",
    "sum_statistic",
    "table_statistic",
    "theta_statistic",
    "urn_from_json",
    "urn_to_json",
    "urn_union",
    "__version__",
]

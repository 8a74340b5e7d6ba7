"""Giant j-component machinery for random k-uniform hypergraphs H^k(n, p)."""

from .combin import (
    CapacityError,
    Params,
    ToleranceSchedule,
    binomial,
    critical_p0,
    default_tolerances,
    rank_subset,
    unrank_subset,
)
from .kernels import backend_name

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Params",
    "ToleranceSchedule",
    "backend_name",
    "binomial",
    "critical_p0",
    "default_tolerances",
    "rank_subset",
    "unrank_subset",
]

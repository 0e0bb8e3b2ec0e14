"""G-rho weighted log-rank tests, the monotone swap chain and interval bounds."""

from .bounds import BoundsResult, IntervalObservation, bounds, extreme_arrangements, validate_intervals
from .chain import (
    Chain,
    SwapStep,
    classify_swap,
    generate_chain,
    initial_arrangement,
    verify_monotone,
)
from .survival import (
    Dataset,
    Group,
    Observation,
    Side,
    Status,
    build_dataset,
    km_at,
    km_estimate,
    risk_tables,
)
from .weighted import GrhoConfig, GrhoResult, components, p_value, z_statistic

__all__ = [
    "BoundsResult",
    "Chain",
    "Dataset",
    "GrhoConfig",
    "GrhoResult",
    "Group",
    "IntervalObservation",
    "Observation",
    "Side",
    "Status",
    "SwapStep",
    "bounds",
    "build_dataset",
    "classify_swap",
    "components",
    "extreme_arrangements",
    "generate_chain",
    "initial_arrangement",
    "km_at",
    "km_estimate",
    "p_value",
    "risk_tables",
    "validate_intervals",
    "verify_monotone",
    "z_statistic",
]

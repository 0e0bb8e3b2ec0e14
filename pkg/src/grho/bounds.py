"""Range of Z over interleavings consistent with interval-valued data.

Each observation is known only to lie in a closed interval, the order within
each group is known, and the statuses are exact. A cross-group pair has a
forced order only when the intervals are strictly separated
(``upper(x) < lower(y)``); touching or overlapping intervals leave the pair
free. Because moving a G1 member earlier past a G0 member never lowers Z, the
maximum puts every free G1 member before its G0 partner and the minimum does
the reverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .chain import Arrangement, Entry, evaluate, format_arrangement
from .errors import (
    DegenerateVariance,
    EmptyGroup,
    ForcedTie,
    InconsistentWithinGroupOrder,
    InputFormatError,
)
from .survival import Group, Status, parse_time, read_records
from .weighted import GrhoConfig, z_statistic


@dataclass(frozen=True)
class IntervalObservation:
    lower: float
    upper: float
    status: Status
    group: Group

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("interval endpoints must be finite")
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower!r} exceeds upper {self.upper!r}")


@dataclass(frozen=True)
class BoundsResult:
    z_min: float
    z_max: float
    arg_min: Arrangement
    arg_max: Arrangement
    rho: float

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "z_min": self.z_min,
            "z_max": self.z_max,
            "arg_min": format_arrangement(self.arg_min),
            "arg_max": format_arrangement(self.arg_max),
        }


def validate_intervals(g0: Sequence[IntervalObservation], g1: Sequence[IntervalObservation]) -> None:
    if not g0:
        raise EmptyGroup("group G0 has no observations")
    if not g1:
        raise EmptyGroup("group G1 has no observations")
    for name, members in (("G0", g0), ("G1", g1)):
        for i in range(1, len(members)):
            a, b = members[i - 1], members[i]
            if b.lower < a.lower or b.upper < a.upper:
                raise InconsistentWithinGroupOrder(
                    f"{name} members {i} [{a.lower:g},{a.upper:g}] and "
                    f"{i + 1} [{b.lower:g},{b.upper:g}] cannot keep their order"
                )


def _check_forced_ties(g0, g1) -> None:
    for i, x in enumerate(g0, 1):
        if x.lower != x.upper:
            continue
        for j, y in enumerate(g1, 1):
            if y.lower == y.upper == x.lower:
                raise ForcedTie(f"x{i} and y{j} are both fixed at {x.lower:g}")


def _arrange(g0, g1, g0_value, g1_value, g1_first: bool) -> Arrangement:
    keyed = []
    for i, x in enumerate(g0, 1):
        keyed.append((g0_value(x), 0 if not g1_first else 1, i, Entry(Group.G0, x.status, i)))
    for j, y in enumerate(g1, 1):
        keyed.append((g1_value(y), 0 if g1_first else 1, j, Entry(Group.G1, y.status, j)))
    keyed.sort(key=lambda k: k[:3])
    return tuple(k[3] for k in keyed)


def extreme_arrangements(
    g0: Sequence[IntervalObservation], g1: Sequence[IntervalObservation]
) -> tuple[Arrangement, Arrangement]:
    """``(min_arrangement, max_arrangement)`` over the feasible interleavings."""
    validate_intervals(g0, g1)
    _check_forced_ties(g0, g1)
    lo = lambda o: o.lower  # noqa: E731
    hi = lambda o: o.upper  # noqa: E731
    arr_min = _arrange(g0, g1, lo, hi, g1_first=False)
    arr_max = _arrange(g0, g1, hi, lo, g1_first=True)
    return arr_min, arr_max


def bounds(
    g0: Sequence[IntervalObservation],
    g1: Sequence[IntervalObservation],
    cfg: GrhoConfig = GrhoConfig(),
) -> BoundsResult:
    arr_min, arr_max = extreme_arrangements(g0, g1)
    zs = []
    for which, arr in (("minimum", arr_min), ("maximum", arr_max)):
        try:
            zs.append(z_statistic(evaluate(arr, cfg)))
        except DegenerateVariance:
            raise DegenerateVariance(f"variance is zero at the {which} arrangement") from None
    return BoundsResult(zs[0], zs[1], arr_min, arr_max, cfg.rho)


def split_groups(observations: Sequence[IntervalObservation]):
    g0 = [o for o in observations if o.group is Group.G0]
    g1 = [o for o in observations if o.group is Group.G1]
    return g0, g1


def read_interval_csv(text: str) -> tuple[list[IntervalObservation], list[IntervalObservation]]:
    """Parse ``lower,upper,status,group`` CSV; row order fixes within-group order."""
    observations = []
    for line, row in read_records(text, ("lower", "upper", "status", "group")):
        lower = parse_time((row["lower"] or "").strip(), line, "lower")
        upper = parse_time((row["upper"] or "").strip(), line, "upper")
        if lower > upper:
            raise InputFormatError(f"line {line}: lower {lower:g} exceeds upper {upper:g}")
        try:
            status = Status(int((row["status"] or "").strip()))
            group = Group(int((row["group"] or "").strip()))
        except ValueError:
            raise InputFormatError(f"line {line}: status and group must be 0 or 1") from None
        observations.append(IntervalObservation(lower, upper, status, group))
    g0, g1 = split_groups(observations)
    validate_intervals(g0, g1)
    return g0, g1

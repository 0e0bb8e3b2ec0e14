"""Two-sample right-censored data, pooled risk sets and the Kaplan-Meier curve."""

from __future__ import annotations

import csv
import enum
import io
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyGroup, InputFormatError, NegativeTime, NoFailures


class Status(enum.IntEnum):
    CENSORED = 0
    FAILURE = 1


class Group(enum.IntEnum):
    G0 = 0
    G1 = 1


class Side(enum.Enum):
    """Which value of the KM step function to read at a jump."""

    LEFT = "left"  # S(t-)
    RIGHT = "right"  # S(t)

    @classmethod
    def parse(cls, text: str) -> "Side":
        key = text.strip().lower().replace("_", "").replace("-", "")
        aliases = {
            "left": cls.LEFT,
            "leftlimit": cls.LEFT,
            "right": cls.RIGHT,
            "rightcontinuous": cls.RIGHT,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown weight convention {text!r}") from None


@dataclass(frozen=True)
class Observation:
    time: float
    status: Status
    group: Group

    @property
    def failed(self) -> bool:
        return self.status is Status.FAILURE


@dataclass(frozen=True)
class Dataset:
    observations: tuple[Observation, ...]
    n0: int
    n1: int
    strict: bool

    def group(self, g: Group) -> list[Observation]:
        """Members of one group, sorted by time (input order on ties)."""
        members = [o for o in self.observations if o.group is g]
        return sorted(members, key=lambda o: o.time)

    @property
    def n(self) -> int:
        return self.n0 + self.n1


@dataclass(frozen=True)
class RiskTable:
    tau: float
    d0: int
    d1: int
    y0: int
    y1: int
    u0: int
    u1: int

    @property
    def d(self) -> int:
        return self.d0 + self.d1

    @property
    def y(self) -> int:
        return self.y0 + self.y1

    @property
    def u(self) -> int:
        return self.u0 + self.u1


@dataclass(frozen=True)
class KMCurve:
    """Right-continuous product-limit step function; 1 before the first step."""

    steps: tuple[tuple[float, float], ...]

    @property
    def times(self) -> list[float]:
        return [t for t, _ in self.steps]


def build_dataset(records: Iterable[Sequence]) -> Dataset:
    """Validate ``(time, status, group)`` records into a :class:`Dataset`.

    Status and group accept ints (1 = failure, 0 = censored) or the enums.
    Input order is kept for reporting.
    """
    observations = []
    for time, status, group in records:
        if isinstance(time, float) and not math.isfinite(time):
            raise NegativeTime(f"time must be finite, got {time!r}")
        if time < 0:
            raise NegativeTime(f"time must be >= 0, got {time!r}")
        observations.append(Observation(time, Status(int(status)), Group(int(group))))

    n0 = sum(1 for o in observations if o.group is Group.G0)
    n1 = len(observations) - n0
    if n0 == 0:
        raise EmptyGroup("group G0 has no observations")
    if n1 == 0:
        raise EmptyGroup("group G1 has no observations")

    strict = len({o.time for o in observations}) == len(observations)
    return Dataset(tuple(observations), n0, n1, strict)


def risk_tables(ds: Dataset) -> list[RiskTable]:
    """One 2x2 summary per distinct failure time, ascending.

    Censorings tied with a failure are taken to occur just after it: they are
    at risk at that failure and counted in the next gap's censored tally.
    """
    failure_times = sorted({o.time for o in ds.observations if o.failed})
    if not failure_times:
        raise NoFailures("dataset contains no failure events")

    times = {g: sorted(o.time for o in ds.observations if o.group is g) for g in Group}
    censored = {
        g: sorted(o.time for o in ds.observations if o.group is g and not o.failed)
        for g in Group
    }
    deaths: dict[tuple[float, Group], int] = {}
    for o in ds.observations:
        if o.failed:
            deaths[o.time, o.group] = deaths.get((o.time, o.group), 0) + 1

    tables = []
    prev = None
    for tau in failure_times:
        at_risk = [len(times[g]) - bisect_left(times[g], tau) for g in Group]
        gap = []
        for g in Group:
            c = censored[g]
            lo = 0 if prev is None else bisect_left(c, prev)
            gap.append(bisect_left(c, tau) - lo)
        tables.append(
            RiskTable(
                tau=tau,
                d0=deaths.get((tau, Group.G0), 0),
                d1=deaths.get((tau, Group.G1), 0),
                y0=at_risk[0],
                y1=at_risk[1],
                u0=gap[0],
                u1=gap[1],
            )
        )
        prev = tau
    return tables


def tail_censored(ds: Dataset) -> int:
    """Censorings at or after the last failure time, which affect no table."""
    last = max((o.time for o in ds.observations if o.failed), default=None)
    if last is None:
        raise NoFailures("dataset contains no failure events")
    return sum(1 for o in ds.observations if not o.failed and o.time >= last)


def km_estimate(ds: Dataset) -> KMCurve:
    """Pooled-sample Kaplan-Meier estimate over the distinct failure times."""
    return km_from_tables(risk_tables(ds))


def km_from_tables(tables: Sequence[RiskTable]) -> KMCurve:
    # exact rational product, rounded once per step
    surv = Fraction(1)
    steps = []
    for table in tables:
        surv *= Fraction(table.y - table.d, table.y)
        steps.append((table.tau, float(surv)))
    return KMCurve(tuple(steps))


def km_at(curve: KMCurve, t: float, side: Side = Side.RIGHT) -> float:
    times = curve.times
    if side is Side.LEFT:
        k = bisect_left(times, t)
    else:
        k = bisect_right(times, t)
    return 1.0 if k == 0 else curve.steps[k - 1][1]


def _parse_int_field(row: dict, name: str, allowed: set[int], line: int) -> int:
    raw = (row.get(name) or "").strip()
    try:
        value = int(raw)
    except ValueError:
        raise InputFormatError(f"line {line}: {name} must be an integer, got {raw!r}") from None
    if value not in allowed:
        raise InputFormatError(f"line {line}: {name} must be one of {sorted(allowed)}, got {value}")
    return value


def parse_time(raw: str, line: int, name: str = "time") -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise InputFormatError(f"line {line}: {name} must be a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise InputFormatError(f"line {line}: {name} must be finite, got {raw!r}")
    return value


def read_records(text: str, columns: Sequence[str]) -> list[tuple[int, dict]]:
    """Rows of a headed CSV as ``(line_number, row)`` after a header check."""
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = [h.strip() for h in (reader.fieldnames or [])]
    if header != list(columns):
        raise InputFormatError(f"expected header {','.join(columns)!r}, got {','.join(header)!r}")
    reader.fieldnames = header
    rows = []
    for row in reader:
        if not any((v or "").strip() for v in row.values()):
            continue
        rows.append((reader.line_num, row))
    return rows


def read_csv(text: str) -> Dataset:
    """Parse ``time,status,group`` CSV text (LF or CRLF)."""
    records = []
    for line, row in read_records(text, ("time", "status", "group")):
        time = parse_time((row["time"] or "").strip(), line)
        status = _parse_int_field(row, "status", {0, 1}, line)
        group = _parse_int_field(row, "group", {0, 1}, line)
        records.append((time, status, group))
    if not records:
        raise EmptyGroup("input has no observations")
    return build_dataset(records)

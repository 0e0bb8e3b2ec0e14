"""The adjacent-swap chain from "all G0 first" to "all G1 first".

Every arrangement is evaluated on rank times 1..n; only the interleaving of
groups and statuses matters to the statistic, so no real times are needed.
Each swap moves one G1 member one place earlier past a G0 member, and Z must
never decrease along the way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DegenerateVariance,
    EmptyGroup,
    MonotonicityViolation,
    NotAdjacentPair,
    TiesPresent,
)
from .survival import Dataset, Group, Observation, Status
from .weighted import GrhoConfig, GrhoResult, components, z_statistic

CENSOR_MARK = "⁺"  # superscript plus


@dataclass(frozen=True)
class Entry:
    group: Group
    status: Status
    index: int  # 1-based position within its own group

    def label(self) -> str:
        name = ("x" if self.group is Group.G0 else "y") + str(self.index)
        return name + (CENSOR_MARK if self.status is Status.CENSORED else "")


Arrangement = tuple[Entry, ...]


@dataclass(frozen=True)
class SandwichDiagnostic:
    d1: float
    d2: float
    d3: float
    d4: float
    applicable: bool


@dataclass(frozen=True)
class SwapStep:
    index: int
    position: int  # 1-based pooled position of the G0 member before the swap
    scenario: str
    subcase: str
    z_before: float
    z_after: float
    arrangement_after: Arrangement
    before: GrhoResult
    after: GrhoResult
    sandwich: SandwichDiagnostic


@dataclass(frozen=True)
class Chain:
    initial: Arrangement
    z_initial: float
    initial_result: GrhoResult
    steps: tuple[SwapStep, ...]
    rho: float

    def arrangements(self) -> list[Arrangement]:
        return [self.initial] + [s.arrangement_after for s in self.steps]

    def z_values(self) -> list[float]:
        return [self.z_initial] + [s.z_after for s in self.steps]


@dataclass(frozen=True)
class VerificationReport:
    steps: int
    s1_steps: int
    sandwich_checked: int
    min_increment: float


def _statuses(values) -> list[Status]:
    return [Status(int(s)) for s in values]


def initial_arrangement(statuses_g0: Sequence, statuses_g1: Sequence) -> Arrangement:
    if not statuses_g0:
        raise EmptyGroup("group G0 has no observations")
    if not statuses_g1:
        raise EmptyGroup("group G1 has no observations")
    return tuple(
        [Entry(Group.G0, s, i) for i, s in enumerate(_statuses(statuses_g0), 1)]
        + [Entry(Group.G1, s, j) for j, s in enumerate(_statuses(statuses_g1), 1)]
    )


def arrangement_dataset(arr: Arrangement) -> Dataset:
    """The arrangement as observations at rank times 1..n."""
    obs = tuple(Observation(float(r), e.status, e.group) for r, e in enumerate(arr, 1))
    n0 = sum(1 for e in arr if e.group is Group.G0)
    return Dataset(obs, n0, len(arr) - n0, strict=True)


def evaluate(arr: Arrangement, cfg: GrhoConfig) -> GrhoResult:
    return components(arrangement_dataset(arr), cfg)


def swap(arr: Arrangement, position: int) -> Arrangement:
    _check_pair(arr, position)
    k = position - 1
    return arr[:k] + (arr[k + 1], arr[k]) + arr[k + 2 :]


def _check_pair(arr: Arrangement, position: int) -> None:
    if not 1 <= position < len(arr):
        raise NotAdjacentPair(f"position {position} has no right neighbour")
    left, right = arr[position - 1], arr[position]
    if left.group is not Group.G0 or right.group is not Group.G1:
        raise NotAdjacentPair(
            f"positions {position},{position + 1} hold {left.label()},{right.label()}; "
            "expected a G0 member followed by a G1 member"
        )


def _scenario(x: Entry, y: Entry) -> str:
    x_fail = x.status is Status.FAILURE
    y_fail = y.status is Status.FAILURE
    if not x_fail and not y_fail:
        return "S1"
    if x_fail and not y_fail:
        return "S2"
    if not x_fail and y_fail:
        return "S3"
    return "S4"


def _subcase(scenario: str, before: GrhoResult, after: GrhoResult) -> str:
    if scenario == "S1":
        return "S1"
    vb, va = before.V, after.V
    if math.isclose(vb, va, rel_tol=1e-12, abs_tol=1e-300):
        return f"{scenario}-i"
    return f"{scenario}-iia" if vb < va else f"{scenario}-iib"


def classify_swap(arr: Arrangement, position: int, cfg: GrhoConfig = GrhoConfig()) -> tuple[str, str]:
    """Scenario by the pair's statuses; sub-case by how the variance moves.

    ``-i`` means V is unchanged by the swap, ``-iia`` that it grows and
    ``-iib`` that it shrinks.
    """
    _check_pair(arr, position)
    scenario = _scenario(arr[position - 1], arr[position])
    if scenario == "S1":
        return scenario, "S1"
    before = evaluate(arr, cfg)
    after = evaluate(swap(arr, position), cfg)
    return scenario, _subcase(scenario, before, after)


def sandwich(before: GrhoResult, after: GrhoResult) -> SandwichDiagnostic:
    """The four differences between (O-E_x)/sqrt(V_y) for x, y in {B, A}."""
    nb = before.O - before.E
    na = after.O - after.E
    sb = math.sqrt(before.V)
    sa = math.sqrt(after.V)
    applicable = (nb > 0 and na > 0 and before.V < after.V) or (
        nb < 0 and na < 0 and before.V > after.V
    )
    return SandwichDiagnostic(
        d1=nb / sb - nb / sa,
        d2=na / sb - nb / sb,
        d3=na / sa - nb / sa,
        d4=na / sb - na / sa,
        applicable=applicable,
    )


def canonical_positions(n0: int, n1: int) -> list[int]:
    """Swap positions in canonical order: y1 bubbles to the front, then y2, ..."""
    positions = []
    for j in range(n1):
        # y_{j+1} starts at 0-based slot n0 + j and ends at slot j
        for slot in range(n0 + j, j, -1):
            positions.append(slot)  # 1-based position of the G0 member = slot
    return positions


def run_chain(start: Arrangement, positions: Sequence[int], cfg: GrhoConfig) -> Chain:
    """Apply adjacent G0/G1 swaps at ``positions`` and evaluate every step."""
    current = start
    result = evaluate(current, cfg)
    try:
        z_initial = z_statistic(result)
    except DegenerateVariance:
        raise DegenerateVariance("variance is zero at the initial arrangement", step=0) from None

    steps = []
    z_prev, prev = z_initial, result
    for index, position in enumerate(positions, 1):
        _check_pair(current, position)
        scenario = _scenario(current[position - 1], current[position])
        nxt = swap(current, position)
        after = evaluate(nxt, cfg)
        try:
            z_after = z_statistic(after)
        except DegenerateVariance:
            raise DegenerateVariance("variance is zero after swap", step=index) from None
        steps.append(
            SwapStep(
                index=index,
                position=position,
                scenario=scenario,
                subcase=_subcase(scenario, prev, after),
                z_before=z_prev,
                z_after=z_after,
                arrangement_after=nxt,
                before=prev,
                after=after,
                sandwich=sandwich(prev, after),
            )
        )
        current, prev, z_prev = nxt, after, z_after
    return Chain(start, z_initial, result, tuple(steps), cfg.rho)


def generate_chain(statuses_g0: Sequence, statuses_g1: Sequence, cfg: GrhoConfig = GrhoConfig()) -> Chain:
    start = initial_arrangement(statuses_g0, statuses_g1)
    return run_chain(start, canonical_positions(len(statuses_g0), len(statuses_g1)), cfg)


def group_statuses(ds: Dataset) -> tuple[list[Status], list[Status]]:
    """Within-group status sequences in time order (needs distinct times)."""
    if not ds.strict:
        raise TiesPresent("tied observation times; the chain needs distinct times")
    return (
        [o.status for o in ds.group(Group.G0)],
        [o.status for o in ds.group(Group.G1)],
    )


def chain_from_dataset(ds: Dataset, cfg: GrhoConfig = GrhoConfig()) -> Chain:
    g0, g1 = group_statuses(ds)
    return generate_chain(g0, g1, cfg)


def verify_monotone(
    steps: Sequence[SwapStep], tol: float = 1e-9, identity_tol: float = 1e-12
) -> VerificationReport:
    """Check Z_B <= Z_A at every step, S1 invariance and the sandwich bounds.

    Raises :class:`MonotonicityViolation` on the first failed check.
    """
    if not steps:
        raise ValueError("chain has no steps")
    s1 = checked = 0
    min_inc = math.inf
    for step in steps:
        inc = step.z_after - step.z_before
        min_inc = min(min_inc, inc)
        if inc < -tol:
            raise MonotonicityViolation(
                f"z decreased from {step.z_before!r} to {step.z_after!r}",
                step.index,
                step.subcase,
            )
        if step.scenario == "S1":
            s1 += 1
            if abs(inc) > tol:
                raise MonotonicityViolation(
                    f"censored/censored swap changed z by {inc!r}", step.index, "S1"
                )
        dg = step.sandwich
        if step.scenario != "S1" and dg.applicable:
            checked += 1
            if not (dg.d3 > dg.d1 and dg.d2 > dg.d4):
                raise MonotonicityViolation(
                    f"sandwich ordering fails: D1={dg.d1!r} D2={dg.d2!r} D3={dg.d3!r} D4={dg.d4!r}",
                    step.index,
                    step.subcase,
                )
            if abs(dg.d2 - (dg.d4 + inc)) > identity_tol or abs(dg.d3 - (dg.d1 + inc)) > identity_tol:
                raise MonotonicityViolation(
                    "sandwich decomposition identities do not hold", step.index, step.subcase
                )
    return VerificationReport(len(steps), s1, checked, min_inc)


def format_arrangement(arr: Arrangement, times: dict[Group, list[float]] | None = None) -> str:
    """Space-separated labels; with ``times``, print each member's own time."""
    if times is None:
        return " ".join(e.label() for e in arr)
    out = []
    for e in arr:
        t = times[e.group][e.index - 1]
        out.append(f"{t:g}" + (CENSOR_MARK if e.status is Status.CENSORED else ""))
    return " ".join(out)

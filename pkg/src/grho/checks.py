"""Randomised self-check suites behind ``grho verify``.

Each ``check_*`` function verifies one instance and raises
:class:`~grho.errors.InternalCheckError` on disagreement; the ``run_*``
drivers draw instances from a seeded :class:`random.Random`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .bounds import IntervalObservation, bounds
from .chain import Chain, Entry, evaluate, generate_chain, verify_monotone
from .errors import DegenerateVariance, ForcedTie, InternalCheckError, NoFailures
from .oracle import (
    brute_force_extremes,
    brute_force_feasible_extremes,
    enumerate_interleavings,
    straight_z,
)
from .survival import Group, Status
from .weighted import GrhoConfig, z_statistic

CHAIN_RHOS = (0.0, 0.5, 1.0, 2.0)
BOUNDS_RHOS = (0.0, 0.5, 1.0)
AGREEMENT_TOL = 1e-10


class OracleMismatch(InternalCheckError):
    pass


@dataclass
class ChainInstance:
    statuses_g0: list[int]
    statuses_g1: list[int]
    rho: float
    chain: Chain


@dataclass
class SuiteCounts:
    instances: int = 0
    steps: int = 0
    sandwich: int = 0
    interleavings: int = 0
    resampled: int = 0


def arrangement_from_labels(labels, statuses_g0, statuses_g1):
    counters = [0, 0]
    stats = (statuses_g0, statuses_g1)
    out = []
    for g in labels:
        counters[g] += 1
        out.append(Entry(Group(g), Status(int(stats[g][counters[g] - 1])), counters[g]))
    return tuple(out)


def labels_of(arr) -> tuple[int, ...]:
    return tuple(int(e.group) for e in arr)


def random_chain_instance(rng: random.Random, max_n: int = 6, rhos=CHAIN_RHOS):
    """Random statuses whose canonical chain has V > 0 throughout.

    Returns ``(instance, resampled)`` where ``resampled`` counts rejected
    draws (no failures, or a zero-variance arrangement on the chain).
    """
    rejected = 0
    while True:
        n0 = rng.randint(1, max_n)
        n1 = rng.randint(1, max_n)
        st0 = [rng.randint(0, 1) for _ in range(n0)]
        st1 = [rng.randint(0, 1) for _ in range(n1)]
        rho = rng.choice(rhos)
        if not any(st0) and not any(st1):
            rejected += 1
            continue
        try:
            chain = generate_chain(st0, st1, GrhoConfig(rho))
        except DegenerateVariance:
            rejected += 1
            continue
        return ChainInstance(st0, st1, rho, chain), rejected


def random_interval_instance(rng: random.Random, max_total: int = 10, span: int = 12):
    """Random validated interval data with integer endpoints (many touch)."""
    n0 = rng.randint(1, max_total - 1)
    n1 = rng.randint(1, max_total - n0)
    groups = []
    for g, n in ((Group.G0, n0), (Group.G1, n1)):
        lowers = sorted(rng.randint(0, span) for _ in range(n))
        uppers = []
        top = -math.inf
        for lo in lowers:
            top = max(top, lo + rng.choice((0, 0, 1, 2, 3, 5, 8)))
            uppers.append(top)
        groups.append(
            [
                IntervalObservation(float(lo), float(hi), Status(rng.randint(0, 1)), g)
                for lo, hi in zip(lowers, uppers)
            ]
        )
    return groups[0], groups[1]


def check_chain(inst: ChainInstance, tol: float = 1e-9):
    return verify_monotone(inst.chain.steps, tol=tol)


def check_oracle(inst: ChainInstance, tol: float = AGREEMENT_TOL) -> int:
    """Chain endpoints are the global extremes; engine and oracle agree everywhere."""
    cfg = GrhoConfig(inst.rho)
    st0, st1 = inst.statuses_g0, inst.statuses_g1
    ref = brute_force_extremes(st0, st1, cfg)
    z_first = inst.chain.z_initial
    z_last = inst.chain.steps[-1].z_after
    if abs(ref.z_min - z_first) > tol or abs(ref.z_max - z_last) > tol:
        raise OracleMismatch(
            f"statuses {st0}/{st1} rho={inst.rho}: chain ends ({z_first!r}, {z_last!r}) "
            f"but enumeration gives ({ref.z_min!r}, {ref.z_max!r})"
        )
    count = 0
    for labels in enumerate_interleavings(len(st0), len(st1)):
        z_ref = straight_z(labels, st0, st1, cfg)
        result = evaluate(arrangement_from_labels(labels, st0, st1), cfg)
        if z_ref is None:
            if result.V > 0:
                raise OracleMismatch(f"{labels}: oracle sees V=0, engine V={result.V!r}")
            continue
        z = z_statistic(result)
        if abs(z - z_ref) > tol:
            raise OracleMismatch(f"{labels} rho={inst.rho}: engine {z!r} vs oracle {z_ref!r}")
        count += 1
    return count


def check_bounds(g0, g1, rho: float, tol: float = AGREEMENT_TOL):
    """Compare bounds() with enumeration; None when the instance is unusable."""
    cfg = GrhoConfig(rho)
    try:
        got = bounds(g0, g1, cfg)
    except (DegenerateVariance, ForcedTie, NoFailures):
        return None
    ref = brute_force_feasible_extremes(g0, g1, cfg)
    if abs(got.z_min - ref.z_min) > tol or abs(got.z_max - ref.z_max) > tol:
        raise OracleMismatch(
            f"rho={rho} g0={_fmt(g0)} g1={_fmt(g1)}: bounds ({got.z_min!r}, {got.z_max!r}) "
            f"vs enumeration ({ref.z_min!r}, {ref.z_max!r})"
        )
    return got, ref


def _fmt(group) -> str:
    return " ".join(f"[{o.lower:g},{o.upper:g}]{'' if o.status else '+'}" for o in group)


def run_chain_suites(
    seed: int, cases: int, max_n: int = 6, with_oracle: bool = True, tolerance: float = 1e-9
):
    rng = random.Random(seed)
    mono = SuiteCounts()
    agree = SuiteCounts()
    for _ in range(cases):
        inst, rejected = random_chain_instance(rng, max_n)
        mono.resampled += rejected
        report = check_chain(inst, tolerance)
        mono.instances += 1
        mono.steps += report.steps
        mono.sandwich += report.sandwich_checked
        if with_oracle:
            agree.interleavings += check_oracle(inst)
            agree.instances += 1
    return mono, agree


def run_bounds_suite(seed: int, cases: int, max_total: int = 10, rhos=BOUNDS_RHOS):
    rng = random.Random(seed)
    counts = SuiteCounts()
    while counts.instances < cases:
        g0, g1 = random_interval_instance(rng, max_total)
        rho = rhos[counts.instances % len(rhos)]
        if check_bounds(g0, g1, rho) is None:
            counts.resampled += 1
            continue
        counts.instances += 1
    return counts

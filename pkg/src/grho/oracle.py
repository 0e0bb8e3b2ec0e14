"""Brute-force reference values by exhaustive enumeration of interleavings.

Nothing here reuses the risk-table, Kaplan-Meier or statistic code of the
engine: Z is rebuilt from the raw label sequence so the two paths can check
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import AllDegenerate, CapExceeded, NoFeasible
from .survival import Side
from .weighted import GrhoConfig

DEFAULT_CAP = 20

Labels = tuple[int, ...]  # 0 = G0, 1 = G1, in pooled order


@dataclass(frozen=True)
class OracleExtremes:
    z_min: float
    z_max: float
    arg_min: Labels
    arg_max: Labels
    evaluated: int
    degenerate: int


def enumerate_interleavings(n0: int, n1: int, cap: int = DEFAULT_CAP) -> Iterator[Labels]:
    """All label sequences with n0 zeros and n1 ones, in lexicographic order."""
    n = n0 + n1
    if n > cap:
        raise CapExceeded(f"{n} observations exceed the enumeration cap of {cap}")
    for zeros in combinations(range(n), n0):
        seq = [1] * n
        for k in zeros:
            seq[k] = 0
        yield tuple(seq)


def straight_z(labels: Labels, statuses_g0: Sequence[int], statuses_g1: Sequence[int], cfg: GrhoConfig):
    """Z of one interleaving on rank times, or None when the variance is 0."""
    n = len(labels)
    it = (iter(statuses_g0), iter(statuses_g1))
    status = [int(next(it[g])) for g in labels]

    # at_risk[g][p]: members of group g at positions p..n-1
    at_risk = [[0] * (n + 1), [0] * (n + 1)]
    for p in range(n - 1, -1, -1):
        for g in (0, 1):
            at_risk[g][p] = at_risk[g][p + 1] + (labels[p] == g)

    left = cfg.weight_convention is Side.LEFT
    surv = 1.0
    obs = exp = var = 0.0
    for p in range(n):
        if not status[p]:
            continue
        r0, r1 = at_risk[0][p], at_risk[1][p]
        r = r0 + r1
        after = surv * (r - 1) / r
        w = (surv if left else after) ** cfg.rho
        obs += w * labels[p]
        exp += w * r1 / r
        var += w * w * r0 * r1 / (r * r)
        surv = after
    if var <= 0:
        return None
    return (obs - exp) / math.sqrt(var)


def _extremes(candidates, statuses_g0, statuses_g1, cfg) -> OracleExtremes:
    best_min = best_max = None
    evaluated = degenerate = 0
    for labels in candidates:
        evaluated += 1
        z = straight_z(labels, statuses_g0, statuses_g1, cfg)
        if z is None:
            degenerate += 1
            continue
        if best_min is None or z < best_min[0]:
            best_min = (z, labels)
        if best_max is None or z > best_max[0]:
            best_max = (z, labels)
    if evaluated == 0:
        raise NoFeasible("no feasible interleaving")
    if best_min is None:
        raise AllDegenerate(f"all {evaluated} interleavings have zero variance")
    return OracleExtremes(best_min[0], best_max[0], best_min[1], best_max[1], evaluated, degenerate)


def brute_force_extremes(
    statuses_g0: Sequence[int], statuses_g1: Sequence[int], cfg: GrhoConfig, cap: int = DEFAULT_CAP
) -> OracleExtremes:
    candidates = enumerate_interleavings(len(statuses_g0), len(statuses_g1), cap)
    return _extremes(candidates, statuses_g0, statuses_g1, cfg)


def is_feasible(labels: Labels, g0, g1) -> bool:
    """Respects every strictly separated cross-group pair of intervals."""
    pos = ([], [])
    for p, g in enumerate(labels):
        pos[g].append(p)
    for i, x in enumerate(g0):
        for j, y in enumerate(g1):
            if x.upper < y.lower and pos[0][i] > pos[1][j]:
                return False
            if y.upper < x.lower and pos[1][j] > pos[0][i]:
                return False
    return True


def brute_force_feasible_extremes(g0, g1, cfg: GrhoConfig, cap: int = DEFAULT_CAP) -> OracleExtremes:
    """Exact extremes over interleavings consistent with the intervals."""
    candidates = (
        labels
        for labels in enumerate_interleavings(len(g0), len(g1), cap)
        if is_feasible(labels, g0, g1)
    )
    st0 = [int(o.status) for o in g0]
    st1 = [int(o.status) for o in g1]
    return _extremes(candidates, st0, st1, cfg)

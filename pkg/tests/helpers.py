"""Shared fixtures data and hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from grho.survival import build_dataset

EXAMPLE_G0 = [(1, 1), (2, 0), (3, 1), (4, 1), (5, 0)]
EXAMPLE_G1 = [(6, 1), (7, 1), (8, 0), (9, 1), (10, 0)]
EXAMPLE_STATUS_G0 = [s for _, s in EXAMPLE_G0]
EXAMPLE_STATUS_G1 = [s for _, s in EXAMPLE_G1]

# z column of the published 26-arrangement example, rho = 0.5
EXAMPLE_Z = [
    -2.1901, -1.8797, -1.5791, -1.3374, -1.2602, -1.0872, -0.8729, -0.6236,
    -0.4107, -0.3533, -0.1873, -0.1873, -0.1096, -0.0175, -0.0175, 0.0722,
    0.2798, 0.5884, 0.8718, 0.9208, 1.1602, 1.1602, 1.4627, 1.7874, 1.7874,
    2.0898,
]


def example_dataset():
    return build_dataset([(t, s, 0) for t, s in EXAMPLE_G0] + [(t, s, 1) for t, s in EXAMPLE_G1])


@st.composite
def strict_records(draw, max_n=8, min_failures=1):
    """Records with distinct integer times, both groups present."""
    n0 = draw(st.integers(1, max_n))
    n1 = draw(st.integers(1, max_n))
    n = n0 + n1
    times = draw(st.lists(st.integers(0, 1000), min_size=n, max_size=n, unique=True))
    statuses = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    if sum(statuses) < min_failures:
        statuses[draw(st.integers(0, n - 1))] = 1
    groups = [0] * n0 + [1] * n1
    groups = draw(st.permutations(groups))
    return list(zip(times, statuses, groups))


def exact_components(records, rho_is_zero=True):
    """Unweighted log-rank O, E, V in exact rationals, straight from the risk sets."""
    failures = sorted(t for t, s, _ in records if s == 1)
    o = e = v = Fraction(0)
    for tau in failures:
        y0 = sum(1 for t, _, g in records if g == 0 and t >= tau)
        y1 = sum(1 for t, _, g in records if g == 1 and t >= tau)
        d1 = sum(1 for t, s, g in records if g == 1 and s == 1 and t == tau)
        y = y0 + y1
        o += d1
        e += Fraction(y1, y)
        v += Fraction(y0 * y1, y * y)
    return o, e, v

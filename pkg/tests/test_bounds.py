import random

import pytest
from hypothesis import given, settings, strategies as st

from grho.bounds import (
    IntervalObservation as Iv,
    bounds,
    extreme_arrangements,
    read_interval_csv,
    validate_intervals,
)
from grho.chain import evaluate, format_arrangement
from grho.checks import check_bounds, labels_of, random_interval_instance
from grho.errors import DegenerateVariance, ForcedTie, InconsistentWithinGroupOrder, NoFailures
from grho.oracle import brute_force_feasible_extremes, is_feasible
from grho.survival import Group, Status
from grho.weighted import GrhoConfig

from helpers import EXAMPLE_G0, EXAMPLE_G1, EXAMPLE_STATUS_G0, EXAMPLE_STATUS_G1


def g0(*spans, statuses=None):
    statuses = statuses or [1] * len(spans)
    return [Iv(lo, hi, Status(s), Group.G0) for (lo, hi), s in zip(spans, statuses)]


def g1(*spans, statuses=None):
    statuses = statuses or [1] * len(spans)
    return [Iv(lo, hi, Status(s), Group.G1) for (lo, hi), s in zip(spans, statuses)]


def test_validate_accepts_ordered():
    validate_intervals(g0((1, 2), (3, 4)), g1((0, 5)))


def test_validate_rejects_decreasing_upper():
    with pytest.raises(InconsistentWithinGroupOrder):
        validate_intervals(g0((1, 10), (2, 3)), g1((0, 5)))


def test_interval_must_be_ordered():
    with pytest.raises(ValueError):
        Iv(2, 1, Status.FAILURE, Group.G0)


def test_precise_data_bounds_coincide():
    a = [Iv(t, t, Status(s), Group.G0) for t, s in EXAMPLE_G0]
    b = [Iv(t, t, Status(s), Group.G1) for t, s in EXAMPLE_G1]
    res = bounds(a, b, GrhoConfig(0.5))
    assert res.z_min == res.z_max == pytest.approx(-2.1901, abs=5e-4)
    assert res.arg_min == res.arg_max


def test_separated_groups_single_ranking():
    res = bounds(g0((0, 1), (2, 3)), g1((4, 5), (6, 7)), GrhoConfig(1))
    assert res.z_min == res.z_max


def test_full_overlap_gives_chain_endpoints():
    a = g0(*[(0, 100)] * 5, statuses=EXAMPLE_STATUS_G0)
    b = g1(*[(0, 100)] * 5, statuses=EXAMPLE_STATUS_G1)
    lo, hi = extreme_arrangements(a, b)
    assert format_arrangement(lo) == "x1 x2⁺ x3 x4 x5⁺ y1 y2 y3⁺ y4 y5⁺"
    assert format_arrangement(hi) == "y1 y2 y3⁺ y4 y5⁺ x1 x2⁺ x3 x4 x5⁺"
    res = bounds(a, b, GrhoConfig(0.5))
    assert res.z_min == pytest.approx(-2.1901, abs=5e-4)
    assert res.z_max == pytest.approx(2.0898, abs=5e-4)


def test_shared_endpoint_counts_as_overlap():
    lo, hi = extreme_arrangements(g0((1, 3)), g1((3, 5)))
    assert labels_of(lo) == (0, 1)
    assert labels_of(hi) == (1, 0)


def test_identical_points_are_a_forced_tie():
    with pytest.raises(ForcedTie):
        extreme_arrangements(g0((2, 2)), g1((2, 2)))


def test_small_overlap_matches_enumeration():
    rng = random.Random(7)
    checked = 0
    while checked < 40:
        a, b = random_interval_instance(rng, max_total=6)
        if check_bounds(a, b, 0.5) is not None:
            checked += 1


def test_degenerate_extreme_raises():
    with pytest.raises(DegenerateVariance):
        bounds(g0((0, 1), statuses=[0]), g1((2, 3)))


def test_read_interval_csv():
    text = "lower,upper,status,group\n0,1,1,0\n0.5,2,0,0\n1,3,1,1\n"
    a, b = read_interval_csv(text)
    assert [(o.lower, o.upper) for o in a] == [(0, 1), (0.5, 2)]
    assert b[0].status is Status.FAILURE


def test_to_dict_encodes_arrangements():
    d = bounds(g0((0, 2), (1, 3), statuses=[1, 0]), g1((1, 2), (2, 4)), GrhoConfig(0)).to_dict()
    assert set(d) == {"rho", "z_min", "z_max", "arg_min", "arg_max"}
    assert d["arg_max"].split()[0] == "y1"


@st.composite
def interval_instances(draw):
    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_interval_instance(rng, max_total=8)


def _bounds_or_none(a, b, rho):
    try:
        return bounds(a, b, GrhoConfig(rho))
    except (DegenerateVariance, ForcedTie, NoFailures):
        return None


@settings(max_examples=100)
@given(interval_instances(), st.sampled_from([0.0, 0.5, 1.0]))
def test_extremes_are_feasible(inst, rho):
    a, b = inst
    res = _bounds_or_none(a, b, rho)
    if res is None:
        return
    assert res.z_min <= res.z_max
    for arr in (res.arg_min, res.arg_max):
        assert is_feasible(labels_of(arr), a, b)
        assert [e.index for e in arr if e.group is Group.G0] == list(range(1, len(a) + 1))


@settings(max_examples=100)
@given(interval_instances(), st.data())
def test_widening_never_shrinks(inst, data):
    a, b = inst
    rho = 0.5
    narrow = _bounds_or_none(a, b, rho)
    if narrow is None:
        return
    # widen one interval by pushing both ends out, then repair within-group order
    group = data.draw(st.sampled_from([0, 1]))
    members = list(a if group == 0 else b)
    k = data.draw(st.integers(0, len(members) - 1))
    grow_lo = data.draw(st.integers(0, 4))
    grow_hi = data.draw(st.integers(0, 4))
    m = members[k]
    members[k] = Iv(m.lower - grow_lo, m.upper + grow_hi, m.status, m.group)
    for i in range(k - 1, -1, -1):  # keep lowers non-decreasing
        o = members[i]
        members[i] = Iv(min(o.lower, members[i + 1].lower), o.upper, o.status, o.group)
    for i in range(k + 1, len(members)):  # keep uppers non-decreasing
        o = members[i]
        members[i] = Iv(o.lower, max(o.upper, members[i - 1].upper), o.status, o.group)
    wa, wb = (members, b) if group == 0 else (a, members)
    wide = _bounds_or_none(wa, wb, rho)
    if wide is None:
        return
    assert wide.z_min <= narrow.z_min + 1e-12
    assert wide.z_max >= narrow.z_max - 1e-12


@settings(max_examples=60)
@given(interval_instances())
def test_bounds_equal_enumeration(inst):
    a, b = inst
    res = _bounds_or_none(a, b, 1.0)
    if res is None:
        return
    ref = brute_force_feasible_extremes(a, b, GrhoConfig(1.0))
    assert res.z_min == pytest.approx(ref.z_min, abs=1e-10)
    assert res.z_max == pytest.approx(ref.z_max, abs=1e-10)
    assert evaluate(res.arg_max, GrhoConfig(1.0)).Z == res.z_max

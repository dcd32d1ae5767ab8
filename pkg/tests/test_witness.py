from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from quotientcoh.witness import (
    BumpFamily,
    build_bumps,
    degree_one_obstruction,
    forced_levels,
    interval,
    intervals_are_disjoint,
    lift_obstruction,
    verify_bounds,
)


@pytest.fixture(scope="module")
def family() -> BumpFamily:
    return build_bumps(range(2, 9), max_derivative_order=4,
                       samples_per_interval=10001)


@pytest.fixture(scope="module")
def report(family):
    return verify_bounds(family)


def test_profile_value_at_half(family):
    value = family.phi_derivative(0, np.array([0.5]))[0]
    assert value == pytest.approx(math.exp(-4), rel=1e-12)


def test_profile_vanishes_to_all_orders_at_the_edges(family):
    near_edge = np.array([1e-3, 1.0 - 1e-3])
    for m in range(family.max_derivative_order + 1):
        assert np.max(np.abs(family.phi_derivative(m, near_edge))) < 1e-300


def test_intervals_exact():
    assert interval(1) == (Fraction(1, 2), Fraction(3, 4))
    assert interval(2) == (Fraction(1, 4), Fraction(5, 16))
    assert interval(3) == (Fraction(1, 8), Fraction(1, 8) + Fraction(1, 64))
    # the level-2 interval tops out strictly below the level-1 interval
    assert interval(2)[1] == Fraction(5, 16) < Fraction(1, 2) == interval(1)[0]


def test_intervals_are_disjoint_far_down():
    assert intervals_are_disjoint(40)


def test_level3_support_is_inside_its_interval(family):
    left, right = interval(3)
    # sampled points all fall inside the open interval, exactly
    s = family.s_grid()
    t = 2.0 ** -3 + 2.0 ** -6 * s
    assert float(left) < t.min() and t.max() < float(right)


def test_measured_sups_sit_on_their_bounds(report):
    # same profile grid for the constants and the levels, so each
    # measured sup equals its bound to rounding
    for r in report.sup_records:
        if r.bound == 0:
            assert r.measured == 0
            continue
        assert abs(r.measured / r.bound - 1.0) < 1e-9


def test_bounds_hold_with_slack(report):
    for r in report.sup_records:
        assert r.measured <= r.bound * (1 + report.relative_slack)


def test_sups_decrease_for_low_orders(report):
    table = {
        (r.family, r.level, r.order): r.measured for r in report.sup_records
    }
    for family_name in ("f", "scaled"):
        for m in range(4):
            sups = [table[(family_name, k, m)] for k in range(2, 9)]
            assert all(a > b for a, b in zip(sups, sups[1:])), (
                family_name, m, sups
            )


def test_monotone_violations_are_exactly_the_order4_step(report):
    # the level-to-level ratio of the order-m sup is
    # exp(-(2k+1)) * 2^(2m) for f (twice that for 2^k f), which
    # exceeds 1 only at m = 4, k = 2 -> 3 in this range
    observed = {
        (v.family, v.order, v.level_from, v.level_to)
        for v in report.monotone_violations
    }
    assert observed == {("f", 4, 2, 3), ("scaled", 4, 2, 3)}
    for v in report.monotone_violations:
        predicted = math.exp(-5) * 2 ** 8
        if v.family == "scaled":
            predicted *= 2
        assert v.ratio == pytest.approx(predicted, rel=1e-6)


def test_sups_tend_to_zero_in_k(report):
    # strictly decreasing from level 3 on, and collapsing fast: the
    # squared-exponential damping wins over the 2^(2km) growth
    table = {
        (r.family, r.level, r.order): r.measured for r in report.sup_records
    }
    for family_name in ("f", "scaled"):
        for m in range(5):
            tail = [table[(family_name, k, m)] for k in range(3, 9)]
            assert all(a > b for a, b in zip(tail, tail[1:]))
            assert tail[-1] < 1e-3 * tail[0]


def test_forced_levels_recover_k(report):
    assert report.forced_levels == tuple((k, k) for k in range(2, 9))


def test_forced_level_ratio_is_exact(family):
    for k in family.k_range:
        a = family.bump_values(k, 0)
        positive = a > 0
        assert positive.any()
        ratios = (2.0 ** k * a)[positive] / a[positive]
        assert (ratios == 2.0 ** k).all()


def test_lift_obstruction(family, report):
    assert lift_obstruction(family)
    assert report.lift_obstruction


def test_lift_obstruction_needs_two_levels():
    lone = build_bumps([4], max_derivative_order=1,
                       samples_per_interval=501)
    with pytest.raises(ValueError):
        lift_obstruction(lone)


def test_build_bumps_validation():
    with pytest.raises(ValueError):
        build_bumps([])
    with pytest.raises(ValueError):
        build_bumps([0, 1])
    with pytest.raises(ValueError):
        build_bumps([2], max_derivative_order=-1)
    with pytest.raises(ValueError):
        build_bumps([2], samples_per_interval=2)


def test_degree_one_obstruction_certificate():
    cert = degree_one_obstruction()
    assert cert.quotient_degree1_dim == 0
    assert cert.invariant_basic_degree1_dim == 1
    assert cert.invariant_witness == "dx"
    assert not cert.pullback_surjective_degree1
    assert cert.conclusion == "pullback-not-surjective"


def test_forced_levels_pairs(family):
    pairs = forced_levels(family)
    assert [k for k, _ in pairs] == sorted(family.k_range)
    assert all(k == lvl for k, lvl in pairs)

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipstab.argmin import ProblemInstance, extreme_optimal_points, optimal_set
from lipstab.errors import ParameterOutsideDomain, PointNotOptimal
from lipstab.geometry import same_set
from lipstab.instances import random_instance
from lipstab.kkt import minimal_kkt_at, s_d_set
from lipstab.segment import break_steps, connecting_subdivision, domain_interval, segment_bound_check
from lipstab.validator import SampleConfig, sample_domain_point

HALF = Fraction(1, 2)


def test_break_steps_examples(inst_a, inst_c):
    assert break_steps(inst_c, (0, 0, 1), (0, 1, 0)) == [HALF]
    assert break_steps(inst_a, (0, 1), (1, 0)) == [HALF]
    # shifting every right side by the same amount keeps the family
    assert break_steps(inst_c, (0, 1, 0), (1, 2, 1)) == []


def test_domain_intervals(inst_c):
    assert domain_interval(inst_c, (1, 2), (0, 0, 1), (0, 1, 0)) == (0, HALF)
    assert domain_interval(inst_c, (3,), (0, 0, 1), (0, 1, 0)) == (HALF, 1)
    with pytest.raises(ValueError):
        domain_interval(inst_c, (1, 3), (0, 0, 1), (0, 1, 0))


def test_subdivision_examples(inst_a, inst_c):
    seg = connecting_subdivision(inst_c, (0, 0, 1), (0, 1, 0))
    assert seg.subdivision == (0, HALF, 1) and seg.pieces == ((1, 2), (3,))
    assert seg.family_at(HALF) == ((3,), (1, 2))
    seg = connecting_subdivision(inst_a, (0, 1), (1, 0))
    assert seg.subdivision == (0, HALF, 1) and seg.pieces == ((1,), (2,))
    seg = connecting_subdivision(inst_c, (0, 0, 0), (0, 0, 0))
    assert seg.subdivision == (0, 1) and seg.pieces == ((3,),)


def test_segment_bound_examples(inst_a, inst_c):
    r = segment_bound_check(inst_c, (0, 0, 1), (0, 1, 0), (-1, 1))
    assert r.ratio == 1 and r.bound == 2 and r.holds
    assert r.steps == (0, HALF)
    r = segment_bound_check(inst_c, (0, 0, 1), (0, 1, 0), (0, 0))
    assert r.ratio == 0 and r.holds
    r = segment_bound_check(inst_a, (0, 1), (1, 0), (0,))
    assert r.ratio == 0 and r.bound == 1 and r.holds


def test_segment_bound_rejects(inst_a, inst_c):
    with pytest.raises(ValueError):
        segment_bound_check(inst_c, (0, 1, 0), (0, 1, 0), (0, 0))
    with pytest.raises(PointNotOptimal):
        segment_bound_check(inst_c, (0, 0, 1), (0, 1, 0), (0, 1))
    with pytest.raises(PointNotOptimal):
        segment_bound_check(inst_a, (0, 1), (1, 0), (-1,))
    bounded = ProblemInstance(((1,), (-1,)), (1,))
    with pytest.raises(ParameterOutsideDomain):
        break_steps(bounded, (0, 0), (0, -1))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 1000))
def test_subdivision_invariant_on_random_segments(seed, index):
    inst = random_instance(seed)
    cfg = SampleConfig(seed=seed, samples=1)
    b0 = sample_domain_point(inst, cfg, 2 * index)
    b1 = sample_domain_point(inst, cfg, 2 * index + 1)
    seg = connecting_subdivision(inst, b0, b1)
    for lo, hi, D in zip(seg.subdivision, seg.subdivision[1:], seg.pieces):
        for j in range(3):
            b = seg.point(lo + (hi - lo) * Fraction(j, 2))
            assert same_set(optimal_set(inst, b), s_d_set(inst, D, b))
    # the exact family matches the feasibility-based family at every grid point
    for mu in seg.subdivision:
        assert seg.family_at(mu) == tuple(minimal_kkt_at(inst, seg.point(mu)))
    if b0 != b1:
        for x in extreme_optimal_points(inst, b1):
            assert segment_bound_check(inst, b0, b1, x).holds

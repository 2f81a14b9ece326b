from __future__ import annotations

from fractions import Fraction

import pytest

from lipstab.argmin import (
    ProblemInstance,
    active_indices,
    extreme_optimal_points,
    feasible_set,
    in_domain,
    is_optimal,
    optimal_set,
    optimal_value,
)
from lipstab.errors import DimensionError, EmptyOptimalSet, InfeasiblePoint
from lipstab.geometry import HPolyhedron, same_set, vertices


def test_instance_validation():
    with pytest.raises(DimensionError):
        ProblemInstance(((1, 0),), (1,))
    with pytest.raises(DimensionError):
        ProblemInstance((), (1,))
    with pytest.raises(DimensionError):
        ProblemInstance(((1, 0), (1,)), (1, 1))
    assert ProblemInstance(((1, 0), (0, 1)), (1, 1)).dual_feasible is False


def test_feasible_set_examples(inst_a, inst_c):
    F = feasible_set(inst_a, (0, 1))
    assert F.ineq == (((-1,), 0), ((-1,), 1))
    assert F.contains((0,)) and F.contains((100,)) and not F.contains((-1,))
    F = feasible_set(inst_c, (0, 1, 0))
    assert F.ineq == (((1, 0), 0), ((0, 1), 1), ((1, 1), 0))
    empty = ProblemInstance(((1,), (-1,)), (0,))
    assert not in_domain(empty, (0, -1))
    assert feasible_set(empty, (0, -1)).is_empty()


def test_active_indices_examples(inst_a, inst_c):
    assert active_indices(inst_c, (0, 1, 0), (0, 0)) == (1, 3)
    assert active_indices(inst_c, (0, 1, 0), (-1, 1)) == (2, 3)
    assert active_indices(inst_a, (0, 1), (5,)) == ()
    with pytest.raises(InfeasiblePoint):
        active_indices(inst_c, (0, 1, 0), (1, 0))


def test_optimal_set_examples(inst_a, inst_c):
    assert vertices(optimal_set(inst_a, (0, 1))) == [(0,)]
    seg = HPolyhedron(2, (((1, 0), 0), ((-1, 0), 1)), (((1, 1), 0),))
    assert same_set(optimal_set(inst_c, (0, 1, 0)), seg)
    assert vertices(optimal_set(inst_c, (0, 0, 1))) == [(0, 0)]
    assert optimal_value(inst_c, (0, 1, 0)) == 0


def test_optimal_set_outside_domain():
    inst = ProblemInstance(((1,), (-1,)), (0,))
    assert optimal_value(inst, (0, -1)) is None
    assert optimal_set(inst, (0, -1)).is_empty()
    with pytest.raises(EmptyOptimalSet):
        extreme_optimal_points(inst, (0, -1))


def test_is_optimal(inst_c):
    assert is_optimal(inst_c, (0, 1, 0), (Fraction(-1, 2), Fraction(1, 2)))
    assert not is_optimal(inst_c, (0, 1, 0), (-1, 0))
    assert not is_optimal(inst_c, (0, 1, 0), (1, 1))


def test_extreme_optimal_points_examples(inst_a, inst_c, inst_zero):
    assert extreme_optimal_points(inst_c, (0, 1, 0)) == [(-1, 1), (0, 0)]
    assert extreme_optimal_points(inst_a, (0, 1)) == [(0,)]
    assert extreme_optimal_points(inst_zero, (0, 1)) == [(0, 0)]


def test_extreme_points_cut_by_row_space():
    # a single row (1, 0): the optimal set is a half-plane strip, its span cut is a point
    inst = ProblemInstance(((1, 0),), (-1, 0))
    assert extreme_optimal_points(inst, (2,)) == [(2, 0)]

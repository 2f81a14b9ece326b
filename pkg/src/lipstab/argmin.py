"""The parametric LP ``min c'x s.t. a_t'x <= b_t`` and its feasible/optimal sets.

Constraint indices are 1-based throughout (``T = {1, ..., m}``) so that
index sets in reports read the same way as the problem data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .errors import DimensionError, EmptyOptimalSet, InfeasiblePoint
from .geometry import ContainsLine, HPolyhedron, NormChoice, vertices
from .lp import Status, cone_membership, solve

IndexSet = tuple  # sorted tuple of distinct 1-based indices


def index_set(indices: Iterable[int]) -> IndexSet:
    return tuple(sorted(set(indices)))


def canonical_order(D: IndexSet):
    """Sort key: cardinality first, then lexicographic."""
    return (len(D), D)


@dataclass(frozen=True)
class ProblemInstance:
    rows: tuple
    c: tuple
    norm: NormChoice = NormChoice.LINF
    description: str = ""
    dual_feasible: bool = field(init=False, compare=False)

    def __post_init__(self):
        rows = exact.matrix(self.rows)
        c = exact.vector(self.c)
        if not rows:
            raise DimensionError("at least one constraint row is required")
        if not c:
            raise DimensionError("variable dimension must be at least 1")
        if len(rows[0]) != len(c):
            raise DimensionError(f"rows have length {len(rows[0])}, objective has {len(c)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "norm", NormChoice(self.norm))
        lam = cone_membership(rows, exact.neg(c))
        object.__setattr__(self, "dual_feasible", lam is not None)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.rows)

    def row(self, t: int) -> tuple:
        return self.rows[t - 1]

    def check_parameter(self, b: Sequence) -> tuple:
        if len(b) != self.m:
            raise DimensionError(f"parameter has length {len(b)}, expected {self.m}")
        return exact.vector(b)

    def check_point(self, x: Sequence) -> tuple:
        if len(x) != self.n:
            raise DimensionError(f"point has length {len(x)}, expected {self.n}")
        return exact.vector(x)


def feasible_set(inst: ProblemInstance, b: Sequence) -> HPolyhedron:
    b = inst.check_parameter(b)
    return HPolyhedron(inst.n, tuple(zip(inst.rows, b)))


def in_domain(inst: ProblemInstance, b: Sequence) -> bool:
    return not feasible_set(inst, b).is_empty()


def active_indices(inst: ProblemInstance, b: Sequence, x: Sequence) -> IndexSet:
    b = inst.check_parameter(b)
    x = inst.check_point(x)
    out = []
    for t, (a, bt) in enumerate(zip(inst.rows, b), start=1):
        s = exact.dot(a, x)
        if s > bt:
            raise InfeasiblePoint(f"constraint {t} violated: {s} > {bt}")
        if s == bt:
            out.append(t)
    return tuple(out)


def optimal_value(inst: ProblemInstance, b: Sequence):
    """Optimal value, or None when the optimal set is empty."""
    if not inst.dual_feasible:
        return None
    out = solve(feasible_set(inst, b).lp(inst.c))
    if out.status is Status.INFEASIBLE:
        return None
    assert out.optimal, "dual feasibility guarantees a finite optimum"
    return out.value


def optimal_set(inst: ProblemInstance, b: Sequence) -> HPolyhedron:
    """``F(b)`` cut by ``c'x = v*``; the empty polyhedron outside the domain."""
    value = optimal_value(inst, b)
    if value is None:
        return HPolyhedron.empty(inst.n)
    F = feasible_set(inst, b)
    if not any(inst.c):
        return F
    return F.with_constraints(eq=[(inst.c, value)])


def is_optimal(inst: ProblemInstance, b: Sequence, x: Sequence) -> bool:
    b = inst.check_parameter(b)
    x = inst.check_point(x)
    value = optimal_value(inst, b)
    if value is None:
        return False
    return feasible_set(inst, b).contains(x) and exact.dot(inst.c, x) == value


def row_space_equalities(inst: ProblemInstance):
    """Equalities ``z'x = 0`` cutting out ``span{a_t}``."""
    return [(z, Fraction(0)) for z in exact.null_space_basis(inst.rows, inst.n)]


def extreme_optimal_points(inst: ProblemInstance, b: Sequence) -> list:
    """Extreme points of the optimal set intersected with the row space."""
    P = optimal_set(inst, b)
    if P.is_empty():
        raise EmptyOptimalSet(f"no optimal solution at b = {tuple(map(exact.format_rational, b))}")
    P = P.with_constraints(eq=row_space_equalities(inst))
    try:
        return vertices(P)
    except ContainsLine:  # pragma: no cover - the span cut removes all lines
        raise AssertionError("row-space cut left a line in the optimal set")

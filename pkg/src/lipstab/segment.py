"""Behaviour of the argmin mapping along a parameter segment ``b0 + mu (b1 - b0)``."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact
from .argmin import IndexSet, ProblemInstance, in_domain, is_optimal, optimal_set
from .errors import DualInfeasible, ParameterOutsideDomain, PointNotOptimal
from .geometry import distance_to_polyhedron
from .kkt import minimal_kkt_family
from .lp import LpProblem, Status, solve
from .moduli import lipschitz_usc_modulus

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SegmentAnalysis:
    start: tuple
    end: tuple
    intervals: dict  # D -> (lo, hi) or None
    break_steps: tuple
    subdivision: tuple  # 0 = mu_0 < ... < mu_N = 1
    pieces: tuple  # D_k chosen on (mu_{k-1}, mu_k)
    piece_families: tuple = field(default=())

    def family_at(self, mu) -> tuple:
        return _family_at(self.intervals, mu)

    def point(self, mu) -> tuple:
        return tuple(a + mu * (b - a) for a, b in zip(self.start, self.end))


@dataclass(frozen=True)
class SegmentBoundReport:
    ratio: Fraction
    bound: Fraction
    holds: bool
    distance: object
    parameter_distance: Fraction
    steps: tuple  # the mu_k at which the bound is evaluated
    lipusc_values: tuple


def _check_endpoints(inst, b0, b1):
    if not inst.dual_feasible:
        raise DualInfeasible()
    b0 = inst.check_parameter(b0)
    b1 = inst.check_parameter(b1)
    for b in (b0, b1):
        if not in_domain(inst, b):
            raise ParameterOutsideDomain(f"b = ({', '.join(map(exact.format_rational, b))}) is outside dom F")
    return b0, b1


def _interval(inst, D, b0, b1):
    n = inst.n
    Dset = set(D)
    ineq, eq = [], []
    for t, (a, lo, hi) in enumerate(zip(inst.rows, b0, b1), start=1):
        row = a + (-(hi - lo),)
        (eq if t in Dset else ineq).append((row, lo))
    ineq.append(((_ZERO,) * n + (-_ONE,), _ZERO))
    ineq.append(((_ZERO,) * n + (_ONE,), _ONE))
    lower = solve(LpProblem.build(n + 1, (_ZERO,) * n + (_ONE,), ineq, eq))
    if lower.status is Status.INFEASIBLE:
        return None
    upper = solve(LpProblem.build(n + 1, (_ZERO,) * n + (-_ONE,), ineq, eq))
    return lower.value, -upper.value


def domain_interval(inst: ProblemInstance, D: IndexSet, b0: Sequence, b1: Sequence):
    """``[lo, hi]``: the steps ``mu`` in [0, 1] with ``S_D(b0 + mu (b1 - b0))`` nonempty, or None."""
    b0, b1 = _check_endpoints(inst, b0, b1)
    D = tuple(D)
    if D not in minimal_kkt_family(inst):
        raise ValueError(f"{D} is not a minimal KKT index set")
    return _interval(inst, D, b0, b1)


def _family_at(intervals, mu):
    return tuple(D for D, iv in intervals.items() if iv is not None and iv[0] <= mu <= iv[1])


def _all_intervals(inst, b0, b1):
    return {D: _interval(inst, D, b0, b1) for D in minimal_kkt_family(inst)}


def _break_steps(intervals, b0, b1):
    if b0 == b1:
        return []
    cands = sorted({e for iv in intervals.values() if iv is not None for e in iv if 0 < e < 1})
    grid = [_ZERO] + cands + [_ONE]
    out = []
    for k, mu in enumerate(grid[1:-1], start=1):
        here = set(_family_at(intervals, mu))
        left = set(_family_at(intervals, (grid[k - 1] + mu) / 2))
        right = set(_family_at(intervals, (mu + grid[k + 1]) / 2))
        if here > left or here > right:
            out.append(mu)
    return out


def break_steps(inst: ProblemInstance, b0: Sequence, b1: Sequence) -> list:
    """Interior steps where the family of minimal KKT sets changes, sorted."""
    b0, b1 = _check_endpoints(inst, b0, b1)
    return _break_steps(_all_intervals(inst, b0, b1), b0, b1)


def connecting_subdivision(inst: ProblemInstance, b0: Sequence, b1: Sequence) -> SegmentAnalysis:
    b0, b1 = _check_endpoints(inst, b0, b1)
    intervals = _all_intervals(inst, b0, b1)
    steps = _break_steps(intervals, b0, b1)
    grid = [_ZERO] + steps + [_ONE]
    pieces, families = [], []
    for lo, hi in zip(grid, grid[1:]):
        fam = _family_at(intervals, (lo + hi) / 2)
        D = fam[0]  # the family is kept in canonical order
        iv = intervals[D]
        if not (iv[0] <= lo and hi <= iv[1]):  # pragma: no cover - guarded by the piecewise-constant family
            raise AssertionError(f"piece [{lo}, {hi}] not covered by the domain of S_{D}")
        pieces.append(D)
        families.append(fam)
    return SegmentAnalysis(b0, b1, intervals, tuple(steps), tuple(grid), tuple(pieces), tuple(families))


def segment_bound_check(inst: ProblemInstance, b0: Sequence, b1: Sequence, x: Sequence) -> SegmentBoundReport:
    """Compare ``d(x, F_op(b0)) / |b1 - b0|`` with the max Lipschitz-usc modulus at break steps.

    ``x`` must be optimal at ``b1``.  The bound is evaluated at ``mu = 0`` and
    at every break step.
    """
    b0, b1 = _check_endpoints(inst, b0, b1)
    x = inst.check_point(x)
    if b0 == b1:
        raise ValueError("the segment endpoints must differ")
    if not is_optimal(inst, b1, x):
        raise PointNotOptimal("x is not optimal at the segment end")
    dist, _ = distance_to_polyhedron(x, optimal_set(inst, b0), inst.norm)
    pdist = exact.norm_inf(exact.sub(b1, b0))
    ratio = dist / pdist
    steps = (_ZERO,) + tuple(break_steps(inst, b0, b1))
    values = []
    for mu in steps:
        b_mu = tuple(a + mu * (b - a) for a, b in zip(b0, b1))
        values.append(lipschitz_usc_modulus(inst, b_mu).value)
    bound = max(values)
    return SegmentBoundReport(ratio, bound, ratio <= bound, dist, pdist, steps, tuple(values))

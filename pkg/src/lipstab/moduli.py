"""Calmness, Lipschitz upper semicontinuity and Hoffman constants of the argmin mapping.

All three reduce to distances from the origin to end sets of hulls
``conv{a_t, t in S; -a_t, t in D}`` measured in the dual norm.  End-set
distances are memoised on the (deduplicated, sorted) generator set, which
many index pairs share.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .argmin import (
    IndexSet,
    ProblemInstance,
    active_indices,
    canonical_order,
    extreme_optimal_points,
    in_domain,
    is_optimal,
)
from .errors import DualInfeasible, ParameterOutsideDomain, PointNotOptimal
from .exact import INF, inverse
from .geometry import NormChoice, VPolytope, end_set_distance
from .kkt import MinimalKktFamily, check_cap, domain_witness, minimal_kkt_family, minimal_kkt_from_active


class Kind(str, enum.Enum):
    CALMNESS = "calmness"
    LIPSCHITZ_USC = "lipschitz_usc"
    HOFFMAN = "hoffman"


class Canonical(str, enum.Enum):
    ZERO = "Zero"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class ModulusReport:
    kind: Kind
    value: Fraction
    distance: object  # end-set distance whose reciprocal is ``value``; may be inf
    D: IndexSet | None = None
    S: IndexSet | None = None
    point: tuple | None = None
    b: tuple | None = None


@functools.lru_cache(maxsize=1 << 16)
def _cached_end_distance(V: VPolytope, norm: NormChoice):
    return end_set_distance(V, norm)


def hull_generators(inst: ProblemInstance, S: IndexSet, D: IndexSet) -> VPolytope:
    pts = [inst.row(t) for t in S] + [exact.neg(inst.row(t)) for t in D]
    if not pts:
        pts = [exact.zeros(inst.n)]
    return VPolytope(tuple(pts), inst.n)


def index_pair_distance(inst: ProblemInstance, S: IndexSet, D: IndexSet):
    """``d_*(0, end conv{a_t, t in S; -a_t, t in D})`` with the instance's dual norm."""
    return _cached_end_distance(hull_generators(inst, S, D), inst.norm)


def _require_dual_feasible(inst):
    if not inst.dual_feasible:
        raise DualInfeasible()


def _require_domain(inst, b):
    b = inst.check_parameter(b)
    if not in_domain(inst, b):
        raise ParameterOutsideDomain(f"b = ({', '.join(map(exact.format_rational, b))}) is outside dom F")
    return b


def _calmness_from_active(inst, family, b, x, S):
    best, best_D = INF, None
    for D in minimal_kkt_from_active(inst, family, S):
        d = index_pair_distance(inst, S, D)
        if d < best:
            best, best_D = d, D
    return ModulusReport(Kind.CALMNESS, inverse(best), best, best_D, S, x, b)


def calmness_modulus(inst: ProblemInstance, b: Sequence, x: Sequence) -> ModulusReport:
    """Calmness modulus of the argmin mapping at ``(b, x)``.

    The certificate ``D`` is the first minimal KKT set (in canonical order)
    attaining the smallest end-set distance.
    """
    _require_dual_feasible(inst)
    b = _require_domain(inst, b)
    x = inst.check_point(x)
    if not is_optimal(inst, b, x):
        raise PointNotOptimal(f"x = ({', '.join(map(exact.format_rational, x))}) is not optimal at b")
    family = minimal_kkt_family(inst)
    return _calmness_from_active(inst, family, b, x, active_indices(inst, b, x))


def lipschitz_usc_modulus(inst: ProblemInstance, b: Sequence) -> ModulusReport:
    """Maximum calmness modulus over the extreme optimal points at ``b``."""
    _require_dual_feasible(inst)
    b = _require_domain(inst, b)
    family = minimal_kkt_family(inst)
    best = None
    for x in extreme_optimal_points(inst, b):
        r = _calmness_from_active(inst, family, b, x, active_indices(inst, b, x))
        if best is None or r.value > best.value:
            best = r
    return ModulusReport(Kind.LIPSCHITZ_USC, best.value, best.distance, best.D, best.S, best.point, b)


def hoffman_terms(inst: ProblemInstance, family: MinimalKktFamily | None = None):
    """Yield ``(D, S, distance)`` for every ``D`` in the family and ``D ⊆ S ⊆ T``.

    Pairs come in canonical order: by ``D`` first, then ``S`` by cardinality
    and lexicographically.
    """
    _require_dual_feasible(inst)
    check_cap(inst)
    if family is None:
        family = minimal_kkt_family(inst)
    T = range(1, inst.m + 1)
    for D in family:
        rest = [t for t in T if t not in D]
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                S = tuple(sorted(D + extra))
                yield D, S, index_pair_distance(inst, S, D)


def hoffman_constant(inst: ProblemInstance) -> ModulusReport:
    """Hoffman constant with witness: the maximising pair, its parameter and ``x = 0``."""
    best = None
    for D, S, d in hoffman_terms(inst):
        value = inverse(d)
        if best is None or value > best[0]:
            best = (value, d, D, S)
    value, d, D, S = best
    return ModulusReport(Kind.HOFFMAN, value, d, D, S, exact.zeros(inst.n), domain_witness(S, inst.m))


def canonical_hoffman(inst: ProblemInstance) -> Canonical:
    """Hoffman constant under joint perturbation of ``c`` and ``b``: zero or infinite."""
    if all(a == 0 for row in inst.rows for a in row):
        return Canonical.ZERO
    return Canonical.INFINITE


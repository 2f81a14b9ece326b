"""Minimal KKT index families and the pieces ``S_D`` of the argmin mapping."""
from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .argmin import IndexSet, ProblemInstance, canonical_order, in_domain
from .errors import DualInfeasible, EnumerationCapExceeded, ParameterOutsideDomain
from .exact import NoSolution, NotUnique
from .geometry import HPolyhedron

DEFAULT_ENUM_CAP = 24


def enumeration_cap() -> int:
    """Largest ``m`` accepted by the subset enumerations (``HOFFMAN_ENUM_CAP``)."""
    raw = os.environ.get("HOFFMAN_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


def check_cap(inst: ProblemInstance):
    cap = enumeration_cap()
    if inst.m > cap:
        raise EnumerationCapExceeded(f"m = {inst.m} exceeds the enumeration cap {cap} (set HOFFMAN_ENUM_CAP)")


@dataclass(frozen=True)
class MinimalKktFamily:
    members: tuple
    at: tuple | None = None  # None for the global family, else the parameter b

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, D):
        return tuple(D) in self.members


def multipliers(inst: ProblemInstance, D: IndexSet):
    """Unique ``lam`` with ``-c = sum_{t in D} lam_t a_t``; None if absent or not unique."""
    cols = exact.transpose([inst.row(t) for t in D], inst.n)
    try:
        return exact.solve_unique(cols, exact.neg(inst.c), len(D))
    except (NoSolution, NotUnique):
        return None


def is_minimal_kkt(inst: ProblemInstance, D: IndexSet) -> bool:
    """Independent rows with a strictly positive multiplier vector."""
    lam = multipliers(inst, D)
    return lam is not None and all(v > 0 for v in lam)


def minimal_kkt_family(inst: ProblemInstance) -> MinimalKktFamily:
    if not inst.dual_feasible:
        raise DualInfeasible()
    check_cap(inst)
    return _enumerate_family(inst)


@functools.lru_cache(maxsize=256)
def _enumerate_family(inst: ProblemInstance) -> MinimalKktFamily:
    found = []
    for k in range(inst.n + 1):
        for D in combinations(range(1, inst.m + 1), k):
            if is_minimal_kkt(inst, D):
                found.append(D)
    return MinimalKktFamily(tuple(sorted(found, key=canonical_order)))


def s_d_set(inst: ProblemInstance, D: IndexSet, b: Sequence) -> HPolyhedron:
    """``{x : a_t'x <= b_t (t not in D), a_t'x = b_t (t in D)}``."""
    b = inst.check_parameter(b)
    if any(not 1 <= t <= inst.m for t in D):
        raise ValueError(f"index set {D} is not contained in 1..{inst.m}")
    Dset = set(D)
    ineq = [(a, bt) for t, (a, bt) in enumerate(zip(inst.rows, b), start=1) if t not in Dset]
    eq = [(inst.row(t), b[t - 1]) for t in sorted(Dset)]
    return HPolyhedron(inst.n, tuple(ineq), tuple(eq))


def minimal_kkt_at(inst: ProblemInstance, b: Sequence, family: MinimalKktFamily | None = None) -> MinimalKktFamily:
    """Members ``D`` of the global family whose piece ``S_D(b)`` is nonempty."""
    if not inst.dual_feasible:
        raise DualInfeasible()
    b = inst.check_parameter(b)
    if not in_domain(inst, b):
        raise ParameterOutsideDomain(f"b = {tuple(map(exact.format_rational, b))} is outside dom F")
    if family is None:
        family = minimal_kkt_family(inst)
    members = tuple(D for D in family if not s_d_set(inst, D, b).is_empty())
    return MinimalKktFamily(members, b)


def minimal_kkt_from_active(inst: ProblemInstance, family: MinimalKktFamily, active: IndexSet) -> tuple:
    """Members of the global family contained in an active index set.

    For any optimal point this equals the family at its parameter, which
    avoids solving one LP per member.
    """
    S = set(active)
    return tuple(D for D in family if S.issuperset(D))


def domain_witness(D: IndexSet, m: int) -> tuple:
    """Parameter that is 0 on ``D`` and 1 elsewhere."""
    Dset = set(D)
    return tuple(Fraction(0 if t in Dset else 1) for t in range(1, m + 1))


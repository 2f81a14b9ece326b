"""Polytope conversions, vertex enumeration and exact l1/l-inf distances."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .errors import DimensionError, TooManyGenerators
from .exact import INF, NoSolution, NotUnique, dot, primitive
from .lp import LpProblem, Status, solve

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_MAX_GENERATORS = 24


class NormChoice(str, enum.Enum):
    L1 = "l1"
    LINF = "linf"

    @property
    def dual(self) -> "NormChoice":
        return NormChoice.LINF if self is NormChoice.L1 else NormChoice.L1

    def __call__(self, u) -> Fraction:
        return exact.norm_1(u) if self is NormChoice.L1 else exact.norm_inf(u)


class ContainsLine(Exception):
    """The polyhedron has a nontrivial lineality space, so it has no vertices."""


@dataclass(frozen=True)
class HPolyhedron:
    """``{u : w'u <= beta for (w, beta) in ineq;  v'u = gamma for (v, gamma) in eq}``."""

    n: int
    ineq: tuple = ()
    eq: tuple = ()

    def __post_init__(self):
        f = exact.as_fraction
        object.__setattr__(self, "ineq", tuple((exact.vector(w), f(b)) for w, b in self.ineq))
        object.__setattr__(self, "eq", tuple((exact.vector(v), f(g)) for v, g in self.eq))
        for w, _ in (*self.ineq, *self.eq):
            if len(w) != self.n:
                raise DimensionError(f"constraint of length {len(w)} in dimension {self.n}")

    @classmethod
    def empty(cls, n: int) -> "HPolyhedron":
        return cls(n, ((exact.zeros(n), Fraction(-1)),))

    def with_constraints(self, ineq=(), eq=()) -> "HPolyhedron":
        return HPolyhedron(self.n, self.ineq + tuple(ineq), self.eq + tuple(eq))

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.n:
            raise DimensionError(f"point of length {len(x)} in dimension {self.n}")
        return all(dot(w, x) <= b for w, b in self.ineq) and all(dot(v, x) == g for v, g in self.eq)

    def lp(self, objective=None) -> LpProblem:
        return LpProblem.build(self.n, objective, self.ineq, self.eq)

    def is_empty(self) -> bool:
        return solve(self.lp()).status is Status.INFEASIBLE

    def rows(self):
        return [w for w, _ in self.ineq] + [v for v, _ in self.eq]


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of finitely many points; duplicates are removed and the rest sorted."""

    points: tuple
    n: int = field(default=-1)

    def __post_init__(self):
        pts = sorted({exact.vector(p) for p in self.points})
        if not pts:
            raise ValueError("a VPolytope needs at least one point")
        n = len(pts[0]) if self.n < 0 else self.n
        if any(len(p) != n for p in pts):
            raise DimensionError("points of mixed dimension")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "n", n)

    def scaled(self, alpha) -> "VPolytope":
        return VPolytope(tuple(exact.scale(Fraction(alpha), p) for p in self.points), self.n)


def v_to_h(P: VPolytope, max_generators: int = DEFAULT_MAX_GENERATORS) -> HPolyhedron:
    """Facet description of ``conv(P.points)``.

    Equalities describe the affine hull.  Facet normals are taken inside the
    direction space of the affine hull and scaled to coprime integers, which
    makes the representation canonical.  Facets are found by trying every
    subset of ``dim`` points, so the cost is ``C(k, dim)``.
    """
    pts = P.points
    if len(pts) > max_generators:
        raise TooManyGenerators(f"{len(pts)} generators exceed the cap of {max_generators}")
    n = P.n
    p0 = pts[0]
    dirs = [exact.sub(p, p0) for p in pts[1:]]
    normals = exact.null_space_basis(dirs, n)
    eq = tuple((z, dot(z, p0)) for z in normals)
    basis, _ = exact.rref(dirs, n) if dirs else ([], [])
    r = len(basis)
    facets = set()
    if r:
        for subset in combinations(pts, r):
            q0 = subset[0]
            K = [tuple(dot(exact.sub(q, q0), B) for B in basis) for q in subset[1:]]
            ys = exact.null_space_basis(K, r)
            if len(ys) != 1:
                continue
            w = primitive([sum((y * B[i] for y, B in zip(ys[0], basis)), _ZERO) for i in range(n)])
            beta = dot(w, q0)
            side = {(dot(w, p) > beta) - (dot(w, p) < beta) for p in pts}
            if 1 not in side:
                facets.add((w, beta))
            elif -1 not in side:
                facets.add((exact.neg(w), -beta))
    return HPolyhedron(n, tuple(sorted(facets)), eq)


def vertices(P: HPolyhedron) -> list:
    """Extreme points of ``P``, sorted; raises :class:`ContainsLine` if there are none."""
    n = P.n
    eq_rows = [v for v, _ in P.eq]
    eq_rhs = [g for _, g in P.eq]
    if exact.rank(P.rows(), n) < n:
        if P.is_empty():
            return []
        raise ContainsLine
    k = n - exact.rank(eq_rows, n)
    found = set()
    for subset in combinations(range(len(P.ineq)), k):
        M = eq_rows + [P.ineq[i][0] for i in subset]
        rhs = eq_rhs + [P.ineq[i][1] for i in subset]
        try:
            x = exact.solve_unique(M, rhs, n)
        except (NoSolution, NotUnique):
            continue
        if all(dot(w, x) <= b for w, b in P.ineq):
            found.add(x)
    return sorted(found)


def min_norm_in_hull(points: Sequence[Sequence], norm: NormChoice):
    """Exact ``min ||u||`` over ``conv(points)``; returns (value, minimiser)."""
    k = len(points)
    n = len(points[0])
    # variables: lam (k), then s (n) for l1 or a single bound t for l-inf
    naux = n if norm is NormChoice.L1 else 1
    nv = k + naux
    ineq = [(exact.neg(exact.unit(nv, j)), _ZERO) for j in range(nv)]
    for i in range(n):
        coords = tuple(p[i] for p in points)
        aux = [_ZERO] * naux
        aux[i if norm is NormChoice.L1 else 0] = -_ONE
        ineq.append((coords + tuple(aux), _ZERO))
        ineq.append((tuple(-c for c in coords) + tuple(aux), _ZERO))
    eq = [((_ONE,) * k + (_ZERO,) * naux, _ONE)]
    objective = (_ZERO,) * k + (_ONE,) * naux
    out = solve(LpProblem.build(nv, objective, ineq, eq))
    lam = out.point[:k]
    u = tuple(sum((l * p[i] for l, p in zip(lam, points)), _ZERO) for i in range(n))
    return out.value, u


def end_set_constraints(H: HPolyhedron):
    """Constraints with positive right side, equalities split into pairs."""
    rows = list(H.ineq)
    for v, g in H.eq:
        rows.append((v, g))
        rows.append((exact.neg(v), -g))
    return [(w, b) for w, b in rows if b > 0]


def end_set_distance(
    V: VPolytope,
    dual_of: NormChoice,
    max_generators: int = DEFAULT_MAX_GENERATORS,
    H: HPolyhedron | None = None,
):
    """Distance from the origin to ``end conv(V)`` in the dual of ``dual_of``.

    A point of the polytope lies in the end set exactly when some constraint
    with positive right side is active there, so the end set is the union
    of those faces; each face is the hull of the generators lying on it.
    Returns ``inf`` when no such face exists (the polytope is ``{0}``).

    ``H`` may supply any H-description of ``conv(V)``, redundant rows
    included; by default the facet description from :func:`v_to_h` is used.
    """
    norm = NormChoice(dual_of).dual
    if H is None:
        H = v_to_h(V, max_generators)
    best = INF
    seen = set()
    for w, b in end_set_constraints(H):
        face = tuple(p for p in V.points if dot(w, p) == b)
        if not face or face in seen:
            continue
        seen.add(face)
        value, _ = min_norm_in_hull(face, norm)
        if value < best:
            best = value
    return best


def distance_to_polyhedron(x: Sequence, P: HPolyhedron, norm: NormChoice):
    """``(min ||y - x||, y)`` over ``y`` in ``P``; ``(inf, None)`` if ``P`` is empty."""
    n = P.n
    if len(x) != n:
        raise DimensionError(f"point of length {len(x)} in dimension {n}")
    x = exact.vector(x)
    naux = n if norm is NormChoice.L1 else 1
    nv = n + naux
    pad = (_ZERO,) * naux
    ineq = [(w + pad, b) for w, b in P.ineq]
    eq = [(v + pad, g) for v, g in P.eq]
    for j in range(naux):
        ineq.append((tuple(-_ONE if k == n + j else _ZERO for k in range(nv)), _ZERO))
    for i in range(n):
        aux = [_ZERO] * naux
        aux[i if norm is NormChoice.L1 else 0] = -_ONE
        e = exact.unit(n, i)
        ineq.append((e + tuple(aux), x[i]))
        ineq.append((exact.neg(e) + tuple(aux), -x[i]))
    objective = (_ZERO,) * n + (_ONE,) * naux
    out = solve(LpProblem.build(nv, objective, ineq, eq))
    if out.status is Status.INFEASIBLE:
        return INF, None
    return out.value, out.point[:n]


def is_subset(P: HPolyhedron, Q: HPolyhedron) -> bool:
    """Exact test of ``P ⊆ Q`` by maximising each constraint of ``Q`` over ``P``."""
    if P.n != Q.n:
        raise DimensionError("polyhedra of different dimension")
    if P.is_empty():
        return True
    checks = list(Q.ineq) + list(Q.eq) + [(exact.neg(v), -g) for v, g in Q.eq]
    for w, b in checks:
        out = solve(P.lp(exact.neg(w)))
        if out.status is Status.UNBOUNDED or -out.value > b:
            return False
    return True


def same_set(P: HPolyhedron, Q: HPolyhedron) -> bool:
    return is_subset(P, Q) and is_subset(Q, P)

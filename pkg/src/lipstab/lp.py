"""Exact two-phase simplex over the rationals (Bland's rule).

Problems are stated with free variables::

    minimize  c'x   subject to   G x <= g,   E x = e.

The tableau itself runs on :class:`gmpy2.mpq` (exact, much faster than
:class:`fractions.Fraction`); inputs and outputs are fractions.

Inequality rows of the form ``-alpha * x_j <= 0`` (alpha > 0) are recognised
as sign restrictions and the variable is kept nonnegative instead of being
split, which keeps the tableau small for the norm-minimisation LPs built
elsewhere.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .errors import DimensionError
from .exact import vector

_ZERO = Fraction(0)
_ONE = Fraction(1)
_QZERO = mpq(0)
_QONE = mpq(1)


def _q(v) -> mpq:
    if type(v) is not Fraction:
        v = Fraction(v)
    return mpq(v.numerator, v.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class Status(str, enum.Enum):
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    OPTIMAL = "optimal"


@dataclass(frozen=True)
class LpProblem:
    n: int
    objective: tuple
    ineq_lhs: tuple = ()
    ineq_rhs: tuple = ()
    eq_lhs: tuple = ()
    eq_rhs: tuple = ()

    def __post_init__(self):
        if len(self.objective) != self.n:
            raise DimensionError(f"objective has length {len(self.objective)}, expected {self.n}")
        if len(self.ineq_lhs) != len(self.ineq_rhs):
            raise DimensionError("inequality rows and right sides differ in count")
        if len(self.eq_lhs) != len(self.eq_rhs):
            raise DimensionError("equality rows and right sides differ in count")
        for row in (*self.ineq_lhs, *self.eq_lhs):
            if len(row) != self.n:
                raise DimensionError(f"constraint row of length {len(row)}, expected {self.n}")

    @classmethod
    def build(cls, n, objective=None, ineq=(), eq=()):
        """Convenience constructor from ``(row, rhs)`` pairs."""
        obj = vector(objective) if objective is not None else (_ZERO,) * n
        ineq = list(ineq)
        eq = list(eq)
        return cls(
            n,
            obj,
            tuple(vector(r) for r, _ in ineq),
            vector(b for _, b in ineq),
            tuple(vector(r) for r, _ in eq),
            vector(b for _, b in eq),
        )


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    point: tuple | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _pivot(T, obj, basis, r, j):
    pr = T[r]
    p = pr[j]
    if p != _QONE:
        pr = [a / p for a in pr]
        T[r] = pr
    nz = [k for k, a in enumerate(pr) if a]
    for i, row in enumerate(T):
        if i != r:
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * pr[k]
    f = obj[j]
    if f:
        for k in nz:
            obj[k] -= f * pr[k]
    basis[r] = j


def _run(T, obj, basis, ncols):
    """Bland's rule on columns ``< ncols``; returns False when unbounded."""
    while True:
        j = next((k for k in range(ncols) if obj[k] < 0), None)
        if j is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[j]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, obj, basis, best[1], j)


def _standard_form(p: LpProblem):
    nonneg = [False] * p.n
    kept = []
    for row, rhs in zip(p.ineq_lhs, p.ineq_rhs):
        nz = [k for k, a in enumerate(row) if a]
        if rhs == 0 and len(nz) == 1 and row[nz[0]] < 0:
            nonneg[nz[0]] = True
        else:
            kept.append((row, rhs))
    # column layout: per variable either (+) or (+, -)
    colmap = []
    for j in range(p.n):
        colmap.append((j, 1))
        if not nonneg[j]:
            colmap.append((j, -1))
    return kept, colmap


def solve(p: LpProblem) -> LpOutcome:
    """Minimise ``p.objective`` exactly; deterministic for identical input."""
    kept, colmap = _standard_form(p)
    nstruct = len(colmap)
    rows = [(r, b, True) for r, b in kept] + [(r, b, False) for r, b in zip(p.eq_lhs, p.eq_rhs)]
    nslack = len(kept)
    T = []
    basis = []
    artificial_rows = []
    for i, (r, b, is_ineq) in enumerate(rows):
        qr = [_q(a) for a in r]
        line = [qr[j] * s for j, s in colmap] + [_QZERO] * nslack
        if is_ineq:
            line[nstruct + i] = _QONE
        b = _q(b)
        if b < 0:
            line = [-a for a in line]
            b = -b
        T.append(line + [b])
        if is_ineq and line[nstruct + i] == _QONE:
            basis.append(nstruct + i)
        else:
            basis.append(None)
            artificial_rows.append(i)
    nreal = nstruct + nslack
    nart = len(artificial_rows)
    for i, line in enumerate(T):
        rhs = line.pop()
        line.extend([_QZERO] * nart)
        line.append(rhs)
    for k, i in enumerate(artificial_rows):
        T[i][nreal + k] = _QONE
        basis[i] = nreal + k

    if nart:
        obj = [_QZERO] * (nreal + nart + 1)
        for k in range(nart):
            obj[nreal + k] = _QONE
        for i in artificial_rows:
            for k, a in enumerate(T[i]):
                if a:
                    obj[k] -= a
        _run(T, obj, basis, nreal + nart)
        if obj[-1] != 0:
            return LpOutcome(Status.INFEASIBLE)
        # drive zero-level artificials out, dropping redundant rows
        i = 0
        while i < len(T):
            if basis[i] >= nreal:
                j = next((k for k in range(nreal) if T[i][k] != 0), None)
                if j is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, obj, basis, i, j)
            i += 1
        for line in T:
            del line[nreal:nreal + nart]

    qc = [_q(a) for a in p.objective]
    cost = [qc[j] * s for j, s in colmap] + [_QZERO] * nslack
    obj = cost + [_QZERO]
    for i, bj in enumerate(basis):
        cb = cost[bj]
        if cb:
            for k, a in enumerate(T[i]):
                if a:
                    obj[k] -= cb * a
    if not _run(T, obj, basis, nreal):
        return LpOutcome(Status.UNBOUNDED)
    z = [_QZERO] * nreal
    for i, bj in enumerate(basis):
        z[bj] = T[i][-1]
    x = [_QZERO] * p.n
    for col, (j, s) in enumerate(colmap):
        if z[col]:
            x[j] += s * z[col]
    x = tuple(_frac(v) for v in x)
    value = sum((c * v for c, v in zip(p.objective, x)), _ZERO)
    return LpOutcome(Status.OPTIMAL, x, value)


def is_feasible(p: LpProblem) -> bool:
    if any(p.objective):
        p = LpProblem(p.n, (_ZERO,) * p.n, p.ineq_lhs, p.ineq_rhs, p.eq_lhs, p.eq_rhs)
    return solve(p).status is not Status.INFEASIBLE


def cone_membership(generators: Sequence[Sequence], target: Sequence) -> tuple | None:
    """Nonnegative ``lam`` with ``sum lam_t g_t = target``, or None.

    An empty generator list spans the cone ``{0}``.
    """
    dim = len(target)
    for g in generators:
        if len(g) != dim:
            raise DimensionError(f"generator of length {len(g)}, target has {dim}")
    k = len(generators)
    if k == 0:
        return () if all(v == 0 for v in target) else None
    ineq = [(tuple(-_ONE if i == j else _ZERO for i in range(k)), _ZERO) for j in range(k)]
    eq = [(tuple(Fraction(g[r]) for g in generators), Fraction(target[r])) for r in range(dim)]
    out = solve(LpProblem.build(k, None, ineq, eq))
    return out.point if out.optimal else None

"""Exact rational scalars, vectors and the elimination kernel.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Vectors are tuples of fractions and matrices are
tuples of row vectors; every operation checks dimensions explicitly.
Extended values (distances, moduli) are fractions or ``math.inf``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, InputError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

INF = math.inf

_RATIONAL_RE = re.compile(r"^[-−]?\d+(/\d+)?$")


class NoSolution(ArithmeticError):
    pass


class NotUnique(ArithmeticError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` with an optional leading minus sign."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise InputError(f"not a rational literal: {text!r}")
    sign = -1 if text[0] in "-−" else 1
    body = text.lstrip("-−")
    num, _, den = body.partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return sign * Fraction(int(num), int(den) if den else 1)


def format_rational(q) -> str:
    if q == INF:
        return "inf"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_vector(text: str) -> Vector:
    """Comma-separated rationals, e.g. ``"0,1/2,-3"``."""
    parts = text.split(",")
    if not text or any(p == "" for p in parts):
        raise InputError(f"malformed vector: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def inverse(value):
    """Reciprocal on the extended nonnegative rationals; 1/inf = 0."""
    if value == INF:
        return Fraction(0)
    if value == 0:
        raise ZeroDivisionError("reciprocal of zero is undefined here")
    return 1 / Fraction(value)


def to_decimal(value, digits: int = 12) -> str:
    if value == INF:
        return "inf"
    from decimal import Context

    q = Fraction(value)
    ctx = Context(prec=digits)
    return str(ctx.divide(ctx.create_decimal(q.numerator), ctx.create_decimal(q.denominator)))


def as_fraction(v) -> Fraction:
    return v if type(v) is Fraction else Fraction(v)


def vector(values: Iterable) -> Vector:
    return tuple(v if type(v) is Fraction else Fraction(v) for v in values)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def _same_len(u, v):
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")


def dot(u: Sequence, v: Sequence) -> Fraction:
    _same_len(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v) -> Vector:
    _same_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vector:
    _same_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(alpha, u) -> Vector:
    return tuple(alpha * a for a in u)


def neg(u) -> Vector:
    return tuple(-a for a in u)


def norm_inf(u) -> Fraction:
    return max((abs(a) for a in u), default=Fraction(0))


def norm_1(u) -> Fraction:
    return sum((abs(a) for a in u), Fraction(0))


def matrix(rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
    out = tuple(vector(r) for r in rows)
    widths = {len(r) for r in out}
    if ncols is not None:
        widths.add(ncols)
    if len(widths) > 1:
        raise DimensionError(f"ragged matrix, row widths {sorted(widths)}")
    return out


def transpose(M: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def matvec(M: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in M)


def _ncols(M, ncols):
    if M:
        width = len(M[0])
        if any(len(r) != width for r in M):
            raise DimensionError("ragged matrix")
        if ncols is not None and ncols != width:
            raise DimensionError(f"expected {ncols} columns, got {width}")
        return width
    if ncols is None:
        raise DimensionError("column count of an empty matrix must be given")
    return ncols


def _integer_rows(M) -> list[list[int]]:
    rows = []
    for r in M:
        den = math.lcm(*(Fraction(a).denominator for a in r)) if r else 1
        rows.append([int(Fraction(a) * den) for a in r])
    return rows


def rank(M: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    n = _ncols(M, ncols) if M else 0
    A = _integer_rows(M)
    m = len(A)
    r = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(r, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        for i in range(r + 1, m):
            a_ic = A[i][col]
            row_i, row_r = A[i], A[r]
            for j in range(col, n):
                row_i[j] = (p * row_i[j] - a_ic * row_r[j]) // prev
        prev = p
        r += 1
        if r == m:
            break
    return r


def rref(M: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    n = _ncols(M, ncols)
    A = [[a if type(a) is Fraction else Fraction(a) for a in r] for r in M]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        if p != 1:
            A[r] = [a / p for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]], pivots


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero vector to coprime integers; the sign is preserved."""
    den = math.lcm(*(Fraction(a).denominator for a in v))
    ints = [int(Fraction(a) * den) for a in v]
    g = math.gcd(*ints)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(a // g) for a in ints)


def null_space_basis(M: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{z : M z = 0}``, one vector per free column of the RREF.

    Each vector is scaled to coprime integers with a positive entry at its
    free column, so the output is canonical for a given matrix.
    """
    n = _ncols(M, ncols)
    R, pivots = rref(M, n) if M else ([], [])
    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        z = [Fraction(0)] * n
        z[free] = Fraction(1)
        for row, pc in zip(R, pivots):
            z[pc] = -row[free]
        basis.append(primitive(z))
    return basis


def solve_unique(M: Sequence[Sequence], v: Sequence, ncols: int | None = None) -> Vector:
    """Solve ``M lam = v``.

    Raises :class:`NoSolution` if ``v`` is outside the range of ``M`` and
    :class:`NotUnique` if the columns of ``M`` are dependent.
    """
    n = _ncols(M, ncols)
    if len(v) != len(M):
        raise DimensionError(f"right side has length {len(v)}, matrix has {len(M)} rows")
    aug = [tuple(row) + (Fraction(b),) for row, b in zip(M, v)]
    R, pivots = rref(aug, n + 1) if aug else ([], [])
    if n in pivots:
        raise NoSolution
    if len(pivots) < n:
        raise NotUnique
    lam = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        lam[pc] = row[n]
    return tuple(lam)

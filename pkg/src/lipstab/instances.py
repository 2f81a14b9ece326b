"""Bundled example instances and a seeded generator of small random ones."""
from __future__ import annotations

from fractions import Fraction

from .argmin import ProblemInstance
from .geometry import NormChoice
from .rng import Lcg64

BUNDLED = {
    "instanceA": dict(rows=[[-1], [-1]], c=[1], description="n=1, a1=a2=-1, c=1"),
    "instanceB": dict(rows=[[-2]], c=[1], description="n=1, a1=-2, c=1"),
    "instanceC": dict(rows=[[1, 0], [0, 1], [1, 1]], c=[-1, -1], description="n=2, rows (1,0),(0,1),(1,1), c=(-1,-1)"),
    "instanceZero": dict(rows=[[0, 0], [0, 0]], c=[0, 0], description="all-zero rows, c=0"),
}


def bundled(name: str) -> ProblemInstance:
    entry = BUNDLED[name]
    return ProblemInstance(tuple(map(tuple, entry["rows"])), tuple(entry["c"]), NormChoice.LINF, entry["description"])


def random_instance(seed: int, n_max: int = 3, m_max: int = 5, bound: int = 2) -> ProblemInstance:
    """Dual-feasible instance with integer entries in ``[-bound, bound]``.

    The objective is drawn from the same box and redrawn until ``-c`` lies
    in the cone of the rows; after 50 misses it falls back to minus the sum
    of a random nonempty subset of rows.
    """
    g = Lcg64.for_index(seed, 0)
    n = g.randint(1, n_max)
    m = g.randint(1, m_max)
    rows = tuple(tuple(Fraction(g.randint(-bound, bound)) for _ in range(n)) for _ in range(m))
    norm = NormChoice.LINF if g.randbelow(2) == 0 else NormChoice.L1
    desc = f"random seed={seed} n={n} m={m}"
    for _ in range(50):
        c = tuple(Fraction(g.randint(-bound, bound)) for _ in range(n))
        inst = ProblemInstance(rows, c, norm, desc)
        if inst.dual_feasible:
            return inst
    picked = [r for r in rows if g.randbelow(2)] or [rows[0]]
    c = tuple(-sum(col, Fraction(0)) for col in zip(*picked))
    return ProblemInstance(rows, c, norm, desc)

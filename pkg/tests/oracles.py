"""Independent brute-force reference computations.

Nothing here imports the package's LP solver or elimination kernel except
``extreme_points_by_lp``; everything else is plain Fraction arithmetic on
tiny instances, slow but easy to audit.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

INF = float("inf")


def _F(v):
    return Fraction(v)


def solve_square(M, v):
    """Unique solution of a square system, or None when singular."""
    n = len(M)
    A = [[_F(a) for a in row] + [_F(b)] for row, b in zip(M, v)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return tuple(A[i][n] / A[i][i] for i in range(n))


def rank(M):
    A = [[_F(a) for a in row] for row in M]
    r = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col] / A[r][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def dot(u, v):
    return sum((_F(a) * _F(b) for a, b in zip(u, v)), Fraction(0))


def brute_lp_min(A, b, c):
    """Minimum of c'x over {Ax <= b} by enumerating basic feasible points.

    Assumes the polyhedron is pointed and the minimum is finite; returns None
    when no vertex exists (infeasible).
    """
    n = len(c)
    best = None
    for rows in combinations(range(len(A)), n):
        x = solve_square([A[i] for i in rows], [b[i] for i in rows])
        if x is None or any(dot(a, x) > bi for a, bi in zip(A, b)):
            continue
        val = dot(c, x)
        if best is None or val < best:
            best = val
    return best


def in_cone(generators, target):
    """Caratheodory test: target is a nonnegative combination of an independent subset."""
    target = tuple(_F(t) for t in target)
    if all(t == 0 for t in target):
        return True
    n = len(target)
    for k in range(1, min(n, len(generators)) + 1):
        for sub in combinations(generators, k):
            if rank(sub) < k:
                continue
            # pick k independent coordinates to get a square system, then verify all
            cols = [list(col) for col in zip(*sub)]  # n rows, k columns
            for coords in combinations(range(n), k):
                M = [cols[i] for i in coords]
                lam = solve_square(M, [target[i] for i in coords])
                if lam is None:
                    continue
                if all(l >= 0 for l in lam) and all(
                    sum((l * g[i] for l, g in zip(lam, sub)), Fraction(0)) == target[i] for i in range(n)
                ):
                    return True
                break
    return False


def minimal_kkt_sets(rows, c):
    """Inclusion-minimal D with -c in cone{a_t : t in D}, by subset removal; 1-based."""
    neg_c = tuple(-_F(v) for v in c)
    m = len(rows)
    found = []
    for k in range(0, m + 1):
        for D in combinations(range(1, m + 1), k):
            gens = [rows[t - 1] for t in D]
            if not in_cone(gens, neg_c):
                continue
            if all(not in_cone([rows[s - 1] for s in D if s != t], neg_c) for t in D):
                found.append(D)
    return found


def norm(u, kind):
    return sum(abs(a) for a in u) if kind == "l1" else max(abs(a) for a in u)


def segment_min_norm(p, q, kind):
    """min over t in [0,1] of the l1/linf norm of p + t(q - p) (2-D or 1-D)."""
    d = [b - a for a, b in zip(p, q)]
    ts = {Fraction(0), Fraction(1)}
    for i in range(len(p)):
        if d[i] != 0:
            ts.add(-p[i] / d[i])
    if kind == "linf":
        for i, j in combinations(range(len(p)), 2):
            for s in (1, -1):
                den = d[i] - s * d[j]
                if den != 0:
                    ts.add(-(p[i] - s * p[j]) / den)
    vals = [norm([a + t * b for a, b in zip(p, d)], kind) for t in ts if 0 <= t <= 1]
    return min(vals)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_2d(points):
    """Counter-clockwise hull vertices (monotone chain, collinear points dropped)."""
    pts = sorted(set(tuple(map(_F, p)) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _ray_exits(u, pts):
    """True when no mu > 1 keeps mu*u inside conv(pts) (collinear 1-D check)."""
    return all(dot(p, u) <= dot(u, u) for p in pts)


def end_distance_2d(points, kind):
    """d(0, end conv(points)) measured in ``kind`` for points in the plane."""
    H = hull_2d(points)
    if len(H) == 1:
        p = H[0]
        return INF if all(a == 0 for a in p) else norm(p, kind)
    if len(H) == 2:
        p, q = H
        if _cross((0, 0), p, q) != 0:
            return segment_min_norm(p, q, kind)
        # segment on a line through the origin: end points that point outward
        ends = [e for e in (p, q) if any(e) and _ray_exits(e, (p, q))]
        return min((norm(e, kind) for e in ends), default=INF)
    best = INF
    for p, q in zip(H, H[1:] + H[:1]):
        # counter-clockwise: the origin is strictly on the inner side iff cross > 0
        if _cross(p, q, (0, 0)) > 0:
            best = min(best, segment_min_norm(p, q, kind))
    return best


def end_distance_1d(values):
    vals = [_F(v[0]) for v in values]
    lo, hi = min(vals), max(vals)
    ends = []
    if hi > 0:
        ends.append(hi)
    if lo < 0:
        ends.append(-lo)
    return min(ends, default=INF)


def end_distance(points, kind):
    if len(points[0]) == 1:
        return end_distance_1d(points)
    return end_distance_2d(points, kind)


def hoffman_term_table(rows, c, kind_var):
    """{(D, S): 1/distance} for n <= 2, distances in the dual of ``kind_var``."""
    dual = "l1" if kind_var == "linf" else "linf"
    m = len(rows)
    n = len(c)
    out = {}
    for D in minimal_kkt_sets(rows, c):
        rest = [t for t in range(1, m + 1) if t not in D]
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                S = tuple(sorted(D + extra))
                gens = [tuple(rows[t - 1]) for t in S] + [tuple(-_F(a) for a in rows[t - 1]) for t in D]
                if not gens:
                    gens = [(Fraction(0),) * n]
                d = end_distance(gens, dual)
                out[(D, S)] = Fraction(0) if d == INF else 1 / d
    return out


def hoffman_constant(rows, c, kind_var):
    return max(hoffman_term_table(rows, c, kind_var).values())


def extreme_points_by_lp(points):
    """Points not in the hull of the others, tested with an exact LP."""
    from lipstab.lp import cone_membership

    pts = sorted(set(tuple(map(_F, p)) for p in points))
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others:
            out.append(p)
            continue
        # p in conv(others)  <=>  (p, 1) in cone{(q, 1)}
        lifted = [q + (Fraction(1),) for q in others]
        if cone_membership(lifted, p + (Fraction(1),)) is None:
            out.append(p)
    return out


def optimal_vertices(A, b, c):
    """Vertices of the optimal set of min c'x s.t. Ax <= b (bounded optimal set assumed)."""
    v = brute_lp_min(A, b, c)
    if v is None:
        return []
    A2 = [list(r) for r in A] + [list(c), [-_F(a) for a in c]]
    b2 = list(b) + [v, -v]
    n = len(c)
    out = set()
    for rows in combinations(range(len(A2)), n):
        x = solve_square([A2[i] for i in rows], [b2[i] for i in rows])
        if x is not None and all(dot(a, x) <= bi for a, bi in zip(A2, b2)):
            out.add(x)
    return sorted(out)

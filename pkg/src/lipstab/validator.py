"""Seeded, exact-arithmetic empirical certification of the computed constants.

Parameters are drawn on a rational grid, so every ratio
``d(x, F_op(b~)) / |b - b~|_inf`` is an exact fraction and every comparison
against the computed Hoffman constant is decidable.  Random pairs are
complemented by probes around the Hoffman witness parameter, where the
supremum is known to be attained along suitable directions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .argmin import ProblemInstance, active_indices, extreme_optimal_points, in_domain, optimal_set
from .errors import DualInfeasible, ParameterOutsideDomain
from .geometry import distance_to_polyhedron
from .kkt import domain_witness, minimal_kkt_family
from .moduli import (
    _calmness_from_active,
    calmness_modulus,
    hoffman_constant,
    hoffman_terms,
    lipschitz_usc_modulus,
)
from .rng import Lcg64

_ZERO = Fraction(0)
PROBE_FRACTIONS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    samples: int = 200
    grid_denominator: int = 4
    radius: Fraction = Fraction(2)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.samples < 1 or self.grid_denominator < 1:
            raise ValueError("samples and grid_denominator must be positive")
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")


@dataclass
class CheckRecord:
    name: str
    passed: bool
    observed: object = None
    bound: object = None
    sample: dict | None = None
    required: bool = True
    detail: str = ""


@dataclass
class ValidationReport:
    records: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records if r.required)

    def __getitem__(self, name) -> CheckRecord:
        return next(r for r in self.records if r.name == name)


@dataclass(frozen=True)
class RatioBound:
    """Largest exact ratio found, with the sample that achieved it."""

    value: Fraction
    b: tuple | None = None
    b_tilde: tuple | None = None
    x: tuple | None = None
    pairs: int = 0
    ratios: int = 0
    violations: int = 0
    probe_value: Fraction = _ZERO
    label: str = "LOWER_BOUND"


def domain_point(inst: ProblemInstance, x0: Sequence, slack: Sequence) -> tuple:
    """``A x0 + s``; feasible for ``x0`` whenever ``s >= 0``."""
    return tuple(exact.dot(a, x0) + s for a, s in zip(inst.rows, exact.vector(slack)))


def sample_domain_point(inst: ProblemInstance, cfg: SampleConfig, index: int) -> tuple:
    g = Lcg64.for_index(cfg.seed, index)
    q = cfg.grid_denominator
    K = math.floor(cfg.radius * q)
    x0 = [Fraction(g.randint(-K, K), q) for _ in range(inst.n)]
    s = [Fraction(g.randint(0, K), q) for _ in range(inst.m)]
    return domain_point(inst, x0, s)


class _OptimalSets:
    """Memo of optimal sets and their extreme points per parameter."""

    def __init__(self, inst):
        self.inst = inst
        self.sets = {}
        self.points = {}

    def set(self, b):
        if b not in self.sets:
            self.sets[b] = optimal_set(self.inst, b)
        return self.sets[b]

    def extreme(self, b):
        if b not in self.points:
            self.points[b] = extreme_optimal_points(self.inst, b)
        return self.points[b]


def probe_directions(m: int):
    """``±e_t`` and ``±e_s ± e_t``, in a fixed order."""
    dirs = []
    for t in range(m):
        for sgn in (1, -1):
            d = [0] * m
            d[t] = sgn
            dirs.append(tuple(d))
    for s, t in combinations(range(m), 2):
        for ss in (1, -1):
            for st in (1, -1):
                d = [0] * m
                d[s], d[t] = ss, st
                dirs.append(tuple(d))
    return dirs


def probe_parameters(inst: ProblemInstance, center: tuple, cfg: SampleConfig):
    out = []
    for d in probe_directions(inst.m):
        for f in PROBE_FRACTIONS:
            eps = f * cfg.radius
            b = tuple(c + eps * di for c, di in zip(center, d))
            if in_domain(inst, b):
                out.append(b)
    return out


def _sweep(inst, cache, pairs, hof=None):
    best = (_ZERO, None, None, None)
    nratios = violations = 0
    for b, bt in pairs:
        if b == bt:
            continue  # every x in F_op(b) lies in F_op(b~): 0/0 := 0
        target = cache.set(bt)
        pdist = exact.norm_inf(exact.sub(b, bt))
        for x in cache.extreme(b):
            d, _ = distance_to_polyhedron(x, target, inst.norm)
            r = d / pdist
            nratios += 1
            if hof is not None and r > hof:
                violations += 1
            if r > best[0]:
                best = (r, b, bt, x)
    return best, nratios, violations


def random_pairs(inst, cfg):
    return [(sample_domain_point(inst, cfg, 2 * k), sample_domain_point(inst, cfg, 2 * k + 1)) for k in range(cfg.samples)]


def empirical_hoffman_lower_bound(inst: ProblemInstance, cfg: SampleConfig, hof=None, cache=None) -> RatioBound:
    """Exact maximum of sampled Hoffman ratios; a certified lower bound on the constant.

    ``hof`` (a :class:`ModulusReport`) is computed when not supplied; its
    witness parameter centres the probes and its value is used to count
    soundness violations.
    """
    if not inst.dual_feasible:
        raise DualInfeasible()
    if hof is None:
        hof = hoffman_constant(inst)
    cache = cache or _OptimalSets(inst)
    pairs = random_pairs(inst, cfg)
    center = hof.b
    probes = []
    for b in probe_parameters(inst, center, cfg):
        probes.append((b, center))
        probes.append((center, b))
    rand_best, n1, v1 = _sweep(inst, cache, pairs, hof.value)
    probe_best, n2, v2 = _sweep(inst, cache, probes, hof.value)
    best = max(rand_best, probe_best, key=lambda r: r[0])
    return RatioBound(best[0], best[1], best[2], best[3], len(pairs) + len(probes), n1 + n2, v1 + v2, probe_best[0])


def empirical_hoffman_modulus_at(inst: ProblemInstance, b_bar: Sequence, cfg: SampleConfig) -> RatioBound:
    """Sampled lower estimate of the Hoffman modulus at ``b_bar`` (no exactness claim)."""
    if not inst.dual_feasible:
        raise DualInfeasible()
    b_bar = inst.check_parameter(b_bar)
    if not in_domain(inst, b_bar):
        raise ParameterOutsideDomain("b_bar is outside dom F")
    cache = _OptimalSets(inst)
    pairs = [(sample_domain_point(inst, cfg, k), b_bar) for k in range(cfg.samples)]
    pairs += [(b, b_bar) for b in probe_parameters(inst, b_bar, cfg)]
    best, nratios, _ = _sweep(inst, cache, pairs)
    return RatioBound(best[0], best[1], best[2], best[3], len(pairs), nratios, label="ESTIMATE")


def _fmt(v):
    return None if v is None else tuple(map(exact.format_rational, v))


def check_equality_chain(inst: ProblemInstance, cfg: SampleConfig, hof=None, cache=None) -> ValidationReport:
    """Exact checks that calmness <= Lipschitz-usc <= Hoffman on samples, plus attainment.

    Attainment: the largest Lipschitz-usc modulus over the finite witness
    parameters (0 on ``S``, 1 off ``S``) must equal the Hoffman constant.
    """
    if not inst.dual_feasible:
        raise DualInfeasible()
    if hof is None:
        hof = hoffman_constant(inst)
    cache = cache or _OptimalSets(inst)
    family = minimal_kkt_family(inst)
    report = ValidationReport()

    failures = 0
    checked = 0
    worst = None
    for k in range(cfg.samples):
        b = sample_domain_point(inst, cfg, 2 * k)
        values = [
            _calmness_from_active(inst, family, b, x, active_indices(inst, b, x)).value for x in cache.extreme(b)
        ]
        lip = max(values)
        checked += 1
        if any(v > lip for v in values) or lip > hof.value:
            failures += 1
            worst = b
    report.records.append(CheckRecord(
        "chain", failures == 0, observed=checked - failures, bound=checked,
        sample={"b": _fmt(worst)} if worst else None,
        detail="clm <= Lipusc <= Hof at every sampled parameter and extreme optimal point",
    ))

    best_lip = None
    for D, S, _ in hoffman_terms(inst, family):
        b = domain_witness(S, inst.m)
        lip = lipschitz_usc_modulus(inst, b)
        if best_lip is None or lip.value > best_lip.value:
            best_lip = lip
    report.records.append(CheckRecord(
        "witness_attainment", best_lip.value == hof.value, observed=best_lip.value, bound=hof.value,
        sample={"b": _fmt(best_lip.b), "x": _fmt(best_lip.point)},
        detail="max Lipusc over witness parameters equals Hof",
    ))
    clm = calmness_modulus(inst, hof.b, hof.point)
    report.records.append(CheckRecord(
        "calmness_at_witness", clm.value == hof.value, observed=clm.value, bound=hof.value,
        sample={"b": _fmt(hof.b), "x": _fmt(hof.point)},
    ))
    return report


def validate(inst: ProblemInstance, cfg: SampleConfig, b_nominal: Sequence | None = None) -> tuple:
    """Run every check; returns ``(report, hoffman report, ratio bound)``."""
    hof = hoffman_constant(inst)
    cache = _OptimalSets(inst)
    bound = empirical_hoffman_lower_bound(inst, cfg, hof, cache)
    report = ValidationReport()
    report.records.append(CheckRecord(
        "soundness", bound.violations == 0, observed=bound.value, bound=hof.value,
        sample={"b": _fmt(bound.b), "b_tilde": _fmt(bound.b_tilde), "x": _fmt(bound.x)},
        detail=f"{bound.ratios} exact ratios over {bound.pairs} pairs, {bound.violations} above Hof",
    ))
    report.records.append(CheckRecord(
        "witness_probe", bound.probe_value >= hof.value * Fraction(999, 1000), observed=bound.probe_value,
        bound=hof.value, required=False, detail="probes around the witness reach (1 - 1e-3) Hof",
    ))
    report.records.extend(check_equality_chain(inst, cfg, hof, cache).records)
    if b_nominal is not None:
        est = empirical_hoffman_modulus_at(inst, b_nominal, cfg)
        report.records.append(CheckRecord(
            "pointwise_hoffman_estimate", est.value <= hof.value, observed=est.value, bound=hof.value,
            sample={"b": _fmt(est.b), "x": _fmt(est.x)},
            detail="ESTIMATE: sampled lower bound on the Hoffman modulus at b_nominal",
        ))
    return report, hof, bound

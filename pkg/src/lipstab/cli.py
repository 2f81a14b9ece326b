"""Command line: instance parsing, subcommand dispatch and JSON reports.

Exit codes: 0 success, 1 a validation check failed, 2 malformed input,
3 domain/feasibility error, 4 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, exact
from .argmin import ProblemInstance
from .errors import DimensionError, DomainError, EnumerationCapExceeded, InputError
from .exact import format_rational, parse_rational, parse_vector, to_decimal
from .geometry import NormChoice, VPolytope, end_set_distance, v_to_h
from .instances import BUNDLED, bundled
from .kkt import minimal_kkt_at, minimal_kkt_family
from .moduli import calmness_modulus, canonical_hoffman, hoffman_constant, lipschitz_usc_modulus
from .segment import connecting_subdivision
from .validator import SampleConfig, validate

INSTANCE_FIELDS = {"n", "A", "c", "norm", "b_nominal", "description"}


class ParsedInstance:
    def __init__(self, inst: ProblemInstance, b_nominal=None):
        self.inst = inst
        self.b_nominal = b_nominal


def _rational_field(value, where: str, lenient: bool) -> Fraction:
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except InputError as e:
            raise InputError(f"{where}: {e}") from None
    if lenient and isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise InputError(f"{where}: expected a rational string, got {json.dumps(value)}")


def _rational_list(value, where, lenient):
    if not isinstance(value, list):
        raise InputError(f"{where}: expected an array")
    return tuple(_rational_field(v, f"{where}[{i}]", lenient) for i, v in enumerate(value))


def parse_instance(text: str, lenient: bool = False) -> ParsedInstance:
    """Parse the JSON instance format into a :class:`ProblemInstance`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise InputError("top level must be an object")
    unknown = sorted(set(data) - INSTANCE_FIELDS)
    if unknown and not lenient:
        raise InputError(f"unknown field(s): {', '.join(unknown)}")
    for key in ("n", "A", "c"):
        if key not in data:
            raise InputError(f"missing field: {key}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("n: expected a positive integer")
    A = data["A"]
    if not isinstance(A, list) or not A:
        raise InputError("A: expected a nonempty array of rows")
    rows = []
    for i, row in enumerate(A):
        r = _rational_list(row, f"A[{i}]", lenient)
        if len(r) != n:
            raise InputError(f"A[{i}]: has {len(r)} entries, expected n = {n}")
        rows.append(r)
    c = _rational_list(data["c"], "c", lenient)
    if len(c) != n:
        raise InputError(f"c: has {len(c)} entries, expected n = {n}")
    norm = data.get("norm", "linf")
    if norm not in ("l1", "linf"):
        raise InputError(f"norm: expected \"l1\" or \"linf\", got {json.dumps(norm)}")
    desc = data.get("description", "")
    if not isinstance(desc, str):
        raise InputError("description: expected a string")
    b_nom = None
    if data.get("b_nominal") is not None:
        b_nom = _rational_list(data["b_nominal"], "b_nominal", lenient)
        if len(b_nom) != len(rows):
            raise InputError(f"b_nominal: has {len(b_nom)} entries, expected m = {len(rows)}")
    return ParsedInstance(ProblemInstance(tuple(rows), c, NormChoice(norm), desc), b_nom)


def instance_to_json(inst: ProblemInstance, b_nominal=None) -> dict:
    out = {
        "n": inst.n,
        "A": [[format_rational(a) for a in row] for row in inst.rows],
        "c": [format_rational(a) for a in inst.c],
        "norm": inst.norm.value,
    }
    if b_nominal is not None:
        out["b_nominal"] = [format_rational(a) for a in b_nominal]
    if inst.description:
        out["description"] = inst.description
    return out


def instance_digest(inst: ProblemInstance) -> str:
    canon = instance_to_json(inst)
    canon.pop("description", None)
    blob = json.dumps(canon, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def load_instance(ref: str, lenient: bool = False) -> ParsedInstance:
    path = Path(ref)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            raise InputError(f"{ref}: not UTF-8 text") from None
        return parse_instance(text, lenient)
    if ref in BUNDLED:
        return parse_instance(json.dumps(instance_to_json(bundled(ref))), lenient)
    raise InputError(f"no such instance file or bundled instance: {ref}")


def _q(v):
    return format_rational(v)


def _vec(v):
    return None if v is None else [format_rational(a) for a in v]


def _value(v) -> dict:
    return {"value": _q(v), "value_decimal": to_decimal(v)}


def _report(r) -> dict:
    out = _value(r.value)
    out["end_set_distance"] = _q(r.distance)
    return out


def cmd_kkt(args, parsed):
    inst = parsed.inst
    family = minimal_kkt_family(inst)
    result = {"global": [list(D) for D in family]}
    if args.b is not None:
        result["at"] = {"b": _vec(args.b), "family": [list(D) for D in minimal_kkt_at(inst, args.b, family)]}
    return result


def cmd_hof(args, parsed):
    r = hoffman_constant(parsed.inst)
    out = _report(r)
    out["witness"] = {"D": list(r.D), "S": list(r.S), "b": _vec(r.b), "x": _vec(r.point)}
    return out


def cmd_clm(args, parsed):
    r = calmness_modulus(parsed.inst, args.b, args.x)
    out = _report(r)
    out["certificate"] = {"D": None if r.D is None else list(r.D), "active": list(r.S)}
    return out


def cmd_lipusc(args, parsed):
    r = lipschitz_usc_modulus(parsed.inst, args.b)
    out = _report(r)
    out["certificate"] = {"x": _vec(r.point), "D": None if r.D is None else list(r.D), "active": list(r.S)}
    return out


def cmd_breaks(args, parsed):
    seg = connecting_subdivision(parsed.inst, args.from_, args.to)
    pieces = []
    for lo, hi, D, fam in zip(seg.subdivision, seg.subdivision[1:], seg.pieces, seg.piece_families):
        pieces.append({"from": _q(lo), "to": _q(hi), "D": list(D), "family": [list(F) for F in fam]})
    intervals = [
        {"D": list(D), "interval": None if iv is None else [_q(iv[0]), _q(iv[1])]}
        for D, iv in seg.intervals.items()
    ]
    return {
        "from": _vec(seg.start),
        "to": _vec(seg.end),
        "break_steps": [_q(mu) for mu in seg.break_steps],
        "subdivision": [_q(mu) for mu in seg.subdivision],
        "pieces": pieces,
        "intervals": intervals,
    }


def cmd_canonical(args, parsed):
    cls = canonical_hoffman(parsed.inst)
    return {"classification": cls.value, "value": "0" if cls.value == "Zero" else "inf"}


def _record(r):
    def enc(v):
        if isinstance(v, (Fraction, int, float)) and not isinstance(v, bool):
            return _q(v)
        return v

    return {
        "name": r.name,
        "passed": r.passed,
        "required": r.required,
        "observed": enc(r.observed),
        "bound": enc(r.bound),
        "sample": r.sample,
        "detail": r.detail,
    }


def cmd_validate(args, parsed):
    cfg = SampleConfig(args.seed, args.samples, args.grid_denominator, args.radius)
    report, hof, bound = validate(parsed.inst, cfg, parsed.b_nominal)
    args._failed = not report.ok
    return {
        "ok": report.ok,
        "config": {
            "seed": cfg.seed,
            "samples": cfg.samples,
            "grid_denominator": cfg.grid_denominator,
            "radius": _q(cfg.radius),
        },
        "hoffman": {**_value(hof.value), "witness_b": _vec(hof.b)},
        "lower_bound": {
            **_value(bound.value),
            "probe_value": _q(bound.probe_value),
            "pairs": bound.pairs,
            "ratios": bound.ratios,
            "violations": bound.violations,
            "sample": {"b": _vec(bound.b), "b_tilde": _vec(bound.b_tilde), "x": _vec(bound.x)},
        },
        "checks": [_record(r) for r in report.records],
    }


def cmd_endset(args, parsed):
    points = []
    for chunk in args.points:
        points.extend(parse_vector(p) for p in chunk.split(";") if p)
    if not points:
        raise InputError("--points: at least one point is required")
    V = VPolytope(tuple(points))
    dual_of = NormChoice(args.dual_norm)
    H = v_to_h(V)
    d = end_set_distance(V, dual_of)
    return {
        "points": [_vec(p) for p in V.points],
        "dual_of": dual_of.value,
        "measured_in": dual_of.dual.value,
        "facets": [{"w": _vec(w), "beta": _q(b)} for w, b in H.ineq],
        "equalities": [{"v": _vec(v), "gamma": _q(g)} for v, g in H.eq],
        **_value(d),
    }


def _vector_arg(text):
    try:
        return parse_vector(text)
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _rational_arg(text):
    try:
        return parse_rational(text)
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipstab",
        description="Exact Lipschitz stability constants of the argmin mapping of an LP under RHS perturbations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--lenient", action="store_true", help="accept unknown fields and bare integers")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_instance(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("instance", help="instance file or bundled name (instanceA, instanceB, instanceC, instanceZero)")
        p.set_defaults(func=func, needs_instance=True)
        return p

    p = with_instance("kkt", cmd_kkt, "minimal KKT index sets")
    p.add_argument("--b", type=_vector_arg, help="also list the family at this parameter")
    with_instance("hof", cmd_hof, "Hoffman constant with witness")
    p = with_instance("clm", cmd_clm, "calmness modulus at (b, x)")
    p.add_argument("--b", type=_vector_arg, required=True)
    p.add_argument("--x", type=_vector_arg, required=True)
    p = with_instance("lipusc", cmd_lipusc, "Lipschitz upper semicontinuity modulus at b")
    p.add_argument("--b", type=_vector_arg, required=True)
    p = with_instance("breaks", cmd_breaks, "break steps and connecting subdivision along a segment")
    p.add_argument("--from", dest="from_", type=_vector_arg, required=True)
    p.add_argument("--to", type=_vector_arg, required=True)
    with_instance("canonical", cmd_canonical, "Hoffman constant under perturbation of both c and b")
    p = with_instance("validate", cmd_validate, "seeded empirical certification")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=_rational_arg, default=Fraction(2))
    p.add_argument("--grid-denominator", type=int, default=4)
    p = sub.add_parser("endset", help="distance from the origin to the end set of a hull")
    p.add_argument("--points", action="append", required=True, help="';'-separated points, e.g. '1,0;1,1;-1,-1'")
    p.add_argument("--dual-norm", choices=["l1", "linf"], default="linf",
                   help="variable-space norm; the distance is measured in its dual")
    p.set_defaults(func=cmd_endset, needs_instance=False)
    return parser


_VECTOR_FLAGS = {"--b", "--x", "--from", "--to", "--points", "--radius"}
_NEGATIVE_VALUE = re.compile(r"^-[\d/,;-]+$")


def _glue_negative_values(argv):
    """Turn ``--b -1,0`` into ``--b=-1,0`` so argparse does not read a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        out.append(tok)
        if tok in _VECTOR_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                break
            if _NEGATIVE_VALUE.match(nxt):
                out[-1] = f"{tok}={nxt}"
            else:
                out.append(nxt)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    started = time.perf_counter()
    args._failed = False
    try:
        parsed = load_instance(args.instance, args.lenient) if args.needs_instance else None
        result = args.func(args, parsed)
    except (InputError, DimensionError, ValueError) as e:
        print(f"lipstab: input error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"lipstab: {e}", file=sys.stderr)
        return 3
    except EnumerationCapExceeded as e:
        print(f"lipstab: {e}", file=sys.stderr)
        return 4
    envelope = {"tool": "lipstab", "version": __version__, "command": args.command}
    if parsed is not None:
        inst = parsed.inst
        envelope["instance"] = {
            "digest": instance_digest(inst),
            "n": inst.n,
            "m": inst.m,
            "norm": inst.norm.value,
            "dual_feasible": inst.dual_feasible,
            "description": inst.description,
        }
    else:
        envelope["instance"] = None
    envelope["result"] = result
    envelope["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    sys.stdout.write(json.dumps(envelope, indent=2, sort_keys=True) + "\n")
    sys.stdout.flush()
    return 1 if args._failed else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line interface: ``conevex <command> ...``.

Exit codes: 0 success or all checks pass, 1 a check failed, 2 usage, file
or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .alternative import verify_alternative
from .convexity import AlphaGrid, is_cone_convex, is_convexlike, is_preaffine, is_preconvexlike
from .efficiency import scalarize, weakly_efficient
from .errors import (
    ConevexError,
    DimensionMismatch,
    EmptyFeasibleSet,
    OracleDisagreement,
    ParseError,
    UnknownLabel,
    ValidationError,
)
from .generators import FAMILIES, GeneratorConfig, gen_random_instance
from .geometry import vec
from .instance_io import load_instance_file, parse_operators, serialize_instance
from .oracles import brute_oracles
from .saddle import (
    OperatorPair,
    construct_scalar_multipliers,
    construct_vector_saddle,
    scalar_saddle_check,
    vector_saddle_check,
    zero_pair,
)
from .setvalued import feasible_set
from .suite import run_suite

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    return "(" + ", ".join(str(a) for a in v) + ")"


def _csv(text: str) -> tuple:
    try:
        return vec(p.strip() for p in text.split(",")) if text.strip() else ()
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a comma-separated list of rationals: {text!r}") from None


def _default_seed() -> int | None:
    raw = os.environ.get("CONEVEX_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CONEVEX_SEED must be an integer, got {raw!r}") from None


def _load(path):
    try:
        return load_instance_file(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _label(doc, label):
    if label not in doc.instance.labels:
        raise UsageError(f"unknown label {label!r}; labels are {', '.join(doc.instance.labels)}")
    return label


# --- commands: each returns (exit code, human text, json-able report) ------------

def cmd_classify(args):
    inst = _load(args.file).instance
    grid = AlphaGrid(args.grid)
    verdicts = {
        "f_preconvexlike": is_preconvexlike(inst.f, inst.y_cone, grid),
        "f_convexlike": is_convexlike(inst.f, inst.y_cone, grid),
        "f_cone_convex": is_cone_convex(inst.f, inst.y_cone, grid, inst.coords),
        "g_preconvexlike": is_preconvexlike(inst.g, inst.z_cone, grid),
        "g_convexlike": is_convexlike(inst.g, inst.z_cone, grid),
        "g_cone_convex": is_cone_convex(inst.g, inst.z_cone, grid, inst.coords),
        "h_preaffine": is_preaffine(inst.h, grid),
    }
    lines = []
    for name, v in verdicts.items():
        line = f"{name:<16} {v.kind.value}"
        if v.certificate is not None:
            x1, x2, a = v.certificate
            line += f" at ({x1}, {x2}, {a}); {len(v.refuted_cells)} cells refuted"
        if v.skipped:
            line += f" [{len(v.skipped)} cells skipped]"
        lines.append(line)
    return OK, "\n".join(lines), {k: v.to_dict() for k, v in verdicts.items()}


def cmd_feasible(args):
    inst = _load(args.file).instance
    D = feasible_set(inst)
    return OK, "feasible: " + (", ".join(D) if D else "(none)"), {"feasible": list(D)}


def cmd_efficient(args):
    inst = _load(args.file).instance
    try:
        ws = weakly_efficient(inst)
    except EmptyFeasibleSet:
        return FAILED, "feasible set is empty", {"weakly_efficient": None, "error": "EmptyFeasibleSet"}
    text = "\n".join(f"({w.label}, {_fmt(w.ybar)})" for w in ws)
    return OK, text, {"weakly_efficient": [{"label": w.label, "ybar": [str(a) for a in w.ybar]} for w in ws]}


def cmd_scalarize(args):
    doc = _load(args.file)
    cert = scalarize(doc.instance, _label(doc, args.label))
    if cert is None:
        return FAILED, f"{args.label}: no scalarization certificate", {"certificate": None}
    text = f"{args.label}: xi = {_fmt(cert.xi)}, ybar = {_fmt(cert.ybar)}"
    return OK, text, {"certificate": cert.to_dict()}


def cmd_alt(args):
    inst = _load(args.file).instance
    r = verify_alternative(inst, check_hypotheses=args.check_hypotheses, grid=AlphaGrid(args.grid))
    lines = [
        "system (i) solutions: " + (", ".join(r.system_i_solutions) or "(none)"),
        "system (ii) solution: " + ("none" if r.system_ii_solution is None else str(r.system_ii_solution.to_dict())),
        "xi-nonzero solution: " + ("none" if r.xi_nonzero_solution is None else str(r.xi_nonzero_solution.to_dict())),
        f"(i) empty => (ii) solvable: {r.implication_checks[0]}",
        f"xi-nonzero (ii) => (i) empty: {r.implication_checks[1]}",
    ]
    for k, v in r.hypotheses.items():
        lines.append(f"hypothesis {k}: {v.kind.value}")
    return (OK if r.passed else FAILED), "\n".join(lines), r.to_dict()


def _operators_from(path, inst) -> OperatorPair:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ParseError(e.pos, e.msg) from None
    if isinstance(data, dict) and "operators" in data:
        return parse_operators(data["operators"], inst, "$.operators")
    return parse_operators(data, inst)


def cmd_saddle(args):
    doc = _load(args.file)
    inst = doc.instance
    label = _label(doc, args.label)
    if args.operators:
        pair = _operators_from(args.operators, inst)
    else:
        pair = doc.operators or zero_pair(inst)
    r = vector_saddle_check(inst, label, pair)
    text = (f"{label}: condition (i) {r.condition_i}, (ii) {r.condition_ii}, (iii) {r.condition_iii}; "
            f"ybar {_fmt(r.ybar)}, zbar {_fmt(r.zbar)}; saddle {r.is_saddle}")
    report = r.to_dict()
    report["operators"] = pair.to_dict()
    return (OK if r.is_saddle else FAILED), text, report


def cmd_scalar_saddle(args):
    doc = _load(args.file)
    inst = doc.instance
    label = _label(doc, args.label)
    m = doc.multipliers
    eta = _csv(args.eta) if args.eta is not None else (m.eta if m else (0,) * inst.dim_z)
    zeta = _csv(args.zeta) if args.zeta is not None else (m.zeta if m else (0,) * inst.dim_w)
    r = scalar_saddle_check(inst, _csv(args.xi), label, eta, zeta)
    lines = [f"{k}: {v}" for k, v in r.to_dict().items() if k not in ("value", "min_over_feasible")]
    lines.insert(0, f"l(x̄) = {{{', '.join(map(str, r.value))}}}, min over feasible = {r.min_over_feasible}")
    return (OK if r.is_saddle else FAILED), "\n".join(lines), r.to_dict()


def cmd_construct(args):
    doc = _load(args.file)
    inst = doc.instance
    label = _label(doc, args.label)
    vector = construct_vector_saddle(inst, label)
    scalar = construct_scalar_multipliers(inst, label)
    lines = []
    if vector is None:
        lines.append("vector saddle construction: no multipliers")
    else:
        lines.append(f"vector: ybar {_fmt(vector.ybar)}, xi {_fmt(vector.multipliers.xi)}, "
                     f"eta {_fmt(vector.multipliers.eta)}, zeta {_fmt(vector.multipliers.zeta)}")
        lines.append(f"  S = {[[str(a) for a in r] for r in vector.pair.S.matrix]}")
        lines.append(f"  T = {[[str(a) for a in r] for r in vector.pair.T.matrix]}")
        lines.append(f"  saddle {vector.saddle.is_saddle}, O in S(g(x̄)) {vector.zero_in_Sg}")
    if scalar is None:
        lines.append("scalar multipliers: construction failed")
    else:
        lines.append(f"scalar: xi {_fmt(scalar.xi)}, eta {_fmt(scalar.eta)}, zeta {_fmt(scalar.zeta)}")
    ok = vector is not None and vector.ok and scalar is not None
    report = {"vector": None if vector is None else vector.to_dict(),
              "scalar": None if scalar is None else scalar.to_dict()}
    return (OK if ok else FAILED), "\n".join(lines), report


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = _default_seed()
    if seed is None:
        raise UsageError("no seed given: pass --seed or set CONEVEX_SEED")
    return seed


def cmd_gen(args):
    cfg = GeneratorConfig(_seed(args), args.family, grid=args.grid)
    inst = gen_random_instance(cfg, args.index)
    text = serialize_instance(inst)
    Path(args.output).write_text(text)
    return OK, f"wrote {args.family} instance {args.index} (seed {cfg.seed}) to {args.output}", {
        "family": args.family, "seed": cfg.seed, "index": args.index, "output": args.output}


def cmd_verify(args):
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    cfg = GeneratorConfig(_seed(args), args.family, grid=args.grid)
    report = run_suite(cfg, args.count, jobs=args.jobs)
    return (OK if report.passed else FAILED), report.summary(), report.to_dict()


def cmd_oracle(args):
    inst = _load(args.file).instance
    try:
        r = brute_oracles(inst)
    except OracleDisagreement as e:
        return FAILED, f"disagreement in {e.check}: {e.detail}", {
            "agree": False, "check": e.check, "detail": str(e.detail), "instance": e.instance_text}
    text = "oracles agree: " + ", ".join(f"{k} ({n})" for k, n in r.checks.items())
    return OK, text, r.to_dict()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conevex", description="Exact checks for set-valued vector optimization.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, file=True, label=False):
        sp = sub.add_parser(name, help=help_text)
        if file:
            sp.add_argument("file")
        if label:
            sp.add_argument("--label", required=True)
        sp.add_argument("--json", metavar="PATH", help="write a machine-readable report")
        sp.set_defaults(func=fn)
        return sp

    add("classify", cmd_classify, "convexity verdicts for f, g, h").add_argument("--grid", type=int, default=8)
    add("feasible", cmd_feasible, "feasible labels")
    add("efficient", cmd_efficient, "weakly efficient (label, ybar) pairs")
    add("scalarize", cmd_scalarize, "scalarization certificate for a label", label=True)
    sp = add("alt", cmd_alt, "both systems of the alternative")
    sp.add_argument("--check-hypotheses", action="store_true")
    sp.add_argument("--grid", type=int, default=8)
    add("saddle", cmd_saddle, "vector saddle-point check", label=True).add_argument("--operators", metavar="FILE")
    sp = add("scalar-saddle", cmd_scalar_saddle, "scalar Lagrangian saddle-point check", label=True)
    sp.add_argument("--xi", required=True, help="comma-separated rationals")
    sp.add_argument("--eta", help="comma-separated rationals (default: file block or zero)")
    sp.add_argument("--zeta", help="comma-separated rationals (default: file block or zero)")
    add("construct", cmd_construct, "saddle operator and multiplier constructions", label=True)
    sp = add("gen", cmd_gen, "write a generated instance", file=False)
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--index", type=int, default=0)
    sp.add_argument("--grid", type=int, default=8)
    sp.add_argument("-o", "--output", required=True)
    sp = add("verify", cmd_verify, "run a theorem suite", file=False)
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--grid", type=int, default=8)
    add("oracle", cmd_oracle, "cross-check against brute-force oracles")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        code, text, report = args.func(args)
    except (UsageError, ParseError, ValidationError, DimensionMismatch, UnknownLabel) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except ConevexError as e:
        # a precondition of the requested check does not hold
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return FAILED
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    print(text)
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.  Every subcommand is a thin wrapper over the library.

Exit status: 0 on success, 1 when a checked property fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra as _algebra
from .algebra import X, AlgebraError, WindowExceeded, builtin, classify_degrees, from_spec, validate_algebra
from .analysis import (
    GenerationError, SolveWindow, WitnessStall, annihilator_check, distinguish_simples,
    simplicity_witness, solve_whittaker, submodule_ideal,
)
from .exactmath import IdealError
from .grading import format_degree
from .pbw import enumerate_basis
from .syntax import ParseError, parse_character, parse_element, parse_ideal, parse_vector, resolve_token
from .whittaker import CharacterError, UnsupportedIdealError, WhittakerModule, nonsingularity_report, vector_stats

USAGE_ERRORS = (ParseError, CharacterError, IdealError, UnsupportedIdealError, AlgebraError,
                WindowExceeded, GenerationError, KeyError, OSError, json.JSONDecodeError, ValueError)

# per-command window defaults, used when --depth / --height are omitted
DEFAULT_DEPTH = {"whittaker-vectors": 4, "simplicity": 4, "submodule-ideal": 3, "annihilator-check": 3}
DEFAULT_HEIGHT = {"submodule-ideal": 3, "annihilator-check": 3}


class UsageError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="virasoro", help="virasoro, w22 or spec:<path>")
    common.add_argument("--level", type=int, default=6, help="level window N (default 6)")
    common.add_argument("--depth", type=int, help="level depth d of b_minus truncation")
    common.add_argument("--height", type=int, help="PBW height bound h (default 6)")
    common.add_argument("--central-degree", type=int, default=3, help="central degree bound e (default 3)")
    common.add_argument("--phi", default="", help='character, e.g. "L1=1,L2=1"')
    common.add_argument("--ideal", default="0", help='substitution ideal, e.g. "c=1/2" or "0"')
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")

    p = argparse.ArgumentParser(prog="gradedwhittaker", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check the algebra axioms on the window")
    sub.add_parser("nonsingular", parents=[common], help="nonsingularity report for --phi")
    s = sub.add_parser("normal-form", parents=[common], help="PBW normal form of --element")
    s.add_argument("--element", required=True)
    s = sub.add_parser("act", parents=[common], help="act by --element on --vector")
    s.add_argument("--element", required=True)
    s.add_argument("--vector", default="1", help="vector written as an element applied to w' (default w')")
    s = sub.add_parser("whittaker-vectors", parents=[common], help="solve for Whittaker vectors")
    s.add_argument("--probes", help='comma-separated probe generators, e.g. "L1,L2"')
    s.add_argument("--expect-dim", type=int)
    s = sub.add_parser("simplicity", parents=[common], help="witness traces over the windowed basis")
    s.add_argument("--budget", type=int, default=100)
    s.add_argument("--vector", help="trace a single vector instead of the whole basis")
    s = sub.add_parser("submodule-ideal", parents=[common], help="central ideal detected by a submodule")
    s.add_argument("--generator", action="append", required=True, help="generating vector (repeatable)")
    s = sub.add_parser("annihilator-check", parents=[common], help="sampled annihilator check")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s = sub.add_parser("distinguish", parents=[common], help="separate two simple quotients")
    s.add_argument("--ideal2", required=True)
    return p


def load_algebra(selector: str, level: int):
    if selector.startswith("spec:"):
        return from_spec(Path(selector[5:]))
    if selector not in _algebra.BUILTINS:
        raise UsageError(f"unknown algebra {selector!r} (expected virasoro, w22 or spec:<path>)")
    return builtin(selector, level)


def _window(args, alg) -> SolveWindow:
    depth = args.depth if args.depth is not None else min(DEFAULT_DEPTH.get(args.command, 4), alg.level)
    height = args.height if args.height is not None else DEFAULT_HEIGHT.get(args.command, 6)
    if depth < 0 or height < 0 or args.central_degree < 0:
        raise UsageError("window bounds must be nonnegative")
    probes = None
    if getattr(args, "probes", None):
        probes = []
        for tok in args.probes.split(","):
            gen = resolve_token(alg, tok.strip())
            if not isinstance(gen, X) or alg.pi(gen.degree) <= 0:
                raise UsageError(f"probe {tok.strip()} is not a positive-level generator")
            probes.append(gen.degree)
        probes = tuple(probes)
    return SolveWindow(depth, height, args.central_degree, probes)


def _module(args, alg, ideal_text=None):
    phi = parse_character(alg, args.phi)
    ideal = parse_ideal(alg, args.ideal if ideal_text is None else ideal_text)
    return phi, ideal, WhittakerModule(alg, phi, ideal)


# -- commands: each returns (result dict, ok flag) ---------------------------


def cmd_validate(args, alg):
    level = min(args.level, alg.level)
    report = validate_algebra(alg, level)
    out = report.to_dict()
    out["violation_count"] = report.violation_count
    out["sectors"] = classify_degrees(alg, level).to_dict()
    return out, report.ok


def cmd_nonsingular(args, alg):
    phi = parse_character(alg, args.phi)
    report = nonsingularity_report(alg, phi, args.level)
    out = report.to_dict()
    out["alpha_phi"] = None if report.alpha_phi is None else format_degree(report.alpha_phi)
    out["phi"] = phi.to_dict()
    return out, report.nonsingular


def cmd_normal_form(args, alg):
    u = parse_element(alg, args.element)
    return {"lines": u.render_lines(), "terms": u.records(), "height": u.height()}, True


def cmd_act(args, alg):
    _, _, module = _module(args, alg)
    v = parse_vector(module, args.vector)
    x = parse_element(alg, args.element)
    r = module.act(x, v)
    out = {"lines": r.render_lines(), "terms": r.records()}
    out["stats"] = None if r.is_zero() else vector_stats(module, r).to_dict()
    return out, True


def cmd_whittaker_vectors(args, alg):
    _, _, module = _module(args, alg)
    sol = solve_whittaker(module, _window(args, alg))
    out = sol.to_dict()
    out["lines"] = [str(v) for v in sol.basis]
    ok = args.expect_dim is None or sol.dimension == args.expect_dim
    if args.expect_dim is not None:
        out["expected_dimension"] = args.expect_dim
    return out, ok


def cmd_simplicity(args, alg):
    _, _, module = _module(args, alg)
    if args.vector:
        vectors = [parse_vector(module, args.vector)]
    else:
        win = _window(args, alg)
        vectors = [module.basis_vector(lam) for lam in enumerate_basis(alg, "b_minus", win.depth, win.height)]
    traces, ok = [], True
    for v in vectors:
        try:
            t = simplicity_witness(module, v, args.budget)
            d = t.to_dict()
            d["monotone"] = t.monotone
            good = t.monotone and bool(t.final_scalar)
        except WitnessStall as exc:
            d = exc.trace.to_dict()
            d["stall"] = str(exc)
            good = False
        d["vector"] = str(v)
        d["ok"] = good
        ok = ok and good
        traces.append(d)
    return {"count": len(traces), "failures": sum(not t["ok"] for t in traces), "traces": traces}, ok


def cmd_submodule_ideal(args, alg):
    if args.ideal.strip() not in ("", "0"):
        raise UsageError("submodule-ideal works in the universal module; omit --ideal")
    phi, _, module = _module(args, alg)
    gens = [parse_vector(module, g) for g in args.generator]
    det = submodule_ideal(alg, phi, gens, _window(args, alg), module)
    out = det.to_dict()
    out["unit"] = det.is_unit
    return out, True


def cmd_annihilator_check(args, alg):
    _, _, module = _module(args, alg)
    report = annihilator_check(module, args.samples, _window(args, alg), args.seed)
    return report.to_dict(), report.ok


def cmd_distinguish(args, alg):
    phi = parse_character(alg, args.phi)
    verdict = distinguish_simples(alg, phi, parse_ideal(alg, args.ideal), parse_ideal(alg, args.ideal2))
    return verdict.to_dict(), True


COMMANDS = {
    "validate": cmd_validate,
    "nonsingular": cmd_nonsingular,
    "normal-form": cmd_normal_form,
    "act": cmd_act,
    "whittaker-vectors": cmd_whittaker_vectors,
    "simplicity": cmd_simplicity,
    "submodule-ideal": cmd_submodule_ideal,
    "annihilator-check": cmd_annihilator_check,
    "distinguish": cmd_distinguish,
}


def _human(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if v and (isinstance(v, dict) or (isinstance(v, list) and any(isinstance(i, dict) for i in v))):
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                sub = _human(item, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}" if sub else f"{pad}-")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    return lines


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, dict):
        return "{}"
    return str(v)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        alg = load_algebra(args.algebra, args.level)
        result, ok = COMMANDS[args.command](args, alg)
    except USAGE_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=stderr)
        return 2
    request = {k: v for k, v in sorted(vars(args).items())}
    doc = {"request": request, "ok": ok, "result": result}
    if args.json:
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stdout.write(f"{args.command} ({alg.name}): {'PASS' if ok else 'FAIL'}\n")
        stdout.write("\n".join(_human(result)) + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""
Command-line front end.

Subcommands: ``presets``, ``validate-spec``, ``eval``, ``suite``, ``gram``
and ``mackey-dims``.  Output is UTF-8 JSON with sorted keys.  Exit status
0 means success, 1 a failed check, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .affine import AffineAlgebra
from .combinatorics import format_scalar, parse_scalar
from .cyclotomic import (
    CyclotomicAlgebra, CyclotomicPoly, ReductionBudgetError, expected_dimension, load_f,
    parse_f_json,
)
from .expressions import ExpressionError, evaluate
from .linalg import SingularMatrixError
from .superalgebra import PRESETS, SpecError, SymmetricSuperalgebra, load_spec, preset
from .suites import SUITES, SuiteConfig, mackey_dimensions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _scalar(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _read_json(path_or_text: str, what: str):
    text = path_or_text
    if not path_or_text.lstrip().startswith(("{", "[")):
        try:
            text = Path(path_or_text).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {what} file: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _algebra(args) -> tuple[SymmetricSuperalgebra, str | None]:
    if args.spec:
        try:
            return load_spec(_read_json(args.spec, "spec")), None
        except SpecError as exc:
            raise UsageError(f"invalid algebra spec ({exc.violation}): {exc}") from None
    name = args.preset or "trivial"
    if name not in PRESETS:
        raise UsageError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return preset(name), name


def _single_z(args) -> Fraction:
    zs = args.z or [Fraction(1)]
    if len(zs) != 1:
        raise UsageError("this command takes a single --z")
    return zs[0]


def _f(args, A, default: bool) -> CyclotomicPoly | None:
    if not args.f:
        return load_f(A, [-1, 0]) if default else None
    try:
        return parse_f_json(A, _read_json(args.f, "f"))
    except SpecError as exc:
        raise UsageError(f"invalid f ({exc.violation}): {exc}") from None


def _context(A, name, n, z, f=None) -> dict:
    ctx = {"algebra": name or "custom", "basis": list(A.names), "n": n, "z": format_scalar(z)}
    if f is not None:
        ctx["f"] = f.to_json()
        ctx["f_label"] = f.label()
    return ctx


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _warn_scale(n: int, limit: int = 3) -> None:
    if n > limit:
        print(f"warning: n = {n} is beyond desk scale; this may take a long time",
              file=sys.stderr)


# -- subcommands ------------------------------------------------------------

def cmd_presets(args) -> int:
    _emit({name: {"basis": list(preset(name).names), "dimension": preset(name).m,
                  "spec": PRESETS[name]} for name in sorted(PRESETS)}, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.spec:
        raw = _read_json(args.spec, "spec")
        try:
            A = load_spec(raw)
        except SpecError as exc:
            _emit({"status": "invalid", "violation": exc.violation, "detail": str(exc)}, args.out)
            return EXIT_FAIL
    else:
        A, _ = _algebra(args)
    z, z0 = A.center_basis()
    _emit({
        "status": "valid",
        "dimension": A.m,
        "basis": list(A.names),
        "parity": list(A.parity),
        "dual_basis": {A.names[k]: A.format(A.dual_vector(k)) for k in range(A.m)},
        "center": [A.format(v) for v in z],
        "even_center": [A.format(v) for v in z0],
    }, args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    A, name = _algebra(args)
    z = _single_z(args)
    _warn_scale(args.n)
    H = AffineAlgebra(A, args.n, z)
    f = _f(args, A, default=False)
    expr = args.expr
    if expr.startswith("@"):
        try:
            expr = Path(expr[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read expression file: {exc}") from None
    try:
        x = evaluate(H, expr)
    except (ExpressionError, KeyError, IndexError, ValueError) as exc:
        raise UsageError(f"bad expression: {exc}") from None
    result = {"context": _context(A, name, args.n, z, f)}
    if f is not None:
        C = CyclotomicAlgebra(H, f)
        x = C.element(x).lift()
        result["reduced_form"] = x.to_json()
    else:
        result["left_normal_form"] = x.to_json()
    result["text"] = repr(x)
    if args.right_form:
        right = H.to_right_normal_form(x)
        result["right_normal_form"] = [
            {"w": list(w), "a": list(a), "lambda": list(lam), "coeff": format_scalar(c)}
            for (w, a, lam), c in sorted(right.items(),
                                         key=lambda kv: (kv[0][0], tuple(reversed(kv[0][2])),
                                                         kv[0][1]))
        ]
    _emit(result, args.out)
    return EXIT_OK


def cmd_suite(args) -> int:
    A, name = _algebra(args)
    zs = args.z or [Fraction(0), Fraction(1)]
    f = _f(args, A, default=True)
    _warn_scale(args.n)
    if args.only:
        unknown = [s for s in args.only if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; choose from {sorted(SUITES)}")
    cfg = SuiteConfig(
        algebra=A, n=args.n, z_values=zs, f=f, seed=args.seed, samples=args.samples,
        max_dim=args.max_dim, suites=args.only, preset_name=name,
        label={**_context(A, name, args.n, zs[0], f), "z": [format_scalar(z) for z in zs],
               "seed": args.seed, "samples": args.samples, "max_dim": args.max_dim,
               "suites": list(args.only or SUITES)},
    )
    report = run_suite(cfg)
    _emit(report, args.out)
    if args.out:
        s = report["summary"]
        print(f"{report['status']}: {s['total'] - s['failed']}/{s['total']} checks passed",
              file=sys.stderr)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_gram(args) -> int:
    A, name = _algebra(args)
    z = _single_z(args)
    f = _f(args, A, default=True)
    if expected_dimension(args.n, f.d, A.m) > args.max_dim:
        raise UsageError(f"dimension {expected_dimension(args.n, f.d, A.m)} exceeds --max-dim")
    C = CyclotomicAlgebra(AffineAlgebra(A, args.n, z), f)
    basis = C.basis()
    out = {"context": _context(A, name, args.n, z, f),
           "basis": [{"a": list(a), "lambda": list(lam), "w": list(w)} for a, lam, w in basis]}
    try:
        G, dual = C.gram()
    except SingularMatrixError as exc:
        out["status"] = "singular"
        out["detail"] = str(exc)
        _emit(out, args.out)
        return EXIT_FAIL
    out["gram"] = [[format_scalar(v) for v in row] for row in G]
    out["dual_basis"] = [{str(k): format_scalar(v) for k, v in enumerate(row) if v} for row in dual]
    out["status"] = "invertible"
    _emit(out, args.out)
    return EXIT_OK


def cmd_mackey(args) -> int:
    A, name = _algebra(args)
    z = _single_z(args)
    f = _f(args, A, default=True)
    if expected_dimension(args.n + 1, f.d, A.m) > args.max_dim:
        raise UsageError(
            f"dimension {expected_dimension(args.n + 1, f.d, A.m)} at n+1 exceeds --max-dim")
    rows = mackey_dimensions(A, z, f, args.n)
    ok = all(r["status"] == "pass" for r in rows)
    _emit({"context": _context(A, name, args.n, z, f), "rows": rows,
           "status": "pass" if ok else "fail"}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qawa", description=(
        "Exact computations in quantum affine wreath algebras and their cyclotomic quotients."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_n=True):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--preset", help=f"built-in algebra: {', '.join(sorted(PRESETS))}")
        g.add_argument("--spec", help="algebra spec JSON file (or inline JSON)")
        if with_n:
            sp.add_argument("--n", type=_positive, default=2, help="number of strands")
            sp.add_argument("--z", type=_scalar, action="append",
                            help="deformation parameter, rational p/q")
            sp.add_argument("--f", help='cyclotomic polynomial JSON {"d": .., "coeffs": [..]}')
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    sp = sub.add_parser("presets", help="list built-in algebras")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_presets)

    sp = sub.add_parser("validate-spec", help="validate an algebra spec")
    common(sp, with_n=False)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("eval", help="evaluate an expression to normal form")
    common(sp)
    sp.add_argument("expr", help='expression text, JSON tree, or @FILE; e.g. "T(1)*X(1,1)"')
    sp.add_argument("--right-form", action="store_true", help="also print the T_w a X^lam form")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("suite", help="run verification suites")
    common(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=_positive, default=20)
    sp.add_argument("--max-dim", type=_positive, default=128,
                    help="largest cyclotomic dimension the suites will build")
    sp.add_argument("--only", action="append", help=f"run only these: {', '.join(SUITES)}")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("gram", help="Gram matrix and dual basis of the cyclotomic trace")
    common(sp)
    sp.add_argument("--max-dim", type=_positive, default=512)
    sp.set_defaults(func=cmd_gram)

    sp = sub.add_parser("mackey-dims", help="check the Mackey dimension identity up to n")
    common(sp)
    sp.add_argument("--max-dim", type=_positive, default=512)
    sp.set_defaults(func=cmd_mackey)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qawa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReductionBudgetError as exc:
        print(f"qawa: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``curvop <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .curvature import dual_tensor, operator_matrix
from .errors import InputError
from .forms import hodge_star, tilde_map
from .generators import GRAM_PSD, HERMITIAN, fubini_study_tensor, random_tensor
from .positivity import (
    DEFAULT_TOL,
    SEMI_POSITIVE,
    POSITIVE,
    ZERO,
    classify,
    cone_report,
    dual_nakano_class,
    griffiths_min,
    hermitian_spectrum,
    nakano_class,
    theorem_chain_report,
)
from .tensorfile import emit_form, emit_tensor, parse_form_file, parse_tensor_file
from .verification import run_suite


def _fmt_c(z: complex) -> str:
    re, im = z.real, z.imag
    if abs(im) < 5e-13:
        return f"{re: .6g}"
    return f"{re: .6g}{im:+.6g}j"


def _header(kind: str, **fields) -> str:
    parts = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"# curvop {__version__} {kind} {parts}"


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_tensor(args):
    return parse_tensor_file(args.input, symmetrize=args.symmetrize)


def cmd_matrix(args) -> int:
    c = _load_tensor(args)
    if not (0 <= args.p <= c.n and 0 <= args.q <= c.n):
        raise InputError(f"bidegree ({args.p},{args.q}) out of range for n={c.n}")
    op = operator_matrix(c, args.p, args.q)
    spec = hermitian_spectrum(op.matrix)
    cls = classify(spec, args.tol)
    if args.format == "json":
        payload = {
            "n": c.n,
            "r": c.r,
            "bidegree": [args.p, args.q],
            "dim": op.dim,
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in op.matrix],
            "spectrum": spec.tolist(),
            "class": cls,
            "tol": args.tol,
            "residuals": {"hermitian_defect": op.hermitian_defect()},
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(_header("matrix", n=c.n, r=c.r, bidegree=f"({args.p},{args.q})", dim=op.dim, tol=args.tol))
    for row in op.matrix:
        print("[" + ", ".join(_fmt_c(z) for z in row) + "]")
    print("spectrum: [" + ", ".join(f"{x:.12g}" for x in spec) + "]")
    print(f"class: {cls}")
    return 0


def _l2_note(n, p, q, cls) -> str:
    nonneg = cls in (POSITIVE, SEMI_POSITIVE, ZERO)
    notes = []
    if p == n and q >= 1:
        notes.append(f"(n,{q})")
    if q == n:
        notes.append(f"({p},n)")
    if not notes:
        return ""
    verdict = "consistent at this point" if nonneg else "fails (A not >= 0 here)"
    return f"{' and '.join(notes)}-L2-estimate condition: {verdict} [inferred]"


def classification_payload(c, tol, seed, restarts) -> dict:
    nak = nakano_class(c, tol)
    dnak = dual_nakano_class(c, tol)
    grif = griffiths_min(c, restarts=restarts, seed=seed)
    cones = []
    for p in range(c.n + 1):
        for q in range(c.n + 1):
            rep = cone_report(c, p, q, tol)
            cones.append(
                {
                    "bidegree": [p, q],
                    "class": rep.cls,
                    "spectrum": rep.spectrum.tolist(),
                    "note": _l2_note(c.n, p, q, rep.cls),
                }
            )
    chain = theorem_chain_report(c, tol)
    return {
        "n": c.n,
        "r": c.r,
        "tol": tol,
        "seed": seed,
        "nakano": nak.to_dict(),
        "dual_nakano": dnak.to_dict(),
        "griffiths": grif.to_dict(),
        "cones": cones,
        "chain": chain.to_dict(),
    }


def print_classification(payload) -> None:
    n = payload["n"]
    print(_header("classify", n=n, r=payload["r"], tol=payload["tol"], seed=payload["seed"]))
    spec = lambda xs: "[" + ", ".join(f"{x:.10g}" for x in xs) + "]"
    print(f"Nakano:      {payload['nakano']['class']:<14} spectrum {spec(payload['nakano']['spectrum'])}")
    print(
        f"dual Nakano: {payload['dual_nakano']['class']:<14} spectrum of E* {spec(payload['dual_nakano']['spectrum'])}"
    )
    g = payload["griffiths"]
    gcls = "not semi_positive (certified)" if g["value"] < -payload["tol"] else "no violation found"
    print(f"Griffiths (heuristic): min theta over decomposables ~ {g['value']:.10g} -> {gcls}")
    print("A^{p,q} cones:")
    for row in payload["cones"]:
        p, q = row["bidegree"]
        note = f"  {row['note']}" if row["note"] else ""
        print(f"  A^{{{p},{q}}}  {row['class']:<14} min {min(row['spectrum']):.6g}  max {max(row['spectrum']):.6g}{note}")
    ch = payload["chain"]
    print("Nakano chain: " + ", ".join(f"{m['name']}={m['class']}" for m in ch["chain"]))
    for v in ch["violations"]:
        print(f"  VIOLATION: {v}")
    for v in ch["notes"]:
        print(f"  note: {v}")


def cmd_classify(args) -> int:
    c = _load_tensor(args)
    payload = classification_payload(c, args.tol, args.seed, args.restarts)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print_classification(payload)
    return 0


def cmd_star(args) -> int:
    u = parse_form_file(args.input_form)
    _write(emit_form(hodge_star(u)), args.output)
    return 0


def cmd_tilde(args) -> int:
    u = parse_form_file(args.input_form)
    _write(emit_form(tilde_map(u)), args.output)
    return 0


def cmd_dual(args) -> int:
    c = _load_tensor(args)
    _write(emit_tensor(dual_tensor(c)), args.output)
    return 0


def cmd_example(args) -> int:
    if args.name == "fubini-study":
        c = fubini_study_tensor(args.n)
    else:
        c = random_tensor(args.n, args.r, args.seed, args.mode)
    if args.emit is not None:
        _write(emit_tensor(c), args.emit)
        if args.emit in ("", "-"):
            return 0
    payload = classification_payload(c, args.tol, args.seed, args.restarts)
    payload["example"] = args.name
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"# example {args.name}")
        print_classification(payload)
    return 0


def cmd_verify(args) -> int:
    if args.n < 1 or args.r < 1 or args.trials < 1:
        raise InputError("need --n, --r, --trials >= 1")
    t0 = time.perf_counter()
    results = run_suite(args.n, args.r, args.trials, args.seed, args.tol, args.forms_per_cell)
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "n": args.n,
                    "r": args.r,
                    "trials": args.trials,
                    "seed": args.seed,
                    "tol": args.tol,
                    "passed": ok,
                    "residuals": {r.name: r.residual for r in results},
                    "properties": [r.to_dict() for r in results],
                },
                indent=2,
            )
        )
    else:
        print(_header("verify", n=args.n, r=args.r, trials=args.trials, seed=args.seed, tol=args.tol))
        for r in results:
            print(r.line())
        print(f"{'ALL PASS' if ok else 'FAILURES'} ({elapsed:.1f}s)")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvop", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"curvop {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def tensor_input(p):
        p.add_argument("--input", required=True, help="tensor file")
        p.add_argument("--symmetrize", action="store_true", help="take the Hermitian part instead of rejecting")

    def common(p, seed=False):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative classification tolerance")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if seed:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--restarts", type=int, default=16, help="Griffiths search restarts")

    p = sub.add_parser("matrix", help="operator matrix A^{p,q} and its spectrum")
    tensor_input(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("classify", help="Nakano, dual Nakano, Griffiths and A^{p,q} cones")
    tensor_input(p)
    common(p, seed=True)
    p.set_defaults(func=cmd_classify)

    for name, func, helptext in (("star", cmd_star, "Hodge star of a form file"), ("tilde", cmd_tilde, "(p,q) -> (n-q,n-p) duality map")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input-form", required=True)
        p.add_argument("--output", default="-")
        p.set_defaults(func=func)

    p = sub.add_parser("dual", help="emit the dual-bundle tensor file")
    tensor_input(p)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("example", help="built-in example tensors")
    p.add_argument("name", choices=("fubini-study", "random"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=1, help="fiber rank (random only)")
    p.add_argument("--mode", choices=(HERMITIAN, GRAM_PSD), default=HERMITIAN)
    p.add_argument("--emit", nargs="?", const="-", default=None, metavar="PATH",
                   help="write the tensor file (stdout if no PATH) instead of classifying to stdout")
    common(p, seed=True)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("verify", help="run the property suite against the brute-force oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--forms-per-cell", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())

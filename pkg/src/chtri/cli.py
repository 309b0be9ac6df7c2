"""Command-line interface: build, verify, search, tables, identities, classify.

All machine-readable output uses JSON (or JSON-lines for verification
streams); angles are serialized as {num, den} multiples of pi, never as
floating radians.  Exit codes: 0 success, 1 verification failure, 2 usage
or configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

import mpmath

from .exact import Angle, Cyclo, angle
from .linalg import classify_isometry, eigenvalues3, hermitian_signature, projective_order
from . import cosearch, reports
from .trigroup import (
    InfeasibleGroupError,
    braid_length,
    build_symmetric,
    evaluate_word,
    lemma_eigenvalues_residual,
    trace_invariants,
    verify_symmetry,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _default_prec() -> int:
    env = os.environ.get("CHTG_PREC")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return 256


def _cyclo_str(x: Cyclo) -> str:
    coeffs = x.canonical()
    if not coeffs:
        return "0"
    terms = []
    for e, q in enumerate(coeffs):
        if q == 0:
            continue
        if e == 0:
            terms.append(str(q))
        else:
            terms.append(f"({q})*z{x.n}^{e}")
    return " + ".join(terms) if terms else "0"


def _num_str(v, digits: int = 30) -> dict:
    return {"re": mpmath.nstr(v.real, digits), "im": mpmath.nstr(v.imag, digits)}


def _entry(x, prec: int) -> dict:
    if isinstance(x, Cyclo):
        d = {"exact": _cyclo_str(x)}
        d.update(_num_str(x.to_mpc(prec)))
        return d
    return _num_str(mpmath.mpc(x))


def _mat(m, prec: int) -> list:
    return [[_entry(x, prec) for x in row] for row in m.rows]


def _angle_dict(t: Angle) -> dict:
    return {"num": t.num, "den": t.den}


def _write(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_build(args) -> int:
    try:
        g = build_symmetric(args.p, args.n, args.m, im_sign=args.im_sign, prec=args.prec)
    except InfeasibleGroupError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    with mpmath.workprec(args.prec):
        sig = hermitian_signature(g.H, prec=args.prec)
        tr_s = g.S.trace()
        doc = {
            "p": args.p,
            "n": args.n,
            "m": args.m,
            "im_sign": args.im_sign,
            "exact": g.exact,
            "R1": _mat(g.R1, args.prec),
            "R2": _mat(g.R2, args.prec),
            "R3": _mat(g.R3, args.prec),
            "H": _mat(g.H, args.prec),
            "S": _mat(g.S, args.prec),
            "tr_S": _entry(tr_s, args.prec),
            "signature": sig.verdict,
            "warning": g.warning,
        }
    _write(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = mpmath.mpf(10) ** (-args.tol)
    lines = []
    failed = None
    try:
        g = build_symmetric(args.p, args.n, args.m, im_sign=args.im_sign, prec=args.prec)
    except InfeasibleGroupError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL

    rep = verify_symmetry(g, tol=tol, prec=args.prec)
    for name, res in rep.residuals.items():
        ok = res <= tol
        lines.append({"check": f"symmetry:{name}", "residual": mpmath.nstr(mpmath.mpf(res), 10), "pass": bool(ok)})
        if not ok and failed is None:
            failed = lines[-1]
    if rep.exact_square is not None:
        lines.append({"check": "symmetry:square_exact", "residual": "0" if rep.exact_square else "nonzero", "pass": bool(rep.exact_square)})
        if not rep.exact_square and failed is None:
            failed = lines[-1]

    trace_invariants(g, prec=args.prec, tol=tol)
    lines.append({"check": "trace_formulas", "residual": "0", "pass": True})

    res = lemma_eigenvalues_residual(g, prec=args.prec)
    ok = res <= tol
    lines.append({"check": "eigenvalue_lemma", "residual": mpmath.nstr(mpmath.mpf(res), 10), "pass": bool(ok)})
    if not ok and failed is None:
        failed = lines[-1]

    sig = hermitian_signature(g.H, prec=args.prec)
    if sig.verdict == "(2,1)":
        with mpmath.workprec(args.prec):
            r3 = g.R3.to_float(args.prec)
            pairs = {
                "br(R1,R3)": (g.R1.to_float(args.prec), r3, args.n),
                "br(R2,R3)": (g.R2.to_float(args.prec), r3, args.n),
                "br(R1,R2)": (g.R1.to_float(args.prec), g.R2.to_float(args.prec), args.m),
            }
            conj = r3.inverse() * g.R2.to_float(args.prec) * r3
            pairs["br(R1,R3^-1R2R3)"] = (g.R1.to_float(args.prec), conj, args.m)
            for name, (a, b, expect) in pairs.items():
                got = braid_length(a, b, max_l=args.max_braid, tol=tol, prec=args.prec)
                ok = got == expect
                lines.append({"check": name, "expected": expect, "got": got, "pass": bool(ok)})
                if not ok and failed is None:
                    failed = lines[-1]
    else:
        lines.append({"check": "braid", "skipped": f"signature {sig.verdict}", "pass": True})

    n_pass = sum(1 for l in lines if l["pass"])
    summary = {"summary": True, "checks": len(lines), "passed": n_pass, "signature": sig.verdict}
    text = "\n".join(json.dumps(l) for l in lines + [summary]) + "\n"
    _write(text, args.out)
    if failed is not None:
        print(f"FAILED: {json.dumps(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_search(args) -> int:
    cands = cosearch.search(
        den_max=args.den_max,
        n_max=args.n_max,
        m_max=args.m_max,
        workers=args.workers,
    )
    if args.format == "json":
        text = cosearch.results_to_json(cands)
    elif args.format == "csv":
        rows = ["n,m,a_num,a_den,b_num,b_den,exact_confirmed,parameter_feasible"]
        for c in cands:
            rows.append(
                f"{c.n},{c.m},{c.a.num},{c.a.den},{c.b.num},{c.b.den},"
                f"{c.exact_confirmed},{c.parameter_feasible}"
            )
        text = "\n".join(rows) + "\n"
    else:
        rows = [
            f"(n,m)=({c.n},{c.m})  a={c.a}  b={c.b}  exact={c.exact_confirmed}  "
            f"feasible={c.parameter_feasible}"
            for c in cands
        ]
        text = "\n".join(rows) + "\n"
    _write(text, args.out)
    return EXIT_OK


def cmd_tables(args) -> int:
    if args.candidate == "all":
        cids = ["(3,3)", "(3,3)-", "(3,4)", "(3,5)", "(3,5)-", "(4,3)", "(5,4)", "(8,6)", "(4,4)", "(5,5)"]
    else:
        cids = [args.candidate]
    try:
        reps = [reports.signature_scan(c, args.p_min, args.p_max, prec=args.prec) for c in cids]
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        text = reports.scan_to_csv(reps)
    elif args.format == "json":
        text = reports.scan_to_json(reps)
    else:
        text = reports.scan_to_text(reps)
    _write(text, args.out)
    return EXIT_OK


def cmd_identities(args) -> int:
    rng = random.Random(args.seed)
    results = []

    def run(name, residual_cyclo):
        ok = residual_cyclo.is_zero()
        results.append({"check": name, "pass": bool(ok)})

    suites = ("cosine-sums", "trace-table", "factorization", "half-angle")
    chosen = suites if args.suite == "all" else (args.suite,)
    for suite in chosen:
        if suite == "cosine-sums":
            for lab in cosearch.COSINE_SUM_LABELS:
                if lab in ("a", "b", "c"):
                    for _ in range(args.trials):
                        den = rng.randint(1, 60)
                        num = rng.randint(0, 2 * den - 1)
                        phi = angle(num, den)
                        run(f"cosine-sums:{lab}:phi={phi}", cosearch.cosine_sum_residual(lab, phi))
                else:
                    run(f"cosine-sums:{lab}", cosearch.cosine_sum_residual(lab))
        elif suite == "trace-table":
            for lab in cosearch.TRACE_TABLE_LABELS:
                if lab in ("i", "ii"):
                    for _ in range(args.trials):
                        den = rng.randint(1, 60)
                        num = rng.randint(0, 2 * den - 1)
                        psi = angle(num, den)
                        run(f"trace-table:{lab}:psi={psi}", cosearch.trace_table_residual(lab, psi))
                else:
                    run(f"trace-table:{lab}", cosearch.trace_table_residual(lab))
        elif suite in ("factorization", "half-angle"):
            for _ in range(args.trials):
                da, db = rng.randint(1, 30), rng.randint(1, 30)
                a = angle(rng.randint(0, 2 * da - 1), da)
                b = angle(rng.randint(0, 2 * db - 1), db)
                if suite == "factorization":
                    run(f"factorization:a={a},b={b}", cosearch.factorization_residual(a, b))
                else:
                    for i, r in enumerate(cosearch.half_angle_residuals(a, b), start=1):
                        run(f"half-angle:{i}:a={a},b={b}", r)
        else:
            print(f"unknown suite {suite!r}", file=sys.stderr)
            return EXIT_USAGE
    n_fail = sum(1 for r in results if not r["pass"])
    summary = {"summary": True, "checks": len(results), "failed": n_fail}
    text = "\n".join(json.dumps(r) for r in results + [summary]) + "\n"
    _write(text, args.out)
    return EXIT_FAIL if n_fail else EXIT_OK


def cmd_classify(args) -> int:
    try:
        word = [int(w) for w in args.word.replace(",", " ").split()]
    except ValueError:
        print("bad word; expected signed generator indices like '1 2 -3'", file=sys.stderr)
        return EXIT_USAGE
    if not word or any(w == 0 or abs(w) > 3 for w in word):
        print("bad word; indices must be in {-3..-1, 1..3}", file=sys.stderr)
        return EXIT_USAGE
    try:
        g = build_symmetric(args.p, args.n, args.m, im_sign=args.im_sign, prec=args.prec)
    except InfeasibleGroupError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    with mpmath.workprec(args.prec):
        mat = evaluate_word(g, word, prec=args.prec, use_float=True)
        tr = mat.trace()
        kind = classify_isometry(tr, prec=args.prec)
        eigs = eigenvalues3(mat, args.prec)
        order = projective_order(mat, max_order=200, prec=args.prec)
        doc = {
            "word": word,
            "p": args.p,
            "n": args.n,
            "m": args.m,
            "trace": _num_str(tr),
            "type": kind,
            "eigenvalues": [_num_str(e) for e in eigs],
            "projective_order": order,
        }
    _write(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _add_common(sp, group=True):
    sp.add_argument("--prec", type=int, default=_default_prec(), help="precision in bits")
    sp.add_argument("--tol", type=int, default=30, help="tolerance exponent k for 10^-k")
    sp.add_argument("--out", default=None, help="output file (default stdout)")
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    if group:
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--im-sign", type=int, choices=(1, -1), default=1)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chtri", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="construct a symmetric triangle group")
    _add_common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="verify symmetry, traces, braids, eigenvalues")
    _add_common(sp)
    sp.add_argument("--max-braid", type=int, default=24)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", help="enumerate exact (n,m) trace solutions")
    _add_common(sp, group=False)
    sp.add_argument("--den-max", type=int, default=90)
    sp.add_argument("--n-max", type=int, default=12)
    sp.add_argument("--m-max", type=int, default=12)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("tables", help="signature tables over a range of p")
    _add_common(sp, group=False)
    sp.add_argument("--candidate", default="all", help="'(n,m)', '(n,m)-' or 'all'")
    sp.add_argument("--p-min", type=int, default=2)
    sp.add_argument("--p-max", type=int, default=20)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("identities", help="exact cosine-identity suites")
    _add_common(sp, group=False)
    sp.add_argument("--suite", default="all",
                    choices=("all", "cosine-sums", "trace-table", "factorization", "half-angle"))
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("classify", help="classify the isometry type of a word")
    _add_common(sp)
    sp.add_argument("--word", required=True, help="signed generator indices, e.g. '1 2'")
    sp.set_defaults(func=cmd_classify)
    return ap


def _validate(args) -> bool:
    if getattr(args, "prec", 256) < 53:
        print("precision must be >= 53 bits", file=sys.stderr)
        return False
    if getattr(args, "tol", 30) < 6:
        print("tolerance exponent must be >= 6", file=sys.stderr)
        return False
    if getattr(args, "workers", 1) < 1:
        print("worker count must be >= 1", file=sys.stderr)
        return False
    return True


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if not _validate(args):
        return EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

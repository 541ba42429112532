"""Command-line front end.

Commands: pencil, equiv, nf, convert, sweep.  Exit codes: 0 verified,
1 falsified, 2 malformed input, 3 precondition violation.  All output is
UTF-8 JSON with rationals as strings; identical inputs and seeds give
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import InputError, PolylinError, PreconditionError
from .exact import ConstMatrix, is_unimodular
from . import bases, equivalence, normalforms, pencils, randgen, serialize, verify

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _dump(obj, path: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {path}: {exc}") from None


def _load_basis_arg(arg: str):
    """--basis accepts inline JSON or a path to a JSON file."""
    text = arg.strip()
    if text.startswith("{"):
        try:
            return serialize.parse_basis(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad inline basis JSON: {exc}") from None
    return serialize.parse_basis(_load(arg))


def cmd_pencil(args) -> int:
    p = serialize.parse_matrix_polynomial(_load(args.infile))
    pen = pencils.build_pencil(p)
    _dump(serialize.pencil_obj(pen), args.out)
    return EXIT_OK


def cmd_convert(args) -> int:
    p = serialize.parse_matrix_polynomial(_load(args.infile))
    target = _load_basis_arg(args.basis)
    q = bases.convert(p, target)
    _dump(serialize.matrix_polynomial_obj(q), args.out)
    return EXIT_OK


def _unit_str(unit) -> str:
    return serialize.frac_str(unit) if unit is not None else "0"


def cmd_equiv(args) -> int:
    p = serialize.parse_matrix_polynomial(_load(args.infile))
    kind = p.basis.kind
    if args.mode == "cofactors":
        pen = pencils.build_pencil(p)
        if kind == "monomial":
            cof = equivalence.monomial_cofactors(p)
        elif kind == "recurrence":
            cof = equivalence.assemble_cofactors(
                equivalence.recurrence_hermite_analogue(p, pen), pen, p)
        elif kind == "bernstein":
            cof = equivalence.assemble_cofactors(
                equivalence.bernstein_hermite_analogue(p, pen), pen, p)
        else:
            cof = equivalence.assemble_cofactors(
                equivalence.lagrange_hermite_factors(p, pen), pen, p)
        verdict = verify.verify_linearization(pen, p, cof)
        if not verdict.ok:
            _dump({"check": verdict.check, "ok": False,
                   "counterexample": verdict.counterexample}, args.out)
            return EXIT_FALSIFIED
        _, unit_e = is_unimodular(cof.e)
        _, unit_f = is_unimodular(cof.f)
        cert = {
            "kind": "cofactors",
            "basis": serialize.basis_obj(p.basis),
            "E": serialize.polymatrix_obj(cof.e),
            "F": serialize.polymatrix_obj(cof.f),
            "verified": True,
            "unit": {"E": _unit_str(unit_e), "F": _unit_str(unit_f)},
        }
        _dump(cert, args.out)
        return EXIT_OK

    if args.mode == "strict":
        if kind == "bernstein":
            se = equivalence.bernstein_strict_equivalence(p.grade, p)
            source = pencils.build_bernstein_pencil(p)
            target = pencils.build_monomial_pencil(bases.to_monomial(p))
        elif kind == "lagrange":
            se = equivalence.lagrange_strict_equivalence(p)
            source = pencils.build_lagrange_pencil(p)
            target = pencils.build_monomial_pencil(
                equivalence.lagrange_monomial_target(p))
        else:
            raise PreconditionError(
                "strict mode needs a bernstein or lagrange input")
        verdict = verify.verify_strict(se, source, target)
        if not verdict.ok:
            _dump({"check": verdict.check, "ok": False,
                   "counterexample": verdict.counterexample}, args.out)
            return EXIT_FALSIFIED
        cert = {
            "kind": "strict",
            "basis": serialize.basis_obj(p.basis),
            "U": serialize.const_matrix_obj(se.u),
            "W": serialize.const_matrix_obj(se.w),
            "verified": True,
            "unit": {"U": serialize.frac_str(se.u.det()),
                     "W": serialize.frac_str(se.w.det())},
        }
        _dump(cert, args.out)
        return EXIT_OK

    if args.mode == "reversal":
        if kind != "bernstein":
            raise PreconditionError("reversal mode needs a bernstein input")
        re = equivalence.bernstein_reversal_equivalence(list(p.coeffs), p.grade)
        verdict = verify.verify_reversal_equivalence(re, p)
        if not verdict.ok:
            _dump({"check": verdict.check, "ok": False,
                   "counterexample": verdict.counterexample}, args.out)
            return EXIT_FALSIFIED
        cert = {
            "kind": "reversal",
            "basis": serialize.basis_obj(p.basis),
            "U": serialize.const_matrix_obj(re.u),
            "Winv": serialize.const_matrix_obj(re.winv),
            "verified": True,
            "unit": {"U": serialize.frac_str(re.u.det()),
                     "Winv": serialize.frac_str(re.winv.det())},
        }
        _dump(cert, args.out)
        return EXIT_OK

    raise InputError(f"unknown mode {args.mode!r}")


def cmd_nf(args) -> int:
    m = serialize.parse_polymatrix(_load(args.infile))
    if args.kind == "hermite":
        res = normalforms.hermite_form(m)
        _dump({
            "H": serialize.polymatrix_obj(res.h),
            "U": serialize.polymatrix_obj(res.u),
            "pivots": list(res.pivot_cols),
            "rankDeficient": res.rank_deficient,
        }, args.out)
        return EXIT_OK
    if args.kind == "smith":
        res = normalforms.smith_form(m)
        _dump({
            "S": serialize.polymatrix_obj(res.s),
            "E": serialize.polymatrix_obj(res.e),
            "F": serialize.polymatrix_obj(res.f),
            "invariantFactors": [serialize.polyq_obj(s) for s in res.invariant_factors],
        }, args.out)
        return EXIT_OK
    if args.kind == "mask":
        grid = normalforms.mask(m)
        if args.out is None or args.out == "-":
            sys.stdout.write("\n".join(grid) + "\n")
        else:
            _dump({"rows": m.rows, "cols": m.cols, "mask": grid}, args.out)
        return EXIT_OK
    raise InputError(f"unknown normal form {args.kind!r}")


def _sweep_one(rng: random.Random, kind: str, nmax: int, lmax: int,
               inject_fault: bool) -> dict | None:
    """Run every applicable constructor+verifier on one random instance.

    Returns None on success or a counterexample description.
    """
    lo = 2 if kind in ("recurrence", "bernstein") else 1
    grade = rng.randint(lo, max(lo, lmax))
    n = rng.randint(1, nmax)
    basis = randgen.rand_basis(rng, kind, grade)
    p = randgen.rand_matrix_polynomial(rng, basis, n)
    pen = pencils.build_pencil(p)

    if inject_fault:
        bad = list(pen.c0.entries)
        bad[0] += 1
        pen = pencils.Pencil(pen.c1, ConstMatrix(pen.c0.rows, pen.c0.cols, bad),
                             pen.n, pen.block_count, pen.basis_tag)

    def fail(check):
        return {
            "check": check,
            "basis": kind,
            "instance": serialize.matrix_polynomial_obj(p),
        }

    v = verify.verify_companion(pen, p)
    if not v.ok:
        return fail("companion")

    try:
        if kind == "monomial":
            cof = equivalence.monomial_cofactors(p)
        elif kind == "recurrence":
            cof = equivalence.assemble_cofactors(
                equivalence.recurrence_hermite_analogue(p, pen), pen, p)
        elif kind == "bernstein":
            cof = equivalence.assemble_cofactors(
                equivalence.bernstein_hermite_analogue(p, pen), pen, p)
        else:
            cof = equivalence.assemble_cofactors(
                equivalence.lagrange_hermite_factors(p, pen), pen, p)
    except PreconditionError:
        cof = None  # singular leading block / value: documented restriction
    if cof is not None and not verify.verify_linearization(pen, p, cof).ok:
        return fail("linearization")

    if kind == "bernstein":
        se = equivalence.bernstein_strict_equivalence(grade, p)
        target = pencils.build_monomial_pencil(bases.to_monomial(p))
        if not verify.verify_strict(se, pen, target).ok:
            return fail("strict")
        re = equivalence.bernstein_reversal_equivalence(list(p.coeffs), grade)
        if not verify.verify_reversal_equivalence(re, p).ok:
            return fail("reversal")
    if kind == "lagrange":
        se = equivalence.lagrange_strict_equivalence(p)
        target = pencils.build_monomial_pencil(equivalence.lagrange_monomial_target(p))
        if not verify.verify_strict(se, pen, target).ok:
            return fail("strict")
    return None


def cmd_sweep(args) -> int:
    kinds = [k.strip() for k in args.bases.split(",") if k.strip()]
    for k in kinds:
        if k not in ("monomial", "recurrence", "bernstein", "lagrange"):
            raise InputError(f"unknown basis kind {k!r}")
    rng = random.Random(args.seed)
    report = {"seed": args.seed, "count": args.count, "nmax": args.nmax,
              "lmax": args.lmax, "bases": {}, "ok": True}
    counterexample = None
    for kind in kinds:
        passed = 0
        for i in range(args.count):
            fault = args.inject_fault and i == 0
            bad = _sweep_one(rng, kind, args.nmax, args.lmax, fault)
            if bad is None:
                passed += 1
            else:
                counterexample = bad
                break
        report["bases"][kind] = {"passed": passed, "of": args.count}
        if counterexample:
            report["ok"] = False
            report["counterexample"] = counterexample
            break
    _dump(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polylin",
        description="Exact companion pencils, equivalences, and normal forms over Q[z].",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pencil", help="build the companion pencil of a matrix polynomial")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_pencil)

    sp = sub.add_parser("convert", help="convert a matrix polynomial to another basis")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--basis", required=True, help="target basis (inline JSON or file)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("equiv", help="build and verify an equivalence certificate")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--mode", choices=["cofactors", "strict", "reversal"],
                    default="cofactors")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("nf", help="Hermite/Smith normal form or structural mask")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--kind", choices=["hermite", "smith", "mask"], required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("sweep", help="randomized construct-and-verify sweep")
    sp.add_argument("--bases", default="monomial,recurrence,bernstein,lagrange")
    sp.add_argument("--nmax", type=int, default=3)
    sp.add_argument("--lmax", type=int, default=6)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--inject-fault", action="store_true",
                    help=argparse.SUPPRESS)  # test hook: corrupt one entry
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PolylinError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())

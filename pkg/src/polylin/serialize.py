"""JSON encoding of every on-disk object.

Rationals serialize as strings "p/q" (or "p" when the denominator is 1) so
exactness survives the trip; all readers reject anything else.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .exact import ConstMatrix, PolyMatrix, PolyQ
from .bases import (
    BasisSpec,
    Bernstein,
    Lagrange,
    MatrixPolynomial,
    Monomial,
    Recurrence,
)
from .pencils import Pencil


def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InputError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}: {exc}") from None


def const_matrix_obj(m: ConstMatrix) -> list[list[str]]:
    return [[frac_str(x) for x in row] for row in m.to_rows()]


def parse_const_matrix(obj) -> ConstMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be a non-empty list of rows")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise InputError("matrix rows must be non-empty and equal length")
    return ConstMatrix.from_rows([[parse_frac(x) for x in row] for row in obj])


def polyq_obj(p: PolyQ) -> list[str]:
    return [frac_str(c) for c in p.padded()]


def parse_polyq(obj) -> PolyQ:
    if not isinstance(obj, list) or not obj:
        raise InputError("polynomial must be a non-empty coefficient list")
    return PolyQ([parse_frac(c) for c in obj], grade=len(obj) - 1)


def polymatrix_obj(m: PolyMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[polyq_obj(m.get(i, j)) for j in range(m.cols)]
                    for i in range(m.rows)],
    }


def parse_polymatrix(obj) -> PolyMatrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError("polynomial matrix needs an 'entries' field")
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries:
        raise InputError("'entries' must be a non-empty list of rows")
    rows = []
    for row in entries:
        if not isinstance(row, list):
            raise InputError("each entry row must be a list")
        rows.append([parse_polyq(e) for e in row])
    m = PolyMatrix.from_rows(rows)
    if "rows" in obj and obj["rows"] != m.rows:
        raise InputError("row count mismatch")
    if "cols" in obj and obj["cols"] != m.cols:
        raise InputError("column count mismatch")
    return m


def basis_obj(b: BasisSpec) -> dict:
    out = {"kind": b.kind, "grade": b.grade}
    if isinstance(b, Recurrence):
        out["alpha"] = [frac_str(x) for x in b.alpha]
        out["beta"] = [frac_str(x) for x in b.beta]
        out["gamma"] = [frac_str(x) for x in b.gamma]
    elif isinstance(b, Lagrange):
        out["nodes"] = [frac_str(x) for x in b.nodes]
    return out


def parse_basis(obj) -> BasisSpec:
    if not isinstance(obj, dict):
        raise InputError("basis must be an object")
    kind = obj.get("kind")
    grade = obj.get("grade")
    if not isinstance(grade, int) or isinstance(grade, bool):
        raise InputError("basis needs an integer 'grade'")
    if kind == "monomial":
        return Monomial(grade)
    if kind == "bernstein":
        return Bernstein(grade)
    if kind == "recurrence":
        try:
            alpha = [parse_frac(x) for x in obj["alpha"]]
            beta = [parse_frac(x) for x in obj["beta"]]
            gamma = [parse_frac(x) for x in obj["gamma"]]
        except KeyError as exc:
            raise InputError(f"recurrence basis missing {exc}") from None
        return Recurrence(grade, tuple(alpha), tuple(beta), tuple(gamma))
    if kind == "lagrange":
        if "nodes" not in obj:
            raise InputError("lagrange basis missing 'nodes'")
        return Lagrange(grade, tuple(parse_frac(x) for x in obj["nodes"]))
    raise InputError(f"unknown basis kind {kind!r}")


def matrix_polynomial_obj(p: MatrixPolynomial) -> dict:
    return {
        "n": p.n,
        "basis": basis_obj(p.basis),
        "coeffs": [const_matrix_obj(c) for c in p.coeffs],
    }


def parse_matrix_polynomial(obj) -> MatrixPolynomial:
    if not isinstance(obj, dict):
        raise InputError("matrix polynomial must be an object")
    try:
        n = obj["n"]
        basis = parse_basis(obj["basis"])
        coeffs = obj["coeffs"]
    except KeyError as exc:
        raise InputError(f"matrix polynomial missing {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("'n' must be a positive integer")
    if not isinstance(coeffs, list):
        raise InputError("'coeffs' must be a list")
    blocks = tuple(parse_const_matrix(c) for c in coeffs)
    try:
        return MatrixPolynomial(n, basis, blocks)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def pencil_obj(p: Pencil) -> dict:
    return {
        "n": p.n,
        "blocks": p.block_count,
        "C1": const_matrix_obj(p.c1),
        "C0": const_matrix_obj(p.c0),
        "basis": p.basis_tag,
    }


def parse_pencil(obj) -> Pencil:
    if not isinstance(obj, dict):
        raise InputError("pencil must be an object")
    try:
        n = obj["n"]
        blocks = obj["blocks"]
        c1 = parse_const_matrix(obj["C1"])
        c0 = parse_const_matrix(obj["C0"])
        tag = obj.get("basis", "unknown")
    except KeyError as exc:
        raise InputError(f"pencil missing {exc}") from None
    if c1.rows != n * blocks or not c1.is_square or c0.rows != c1.rows:
        raise InputError("pencil dimensions inconsistent")
    return Pencil(c1, c0, n, blocks, tag)

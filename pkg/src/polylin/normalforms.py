"""Hermite and Smith normal forms over Q[z], plus the zero/nonzero mask."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch
from .exact import PolyMatrix, PolyQ


@dataclass(frozen=True)
class HermiteResult:
    """Upper-triangular H with monic pivots and U unimodular, U @ M = H.

    Entries above each pivot have degree strictly below the pivot degree.
    rank_deficient flags an identically-zero determinant; pivot_cols lists
    the columns where pivots were found.
    """

    h: PolyMatrix
    u: PolyMatrix
    pivot_cols: tuple[int, ...]
    rank_deficient: bool


@dataclass(frozen=True)
class SmithResult:
    """Diagonal S with monic invariant factors s_1 | s_2 | ... and
    unimodular E, F reconstructing M = E @ S @ F.  Zero factors sort last."""

    s: PolyMatrix
    e: PolyMatrix
    f: PolyMatrix
    invariant_factors: tuple[PolyQ, ...]


def _rows_of(m: PolyMatrix) -> list[list[PolyQ]]:
    return [list(r) for r in m.to_rows()]


def hermite_form(m: PolyMatrix) -> HermiteResult:
    """Row Hermite normal form over Q[z] by extended-gcd row reduction."""
    if not m.is_square:
        raise DimensionMismatch("hermite_form expects a square matrix")
    n = m.rows
    h = _rows_of(m)
    u = _rows_of(PolyMatrix.identity(n))

    def row_sub(i: int, k: int, q: PolyQ):
        if q.is_zero:
            return
        h[i] = [a - q * b for a, b in zip(h[i], h[k])]
        u[i] = [a - q * b for a, b in zip(u[i], u[k])]

    r = 0
    pivots = []
    for c in range(n):
        while True:
            nz = [i for i in range(r, n) if not h[i][c].is_zero]
            if not nz:
                break
            imin = min(nz, key=lambda i: h[i][c].degree)
            if imin != r:
                h[r], h[imin] = h[imin], h[r]
                u[r], u[imin] = u[imin], u[r]
            others = [i for i in range(r + 1, n) if not h[i][c].is_zero]
            if not others:
                break
            for i in others:
                row_sub(i, r, h[i][c] // h[r][c])
        if r < n and not h[r][c].is_zero:
            lc = 1 / h[r][c].lead
            h[r] = [a.scale(lc) for a in h[r]]
            u[r] = [a.scale(lc) for a in u[r]]
            for i in range(r):
                row_sub(i, r, h[i][c] // h[r][c])
            pivots.append(c)
            r += 1
    return HermiteResult(
        PolyMatrix.from_rows(h),
        PolyMatrix.from_rows(u),
        tuple(pivots),
        rank_deficient=(r < n),
    )


def smith_form(m: PolyMatrix) -> SmithResult:
    """Smith normal form over Q[z] with accumulated unimodular E, F.

    Alternating row/column gcd reduction brings the matrix to diagonal
    form; a divisibility fix-up merges offending entries into the pivot
    until s_i | s_{i+1} holds along the whole chain.
    """
    if not m.is_square:
        raise DimensionMismatch("smith_form expects a square matrix")
    n = m.rows
    s = _rows_of(m)
    e = _rows_of(PolyMatrix.identity(n))
    f = _rows_of(PolyMatrix.identity(n))

    # invariant: original = E @ S @ F throughout
    def row_swap(i, k):
        s[i], s[k] = s[k], s[i]
        for row in e:
            row[i], row[k] = row[k], row[i]

    def col_swap(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        f[j], f[k] = f[k], f[j]

    def row_sub(i, k, q: PolyQ):
        # S_i -= q * S_k, compensated by E col_k += q * E col_i
        if q.is_zero:
            return
        s[i] = [a - q * b for a, b in zip(s[i], s[k])]
        for row in e:
            row[k] = row[k] + q * row[i]

    def col_sub(j, k, q: PolyQ):
        # S col_j -= q * S col_k, compensated by F row_k += q * F row_j
        if q.is_zero:
            return
        for row in s:
            row[j] = row[j] - q * row[k]
        f[k] = [a + q * b for a, b in zip(f[k], f[j])]

    def row_scale(i, c):
        s[i] = [a.scale(c) for a in s[i]]
        inv = 1 / c
        for row in e:
            row[i] = row[i].scale(inv)

    for t in range(n):
        # locate a minimum-degree nonzero entry in the trailing submatrix
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if not s[i][j].is_zero:
                    if best is None or s[i][j].degree < s[best[0]][best[1]].degree:
                        best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            restart = False
            for i in range(t + 1, n):
                if s[i][t].is_zero:
                    continue
                q, rem = divmod(s[i][t], s[t][t])
                row_sub(i, t, q)
                if not rem.is_zero:
                    row_swap(t, i)  # smaller-degree pivot
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                if s[t][j].is_zero:
                    continue
                q, rem = divmod(s[t][j], s[t][t])
                col_sub(j, t, q)
                if not rem.is_zero:
                    col_swap(t, j)
                    restart = True
                    break
            if restart:
                continue
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if not (s[i][j] % s[t][t]).is_zero:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, PolyQ((-1,)))  # add the offending row
        if not s[t][t].is_zero and s[t][t].lead != 1:
            row_scale(t, 1 / s[t][t].lead)

    factors = tuple(s[i][i] for i in range(n))
    return SmithResult(
        PolyMatrix.from_rows(s),
        PolyMatrix.from_rows(e),
        PolyMatrix.from_rows(f),
        factors,
    )


def mask(m: PolyMatrix) -> list[str]:
    """Zero/nonzero structural fingerprint as a grid of '0'/'x' strings."""
    return ["".join("0" if m.get(i, j).is_zero else "x" for j in range(m.cols))
            for i in range(m.rows)]

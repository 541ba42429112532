"""Unimodular cofactors, triangular factorizations, strict equivalences,
and reversal maps for the companion pencils.

Sign conventions follow the pencil constructors in `pencils`; every
factorization here is checked against its defining identity before it is
returned (closed forms extrapolated beyond the sizes they were derived at
fail loudly with ConjectureFailure instead of returning unverified data).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConjectureFailure,
    GenericityFailure,
    GradeTooSmall,
    SingularAtOne,
    SingularNodeValue,
    WrongBasis,
)
from .exact import (
    ConstMatrix,
    POLY_ONE,
    POLY_Z,
    PolyMatrix,
    PolyQ,
    const_from_blocks,
    polymatrix_inverse_unimodular,
    polymatrix_mul,
    solve_exact,
)
from .bases import (
    Bernstein,
    Lagrange,
    MatrixPolynomial,
    Monomial,
    Recurrence,
    barycentric_weights,
    matrix_poly_as_polymatrix,
    recurrence_basis_polys,
    to_monomial,
    from_monomial,
)
from .pencils import (
    Pencil,
    build_bernstein_pencil,
    build_lagrange_pencil,
    build_monomial_pencil,
)


@dataclass(frozen=True)
class CofactorPair:
    """Unimodular E, F with E @ L @ F = diag(P, I, ..., I)."""

    e: PolyMatrix
    f: PolyMatrix


@dataclass(frozen=True)
class HermiteAnalogue:
    """Factorization L = Uinv @ H with H equal to the identity outside one
    block column and P(z) (up to the constant left factor corner_factor)
    in the corner of that column."""

    uinv: PolyMatrix
    h: PolyMatrix
    corner_index: int
    corner_factor: ConstMatrix


@dataclass(frozen=True)
class StrictEquivalence:
    """Constant nonsingular U, W with U @ C1 @ W and U @ C0 @ W mapping one
    pencil onto another."""

    u: ConstMatrix
    w: ConstMatrix


@dataclass(frozen=True)
class ReversalEquivalence:
    """Constant U and W^{-1} relating the pencil of the reversed
    coefficients to the reversal of the original pencil."""

    u: ConstMatrix
    winv: ConstMatrix


# ---------------------------------------------------------------------------
# small block helpers


def _poly_identity_block(n: int, poly: PolyQ) -> PolyMatrix:
    return PolyMatrix(n, n, [poly if i == j else PolyQ.zero()
                             for i in range(n) for j in range(n)])


def _const_to_poly_block(c: ConstMatrix) -> PolyMatrix:
    return PolyMatrix.from_const(c)


def _const_times_polymatrix(c: ConstMatrix, m: PolyMatrix) -> PolyMatrix:
    """c @ m with c constant."""
    out = []
    for i in range(c.rows):
        for j in range(m.cols):
            acc = PolyQ.zero()
            for k in range(c.cols):
                f = c.get(i, k)
                if f:
                    acc = acc + m.get(k, j).scale(f)
            out.append(acc)
    return PolyMatrix(c.rows, m.cols, out)


def _replace_block_column(m: PolyMatrix, n: int, col: int,
                          blocks: list[PolyMatrix]) -> PolyMatrix:
    rows = [list(r) for r in m.to_rows()]
    for bi, blk in enumerate(blocks):
        for r in range(n):
            for c in range(n):
                rows[bi * n + r][col * n + c] = blk.get(r, c)
    return PolyMatrix.from_rows(rows)


def _block_column(m: PolyMatrix, n: int, col: int) -> list[PolyMatrix]:
    count = m.rows // n
    out = []
    for bi in range(count):
        out.append(PolyMatrix(n, n, [m.get(bi * n + r, col * n + c)
                                     for r in range(n) for c in range(n)]))
    return out


def _identity_with_block_column(count: int, n: int, col: int,
                                blocks: list[PolyMatrix]) -> PolyMatrix:
    base = PolyMatrix.identity(count * n)
    return _replace_block_column(base, n, col, blocks)


def _reverse_block_rows(m: PolyMatrix, n: int) -> PolyMatrix:
    count = m.rows // n
    rows = m.to_rows()
    out = []
    for bi in range(count - 1, -1, -1):
        out.extend(rows[bi * n : (bi + 1) * n])
    return PolyMatrix.from_rows(out)


def _reverse_block_cols(m: PolyMatrix, n: int) -> PolyMatrix:
    count = m.cols // n
    out_rows = []
    for r in m.to_rows():
        new = []
        for bj in range(count - 1, -1, -1):
            new.extend(r[bj * n : (bj + 1) * n])
        out_rows.append(new)
    return PolyMatrix.from_rows(out_rows)


def _check_last_column(ha: HermiteAnalogue, pencil: Pencil):
    """Verify Uinv @ H = L on the replaced column (the rest is immediate)."""
    n = pencil.n
    m = pencil.block_count
    lz = pencil.as_polymatrix()
    hcol = _block_column(ha.h, n, ha.corner_index)
    for bi in range(m):
        acc = PolyMatrix.zeros(n, n)
        for k in range(m):
            blk = PolyMatrix(n, n, [ha.uinv.get(bi * n + r, k * n + c)
                                    for r in range(n) for c in range(n)])
            if not blk.is_zero:
                acc = acc + polymatrix_mul(blk, hcol[k])
        want = PolyMatrix(n, n, [lz.get(bi * n + r, ha.corner_index * n + c)
                                 for r in range(n) for c in range(n)])
        if acc != want:
            raise ConjectureFailure(
                f"triangular factorization failed at block row {bi}")


# ---------------------------------------------------------------------------
# monomial basis


def monomial_cofactors(p: MatrixPolynomial) -> CofactorPair:
    """Closed-form unimodular cofactors for the second companion form.

    E carries the partial Horner evaluations of P across its first block
    row and a -I/-z*I staircase below; F is the block anti-identity whose
    first column holds descending powers of z.  Both have determinant +-1.
    """
    if not isinstance(p.basis, Monomial):
        raise WrongBasis("expected a monomial-basis polynomial")
    L = p.grade
    n = p.n
    A = p.coeffs
    m = L
    zero = PolyQ.zero()
    eye = POLY_ONE

    # partial Horner evaluations: horner[L] = A_L, horner[k] = A_k + z*horner[k+1]
    horner: dict[int, PolyMatrix] = {L: _const_to_poly_block(A[L])}
    for k in range(L - 1, 0, -1):
        shifted = horner[k + 1].scale_poly(POLY_Z)
        horner[k] = _const_to_poly_block(A[k]) + shifted

    e_rows = []
    for r in range(n):
        row = []
        for j in range(m):
            if j == 0:
                row.extend(eye if r == c else zero for c in range(n))
            else:
                blk = horner[L + 1 - (j + 1)]  # column j holds H_{L-j}
                row.extend(blk.get(r, c) for c in range(n))
        e_rows.append(row)
    for bi in range(1, m):
        first = m + 1 - (bi + 1)  # 0-based column where the staircase starts
        for r in range(n):
            row = []
            for j in range(m):
                if j >= first:
                    power = j - first
                    row.extend(PolyQ.monomial(power, -1) if r == c else zero
                               for c in range(n))
                else:
                    row.extend(zero for _ in range(n))
            e_rows.append(row)
    e = PolyMatrix.from_rows(e_rows)

    f_rows = []
    for bi in range(m):
        for r in range(n):
            row = []
            for j in range(m):
                if j == 0 and m > 1:
                    row.extend(PolyQ.monomial(L - 1 - bi) if r == c else zero
                               for c in range(n))
                elif (bi + 1) + (j + 1) == m + 1 or (m == 1 and j == 0):
                    row.extend(eye if r == c else zero for c in range(n))
                else:
                    row.extend(zero for _ in range(n))
            f_rows.append(row)
    f = PolyMatrix.from_rows(f_rows)
    return CofactorPair(e, f)


# ---------------------------------------------------------------------------
# recurrence basis


def recurrence_hermite_analogue(p: MatrixPolynomial, pencil: Pencil) -> HermiteAnalogue:
    """Triangular factorization L = Uinv @ H for a recurrence-basis pencil.

    Uinv shares its first m-1 block columns with L; its last column is
    e_1 * u0 with u0 = lc * A_L, where lc is the leading coefficient of the
    top basis polynomial.  H is the identity with last column
    [-phi_{m-1} I, ..., -phi_1 I, corner], corner = (1/lc) * A_L^{-1} P(z)
    (the monic normalization in the scalar case).  Requires A_L nonsingular.
    """
    if not isinstance(p.basis, Recurrence):
        raise WrongBasis("expected a recurrence-basis polynomial")
    spec = p.basis
    L = p.grade
    n = p.n
    m = pencil.block_count
    al, be, ga = spec.alpha, spec.beta, spec.gamma

    a_lead_inv = p.coeffs[L].try_inverse()
    if a_lead_inv is None:
        raise GenericityFailure("leading coefficient block is singular")

    # triangular solve for the h_k (scalar polynomials times the identity)
    hs: dict[int, PolyQ] = {0: PolyQ((-1,))}
    hs[1] = PolyQ((be[0], -1)).scale(1 / al[0])  # -(z - beta_0)/alpha_0
    for k in range(1, m - 1):
        nxt = (POLY_Z - PolyQ.constant(be[k])) * hs[k] - hs[k - 1].scale(ga[k])
        hs[k + 1] = nxt.scale(1 / al[k])

    phis = recurrence_basis_polys(spec)
    lc = phis[L].lead
    u0 = p.coeffs[L].scale(lc)
    pz = matrix_poly_as_polymatrix(p)
    corner = _const_times_polymatrix(a_lead_inv.scale(1 / lc), pz)

    h_col = [_poly_identity_block(n, hs[m - j]) for j in range(1, m)] + [corner]
    h = _identity_with_block_column(m, n, m - 1, h_col)

    lz = pencil.as_polymatrix()
    last = [_const_to_poly_block(u0)] + [PolyMatrix.zeros(n, n)] * (m - 1)
    uinv = _replace_block_column(lz, n, m - 1, last)

    ha = HermiteAnalogue(uinv, h, m - 1, u0)
    _check_last_column(ha, pencil)
    return ha


# ---------------------------------------------------------------------------
# Bernstein basis


def bernstein_hermite_analogue(p: MatrixPolynomial, pencil: Pencil) -> HermiteAnalogue:
    """Triangular factorization L = Uinv @ H for the Bernstein pencil.

    Solvable exactly when P(1) (= the top Bernstein coefficient) is
    nonsingular; otherwise SingularAtOne is raised and the strict
    equivalence should be used.  The corner of H is P(z) itself.
    """
    if not isinstance(p.basis, Bernstein):
        raise WrongBasis("expected a Bernstein-basis polynomial")
    L = p.grade
    n = p.n
    m = pencil.block_count
    p1_inv = p.coeffs[L].try_inverse()  # P(1) equals the top coefficient
    if p1_inv is None:
        raise SingularAtOne("P(1) is singular; use the strict equivalence")

    pz = matrix_poly_as_polymatrix(p)
    z_minus_1 = PolyQ((-1, 1))

    def div_z_minus_1(mat: PolyMatrix) -> PolyMatrix:
        return PolyMatrix(n, n, [e.exact_div(z_minus_1) for e in mat.entries])

    vs: dict[int, ConstMatrix] = {}
    hs: dict[int, PolyMatrix] = {}
    vs[m] = p1_inv.scale(L)
    num = _poly_identity_block(n, PolyQ((0, L))) - _const_times_polymatrix(vs[m], pz)
    hs[1] = div_z_minus_1(num)
    for i in range(m - 1, 1, -1):
        k = m - i
        coef = Fraction(i, L + 1 - i)
        hk_at_1 = hs[k].evaluate(1)
        vs[i] = -(hk_at_1 @ p1_inv).scale(coef)
        num = hs[k].scale_poly(PolyQ((0, coef))) + _const_times_polymatrix(vs[i], pz)
        hs[k + 1] = div_z_minus_1(-num)
    vs[1] = -(p.coeffs[L] @ hs[m - 1].evaluate(1) @ p1_inv).scale(Fraction(1, L))

    h_col = [hs[m - j] for j in range(1, m)] + [pz]
    h = _identity_with_block_column(m, n, m - 1, h_col)
    lz = pencil.as_polymatrix()
    last = [_const_to_poly_block(vs[i + 1]) for i in range(m)]
    uinv = _replace_block_column(lz, n, m - 1, last)

    ha = HermiteAnalogue(uinv, h, m - 1, ConstMatrix.identity(n))
    _check_last_column(ha, pencil)
    return ha


# ---------------------------------------------------------------------------
# Lagrange basis


def lagrange_hermite_factors(p: MatrixPolynomial, pencil: Pencil) -> HermiteAnalogue:
    """Triangular factorization L = Uinv @ H for the arrowhead pencil.

    Valid when every value P_k is nonsingular.  Uinv is L with its last
    block column replaced by [0, U_L, ..., U_1, 0]; H is the identity with
    last column [G I, H_L, ..., H_1, P(z)], where

        G   = (z - tau_0)/beta_0,
        U_k = -(beta_k/beta_0)(tau_k - tau_0) P_k^{-1},
        H_k = -(beta_k G I + U_k P(z)) / (z - tau_k)   (division exact).

    A consequence (checked here) is sum_k P_k H_k = P_0.
    """
    if not isinstance(p.basis, Lagrange):
        raise WrongBasis("expected a Lagrange-basis polynomial")
    spec = p.basis
    L = p.grade
    n = p.n
    m = pencil.block_count
    bary = barycentric_weights(spec.nodes)
    beta = bary.weights
    tau = spec.nodes

    inverses = []
    for k, blk in enumerate(p.coeffs):
        inv = blk.try_inverse()
        if inv is None:
            raise SingularNodeValue(k)
        inverses.append(inv)

    pz = matrix_poly_as_polymatrix(p)
    g_poly = PolyQ((-tau[0], 1)).scale(1 / beta[0])

    u_blocks: dict[int, ConstMatrix] = {}
    h_blocks: dict[int, PolyMatrix] = {}
    for k in range(1, L + 1):
        u_blocks[k] = inverses[k].scale(-(beta[k] / beta[0]) * (tau[k] - tau[0]))
        num = _poly_identity_block(n, g_poly.scale(beta[k])) + \
            _const_times_polymatrix(u_blocks[k], pz)
        div = PolyQ((-tau[k], 1))
        h_blocks[k] = PolyMatrix(n, n, [e.exact_div(div) for e in (-num).entries])

    # H column: [G I, H_L, ..., H_1, P(z)]
    h_col = [_poly_identity_block(n, g_poly)] + \
        [h_blocks[L + 1 - r] for r in range(1, L + 1)] + [pz]
    h = _identity_with_block_column(m, n, m - 1, h_col)

    lz = pencil.as_polymatrix()
    last = [PolyMatrix.zeros(n, n)] + \
        [_const_to_poly_block(u_blocks[L + 1 - r]) for r in range(1, L + 1)] + \
        [PolyMatrix.zeros(n, n)]
    uinv = _replace_block_column(lz, n, m - 1, last)

    ha = HermiteAnalogue(uinv, h, m - 1, ConstMatrix.identity(n))
    _check_last_column(ha, pencil)
    return ha


# ---------------------------------------------------------------------------
# assembling cofactors from a triangular factorization


def assemble_cofactors(ha: HermiteAnalogue, pencil: Pencil,
                       p: MatrixPolynomial) -> CofactorPair:
    """Turn L = Uinv @ H into unimodular E, F with E @ L @ F = diag(P, I, ...).

    E = diag(corner_factor, I, ..., I) @ SIP @ Uinv^{-1}; F first clears the
    off-corner entries of H's designated column, then applies the SIP block
    permutation that moves the corner to position (1, 1).
    """
    n = pencil.n
    m = pencil.block_count
    u = polymatrix_inverse_unimodular(ha.uinv)
    e = _reverse_block_rows(u, n)
    if ha.corner_factor != ConstMatrix.identity(n):
        rows = e.to_rows()
        top = PolyMatrix.from_rows(rows[:n])
        scaled = _const_times_polymatrix(ha.corner_factor, top)
        e = PolyMatrix.from_rows(scaled.to_rows() + rows[n:])
    col = ha.corner_index
    h_col = _block_column(ha.h, n, col)
    f1_col = [-blk for blk in h_col[:-1]] + [PolyMatrix.identity(n)]
    f1 = _identity_with_block_column(m, n, col, f1_col)
    f = _reverse_block_cols(f1, n)
    return CofactorPair(e, f)


# ---------------------------------------------------------------------------
# Bernstein strict equivalence


def _bernstein_binomial_w(L: int) -> ConstMatrix:
    """Closed-form lower-triangular change matrix: entry (i, j), 1-based,
    is (-1)^(i+j) C(L, i) C(i-1, j-1)."""
    rows = []
    for i in range(1, L + 1):
        row = []
        for j in range(1, L + 1):
            sign = -1 if (i + j) % 2 else 1
            row.append(Fraction(sign * math.comb(L, i) * math.comb(i - 1, j - 1)))
        rows.append(row)
    return ConstMatrix.from_rows(rows)


def bernstein_strict_equivalence(grade: int, p: MatrixPolynomial) -> StrictEquivalence:
    """Constant U, W with U @ L_B(z) @ W = L_M(z).

    L_B is the Bernstein pencil of p and L_M the monomial pencil of the
    same polynomial (same grade).  W comes from the closed binomial form;
    the unknown first block row of U^{-1} is found by an exact linear
    solve, the remaining rows being e_1 and the leading part of W.  Works
    whether or not P(1) is singular.  Both identities are verified before
    returning.
    """
    if not isinstance(p.basis, Bernstein):
        raise WrongBasis("expected a Bernstein-basis polynomial")
    if grade != p.grade:
        raise WrongBasis("grade argument disagrees with the polynomial")
    if grade < 2:
        raise GradeTooSmall("strict equivalence needs grade >= 2")
    L = grade
    n = p.n
    N = L * n
    lb = build_bernstein_pencil(p)
    lm = build_monomial_pencil(to_monomial(p))
    w_scalar = _bernstein_binomial_w(L)
    w = w_scalar.kron_identity(n)

    r1 = lb.c1 @ w
    r0 = lb.c0 @ w
    top = ConstMatrix.from_rows
    r1_top = top([r1.row(i) for i in range(n)])
    r0_top = top([r0.row(i) for i in range(n)])
    a_sys = top([lm.c1.transpose().row(i) for i in range(N)] +
                [lm.c0.transpose().row(i) for i in range(N)])
    b_sys = top([r1_top.transpose().row(i) for i in range(N)] +
                [r0_top.transpose().row(i) for i in range(N)])
    xt = solve_exact(a_sys, b_sys)
    if xt is None:
        raise ConjectureFailure(f"no first row solves the grade-{L} system")
    x = xt.transpose()  # n x N

    rows = [x.row(i) for i in range(n)]
    zeros = [Fraction(0)] * n
    for bi in range(1, L):
        for r in range(n):
            row = list(zeros)
            for bj in range(1, L):
                blk = w_scalar.get(bi - 1, bj - 1)
                row.extend(blk if r == c else Fraction(0) for c in range(n))
            rows.append(row)
    uinv = ConstMatrix.from_rows(rows)
    u = uinv.try_inverse()
    if u is None:
        raise ConjectureFailure(f"U^(-1) singular at grade {L}")
    if u @ lb.c1 @ w != lm.c1 or u @ lb.c0 @ w != lm.c0:
        raise ConjectureFailure(f"strict-equivalence identities failed at grade {L}")
    return StrictEquivalence(u, w)


# ---------------------------------------------------------------------------
# Bernstein reversals


def bernstein_reversal_coeffs(y: list[ConstMatrix], grade: int) -> list[ConstMatrix]:
    """Coefficients d of rev p(z) = (z+1)^grade p(1/(z+1)) in the same
    Bernstein basis: d_k = sum_j C(k, j) y_{grade-j}."""
    if len(y) != grade + 1:
        raise ValueError("need grade+1 coefficients")
    out = []
    for k in range(grade + 1):
        acc = y[grade].scale(math.comb(k, 0))
        for j in range(1, k + 1):
            acc = acc + y[grade - j].scale(math.comb(k, j))
        out.append(acc)
    return out


def standard_reversal_coeffs(y: list[ConstMatrix], grade: int) -> list[ConstMatrix]:
    """Coefficients e of z^grade p(1/z) in the same Bernstein basis:
    e_k = sum_m (-1)^m C(grade-k, m) y_{grade-m}."""
    if len(y) != grade + 1:
        raise ValueError("need grade+1 coefficients")
    out = []
    for k in range(grade + 1):
        acc = None
        for m_ in range(grade - k + 1):
            term = y[grade - m_].scale(Fraction((-1) ** m_ * math.comb(grade - k, m_)))
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def reversal_u_entry(grade: int, i: int, j: int) -> Fraction:
    """Closed form -((grade-i+1)/i) C(i, grade+1-j), 1-based, for the
    anti-triangular factor; its anti-diagonal is -(grade-i+1)/i."""
    return -Fraction(grade - i + 1, i) * math.comb(i, grade + 1 - j)


def reversal_z_entry(grade: int, i: int, j: int) -> Fraction:
    """Closed form -((grade-i)/j) C(i, grade-j), 1-based, valid for
    1 <= i, j <= grade-1."""
    return -Fraction(grade - i, j) * math.comb(i, grade - j)


def bernstein_reversal_equivalence(y: list[ConstMatrix], grade: int) -> ReversalEquivalence:
    """Constant U, W^{-1} with U @ A_R = (B - A) @ W^{-1} and
    U @ B_R = A @ W^{-1}, where (A, B) = (C0, C1) of the Bernstein pencil
    of y and (A_R, B_R) the same for the reversed coefficients d.

    The closed-form entry data (reversal_u_entry / reversal_z_entry plus
    the d-coefficient column) is indexed for the transposed, corner-flipped
    companion orientation, so here it enters with block indices flipped and
    transposed: W^{-1}(i, j) = u_{L+1-j, L+1-i} I, and U carries the
    z-entries the same way with the d-coefficient blocks across its first
    block row.  Both determinants are +-1; everything is verified before
    returning.
    """
    L = grade
    if L < 2:
        raise GradeTooSmall("reversal equivalence needs grade >= 2")
    if len(y) != L + 1:
        raise ValueError("need grade+1 coefficients")
    n = y[0].rows
    d = bernstein_reversal_coeffs(y, L)
    basis = Bernstein(L)
    pen_y = build_bernstein_pencil(MatrixPolynomial(n, basis, tuple(y)))
    pen_d = build_bernstein_pencil(MatrixPolynomial(n, basis, tuple(d)))
    a_mat, b_mat = pen_y.c0, pen_y.c1
    ar_mat, br_mat = pen_d.c0, pen_d.c1
    eye = ConstMatrix.identity(n)

    u_grid = [[None] * L for _ in range(L)]
    u_grid[0][0] = eye
    for j in range(2, L + 1):
        u_grid[0][j - 1] = d[L + 1 - j] - y[L].scale(Fraction(j - 1, L))
    for i in range(2, L + 1):
        for j in range(2, L + 1):
            val = reversal_z_entry(L, L + 1 - j, L + 1 - i)
            if val:
                u_grid[i - 1][j - 1] = eye.scale(val)
    u = const_from_blocks(u_grid, n, n)

    w_grid = [[None] * L for _ in range(L)]
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            val = reversal_u_entry(L, L + 1 - j, L + 1 - i)
            if val:
                w_grid[i - 1][j - 1] = eye.scale(val)
    winv = const_from_blocks(w_grid, n, n)

    if u @ ar_mat != (b_mat - a_mat) @ winv or u @ br_mat != a_mat @ winv:
        raise ConjectureFailure(f"reversal identities failed at grade {L}")
    if u.det() not in (1, -1) or winv.det() not in (1, -1):
        raise ConjectureFailure(f"reversal transforms not unit-determinant at grade {L}")
    return ReversalEquivalence(u, winv)


# ---------------------------------------------------------------------------
# Lagrange strict equivalence


def lagrange_monomial_target(p: MatrixPolynomial) -> MatrixPolynomial:
    """The interpolated polynomial in the monomial basis, regarded at grade
    L+2 (two leading zero blocks), the target of the strict equivalence."""
    if not isinstance(p.basis, Lagrange):
        raise WrongBasis("expected a Lagrange-basis polynomial")
    mono = to_monomial(p)
    return from_monomial(mono, Monomial(p.grade + 2))


def lagrange_strict_equivalence(p: MatrixPolynomial) -> StrictEquivalence:
    """Constant U, W with U @ L_L(z) @ W = L_M(z) for distinct nodes.

    L_L is the arrowhead pencil; L_M is the monomial pencil of the same
    polynomial regarded at grade L+2.  With V the node-descending
    Vandermonde (entry (i, j) = tau_{L+1-j}^{L+1-i}, 1-based) and q the
    descending tail coefficients of the node polynomial,

        U = diag(-I, V (x) I),    W = [[-I, -q (x) I], [0, V^{-1} (x) I]].

    Valid for singular values and nonregular P.  det U =
    (-1)^n * prod_{i<j} (tau_j - tau_i)^n.
    """
    if not isinstance(p.basis, Lagrange):
        raise WrongBasis("expected a Lagrange-basis polynomial")
    spec = p.basis
    L = p.grade
    n = p.n
    nodes = spec.nodes
    bary = barycentric_weights(nodes)

    vd = ConstMatrix.from_rows(
        [[nodes[L - j] ** (L - i) for j in range(L + 1)] for i in range(L + 1)]
    )
    vd_inv = vd.try_inverse()
    if vd_inv is None:  # impossible for distinct nodes
        raise ConjectureFailure("Vandermonde unexpectedly singular")

    N = (L + 2) * n
    eye_n = ConstMatrix.identity(n)
    u_rows = [[Fraction(0)] * N for _ in range(N)]
    for r in range(n):
        u_rows[r][r] = Fraction(-1)
    vk = vd.kron_identity(n)
    for r in range(vk.rows):
        for c in range(vk.cols):
            val = vk.get(r, c)
            if val:
                u_rows[n + r][n + c] = val
    u = ConstMatrix.from_rows(u_rows)

    q_desc = list(reversed(bary.node_poly_tail))  # [q_L, ..., q_0]
    w_rows = [[Fraction(0)] * N for _ in range(N)]
    for r in range(n):
        w_rows[r][r] = Fraction(-1)
    for bj, qv in enumerate(q_desc):
        if qv:
            for r in range(n):
                w_rows[r][(bj + 1) * n + r] = -qv
    vik = vd_inv.kron_identity(n)
    for r in range(vik.rows):
        for c in range(vik.cols):
            val = vik.get(r, c)
            if val:
                w_rows[n + r][n + c] = val
    w = ConstMatrix.from_rows(w_rows)

    ll = build_lagrange_pencil(p)
    lm = build_monomial_pencil(lagrange_monomial_target(p))
    if u @ ll.c1 @ w != lm.c1 or u @ ll.c0 @ w != lm.c0:
        raise ConjectureFailure("strict-equivalence identities failed")
    return StrictEquivalence(u, w)

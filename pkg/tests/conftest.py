"""Shared independent oracles for the test suite.

These deliberately avoid the library's computational paths: determinants
here go through recursive cofactor expansion, interpolation through the
naive product form, and reversals through raw monomial-coefficient
manipulation.
"""

from fractions import Fraction

from polylin import PolyMatrix, PolyQ


def cofactor_det(m: PolyMatrix) -> PolyQ:
    """Recursive Laplace expansion along the first row."""
    n = m.rows
    if n == 0:
        return PolyQ((1,))
    if n == 1:
        return m.get(0, 0)
    acc = PolyQ.zero()
    for j in range(n):
        e = m.get(0, j)
        if e.is_zero:
            continue
        minor = PolyMatrix.from_rows(
            [[m.get(i, c) for c in range(n) if c != j] for i in range(1, n)]
        )
        term = e * cofactor_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def naive_lagrange_interp(nodes, values) -> PolyQ:
    """Sum of values[k] * prod_{j != k} (z - t_j)/(t_k - t_j)."""
    acc = PolyQ.zero()
    for k, tk in enumerate(nodes):
        term = PolyQ((values[k],))
        for j, tj in enumerate(nodes):
            if j != k:
                term = term * PolyQ((-tj, 1)).scale(1 / (Fraction(tk) - tj))
        acc = acc + term
    return acc


def shifted_reversal_monomial(coeffs, grade: int) -> PolyQ:
    """(z+1)^grade p(1/(z+1)) = sum a_j (z+1)^(grade-j), from monomial a_j."""
    z_plus_1 = PolyQ((1, 1))
    powers = [PolyQ((1,))]
    for _ in range(grade):
        powers.append(powers[-1] * z_plus_1)
    acc = PolyQ.zero()
    for j, a in enumerate(coeffs):
        acc = acc + powers[grade - j].scale(a)
    return acc


def standard_reversal_monomial(coeffs, grade: int) -> PolyQ:
    """z^grade p(1/z): the coefficient list reversed."""
    padded = list(coeffs) + [Fraction(0)] * (grade + 1 - len(coeffs))
    return PolyQ(list(reversed(padded)))


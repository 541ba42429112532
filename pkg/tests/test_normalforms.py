"""Hermite and Smith normal forms over Q[z]."""

import random
from fractions import Fraction as F

import sympy
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from polylin import (
    Lagrange,
    MatrixPolynomial,
    PolyMatrix,
    PolyQ,
    Recurrence,
    build_lagrange_pencil,
    build_recurrence_pencil,
    hermite_form,
    is_unimodular,
    mask,
    poly_gcd,
    polymatrix_det,
    polymatrix_mul,
    smith_form,
)
from polylin.randgen import rand_fraction


def rand_polymatrix(rng, n, max_deg):
    entries = []
    for _ in range(n * n):
        deg = rng.randint(0, max_deg)
        entries.append(PolyQ([rand_fraction(rng) for _ in range(deg + 1)], grade=max_deg))
    return PolyMatrix(n, n, entries)


def sympy_factors(m: PolyMatrix):
    z = sympy.symbols("z")
    rows = []
    for i in range(m.rows):
        rows.append([sum(sympy.Rational(c.numerator, c.denominator) * z**k
                         for k, c in enumerate(m.get(i, j).coeffs))
                     for j in range(m.cols)])
    facs = sympy_invariant_factors(sympy.Matrix(rows), domain=sympy.QQ[z])
    out = []
    for f in facs:
        poly = sympy.Poly(f, z, domain=sympy.QQ)
        coeffs = [F(str(c)) for c in reversed(poly.all_coeffs())] if f != 0 else []
        out.append(PolyQ(coeffs).monic())
    return out


class TestHermite:
    def test_swap(self):
        m = PolyMatrix.from_rows([[PolyQ([0]), PolyQ([1])],
                                  [PolyQ([1]), PolyQ([0])]])
        res = hermite_form(m)
        assert res.h == PolyMatrix.identity(2)
        assert res.u == m  # the swap itself
        assert not res.rank_deficient

    def test_already_reduced(self):
        m = PolyMatrix.from_rows([[PolyQ([0, 1]), PolyQ([1])],
                                  [PolyQ([0]), PolyQ([0, 1])]])
        res = hermite_form(m)
        assert res.h == m
        assert res.u == PolyMatrix.identity(2)

    def test_reconstruction_and_fixed_point(self):
        rng = random.Random(70)
        for _ in range(20):
            n = rng.randint(1, 4)
            m = rand_polymatrix(rng, n, 3)
            res = hermite_form(m)
            assert polymatrix_mul(res.u, m) == res.h
            ok, unit = is_unimodular(res.u)
            assert ok
            # determinants agree up to the unit
            assert polymatrix_det(res.h) == polymatrix_det(m).scale(unit)
            again = hermite_form(res.h)
            assert again.h == res.h

    def test_upper_triangular_monic_pivots_reduced(self):
        rng = random.Random(71)
        for _ in range(10):
            m = rand_polymatrix(rng, 4, 2)
            res = hermite_form(m)
            if res.rank_deficient:
                continue
            h = res.h
            for i in range(4):
                assert h.get(i, i).lead == 1
                for j in range(i):
                    assert h.get(i, j).is_zero
                for i2 in range(i):
                    assert h.get(i2, i).degree < h.get(i, i).degree or \
                        h.get(i2, i).is_zero

    def test_rank_deficient_flagged(self):
        m = PolyMatrix.from_rows([[PolyQ([0, 1]), PolyQ([0, 1])],
                                  [PolyQ([0, 1]), PolyQ([0, 1])]])
        res = hermite_form(m)
        assert res.rank_deficient
        assert res.pivot_cols == (0,)
        assert polymatrix_mul(res.u, m) == res.h


class TestSmith:
    def test_diag_sorting(self):
        m = PolyMatrix.from_rows([[PolyQ([0, 1]), PolyQ([0])],
                                  [PolyQ([0]), PolyQ([1])]])
        res = smith_form(m)
        assert [str(s) for s in res.invariant_factors] == ["1", "z"]

    def test_zero_matrix(self):
        m = PolyMatrix.zeros(2, 2)
        res = smith_form(m)
        assert all(s.is_zero for s in res.invariant_factors)
        assert polymatrix_mul(polymatrix_mul(res.e, res.s), res.f) == m

    def test_nonregular_has_zero_factor_last(self):
        m = PolyMatrix.from_rows([[PolyQ([0, 1]), PolyQ([0, 1])],
                                  [PolyQ([0, 1]), PolyQ([0, 1])]])
        res = smith_form(m)
        assert str(res.invariant_factors[0]) == "z"
        assert res.invariant_factors[1].is_zero

    def test_reconstruction_divisibility_unimodularity(self):
        rng = random.Random(72)
        for _ in range(15):
            n = rng.randint(1, 4)
            m = rand_polymatrix(rng, n, 3)
            res = smith_form(m)
            assert polymatrix_mul(polymatrix_mul(res.e, res.s), res.f) == m
            assert is_unimodular(res.e)[0]
            assert is_unimodular(res.f)[0]
            facs = res.invariant_factors
            for a, b in zip(facs, facs[1:]):
                if a.is_zero:
                    assert b.is_zero
                else:
                    assert (b % a).is_zero
            # product of invariant factors = det up to a unit
            det = polymatrix_det(m)
            prod = PolyQ([1])
            for s in facs:
                prod = prod * s
            if det.is_zero:
                assert prod.is_zero
            else:
                assert prod == det.monic()

    def test_against_sympy_oracle(self):
        rng = random.Random(73)
        for _ in range(10):
            n = rng.randint(1, 3)
            m = rand_polymatrix(rng, n, 2)
            ours = [s for s in smith_form(m).invariant_factors]
            theirs = sympy_factors(m)
            assert ours == theirs

    def test_invariant_under_unimodular_multiplication(self):
        rng = random.Random(74)
        for _ in range(6):
            m = rand_polymatrix(rng, 3, 2)
            # random unimodular: unit triangulars with polynomial entries
            up = PolyMatrix.identity(3).to_rows()
            lo = PolyMatrix.identity(3).to_rows()
            for i in range(3):
                for j in range(i + 1, 3):
                    up[i][j] = PolyQ([rand_fraction(rng), rand_fraction(rng)])
                    lo[j][i] = PolyQ([rand_fraction(rng), rand_fraction(rng)])
            g = polymatrix_mul(PolyMatrix.from_rows(up), PolyMatrix.from_rows(lo))
            gm = polymatrix_mul(g, m)
            assert smith_form(gm).invariant_factors == smith_form(m).invariant_factors
            mg = polymatrix_mul(m, g)
            assert smith_form(mg).invariant_factors == smith_form(m).invariant_factors


class TestMasks:
    def test_zero_matrix(self):
        assert mask(PolyMatrix.zeros(2, 3)) == ["000", "000"]

    def test_generic_recurrence_pencil_hermite_masks(self):
        a = [F(2), F(3), F(5), F(7), F(11), F(13)]
        p = MatrixPolynomial.scalar(Recurrence.chebyshev(5), a)
        pen = build_recurrence_pencil(p)
        res = hermite_form(pen.as_polymatrix())
        assert mask(res.h) == ["x000x", "0x00x", "00x0x", "000xx", "0000x"]
        # corner is the monic version of the polynomial
        assert res.h.get(4, 4) == polymatrix_det(pen.as_polymatrix()).monic()
        from polylin import polymatrix_inverse_unimodular

        uinv = polymatrix_inverse_unimodular(res.u)
        assert mask(uinv) == ["xxxxx", "xxx00", "0xxx0", "00xx0", "000x0"]

    def test_generic_lagrange_pencil_hermite_masks(self):
        p = MatrixPolynomial.scalar(Lagrange(3, (0, 1, 2, 3)), [1, 2, 3, 5])
        pen = build_lagrange_pencil(p)
        res = hermite_form(pen.as_polymatrix())
        assert mask(res.h) == ["x000x", "0x00x", "00x0x", "000xx", "0000x"]
        from polylin import polymatrix_inverse_unimodular

        uinv = polymatrix_inverse_unimodular(res.u)
        assert mask(uinv) == ["0xxx0", "xx00x", "x0x0x", "x00xx", "x0000"]


class TestPolyGcd:
    def test_basic(self):
        a = PolyQ([2, -3, 1])  # (z-1)(z-2)
        b = PolyQ([-2, 3, -1]).scale(F(1, 7)) * PolyQ([-3, 1])  # same roots + z-3
        g = poly_gcd(a, b)
        assert g == PolyQ([2, -3, 1])

    def test_coprime(self):
        assert poly_gcd(PolyQ([-1, 1]), PolyQ([1, 1])) == PolyQ([1])

    def test_zero(self):
        assert poly_gcd(PolyQ.zero(), PolyQ.zero()).is_zero
        assert poly_gcd(PolyQ([0, 2]), PolyQ.zero()) == PolyQ([0, 1])

"""Exact scalar, polynomial, and polynomial-matrix arithmetic over Q.

Every value is immutable after construction and every operation is a pure
function, so all of this is safe to call concurrently.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DimensionMismatch, NotUnimodular

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    """Coerce an int, a "p/q" string, or a Fraction to a Fraction.

    Floats are rejected: binary floats would silently corrupt exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class PolyQ:
    """Dense univariate polynomial over Q with an explicit grade.

    Coefficient k is the coefficient of z^k.  The grade is a declared
    degree bound: it is carried through arithmetic and never re-inferred
    from trailing zeros, so a polynomial can be "of grade 5" while having
    degree 2.  The degree of the zero polynomial is the sentinel -1.
    """

    __slots__ = ("coeffs", "grade")

    def __init__(self, coeffs=(), grade: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        degree = len(cs) - 1
        if grade is None:
            grade = max(degree, 0)
        elif grade < degree:
            raise ValueError(f"grade {grade} smaller than degree {degree}")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "grade", int(grade))

    def __setattr__(self, name, value):
        raise AttributeError("PolyQ is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, grade: int = 0) -> "PolyQ":
        return cls((), grade)

    @classmethod
    def constant(cls, c, grade: int = 0) -> "PolyQ":
        return cls((c,), grade)

    @classmethod
    def monomial(cls, k: int, c=1, grade: int | None = None) -> "PolyQ":
        return cls((0,) * k + (c,), grade)

    # -- inspection ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def padded(self, grade: int | None = None) -> list[Fraction]:
        """Coefficient list of length grade+1, trailing zeros included."""
        if grade is None:
            grade = self.grade
        if grade < self.degree:
            raise ValueError("padding grade smaller than degree")
        return [self.coeff(k) for k in range(grade + 1)]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [self.coeff(k) + other.coeff(k) for k in range(n)]
        return PolyQ(cs, max(self.grade, other.grade))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [self.coeff(k) - other.coeff(k) for k in range(n)]
        return PolyQ(cs, max(self.grade, other.grade))

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs], self.grade)

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        if self.is_zero or other.is_zero:
            return PolyQ.zero(self.grade + other.grade)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return PolyQ(out, self.grade + other.grade)

    def scale(self, c) -> "PolyQ":
        c = as_fraction(c)
        return PolyQ([c * x for x in self.coeffs], self.grade)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return PolyQ.zero(), self
        num = list(self.coeffs)
        den = other.coeffs
        dd = len(den) - 1
        inv_lead = 1 / den[-1]
        q = [ZERO] * (len(num) - dd)
        for k in range(len(num) - dd - 1, -1, -1):
            c = num[dd + k] * inv_lead
            if c:
                q[k] = c
                for j in range(dd + 1):
                    num[k + j] -= c * den[j]
        return PolyQ(q), PolyQ(num[:dd] if dd > 0 else ())

    def __floordiv__(self, other: "PolyQ") -> "PolyQ":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyQ") -> "PolyQ":
        return divmod(self, other)[1]

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError(f"inexact polynomial division: remainder {r}")
        return q

    def monic(self) -> "PolyQ":
        if self.is_zero:
            return self
        return self.scale(1 / self.lead)

    def derivative(self) -> "PolyQ":
        cs = [k * c for k, c in enumerate(self.coeffs)][1:]
        return PolyQ(cs, max(self.grade - 1, 0))

    def with_grade(self, grade: int) -> "PolyQ":
        return PolyQ(self.coeffs, grade)

    # -- comparison / output -------------------------------------------
    def __eq__(self, other) -> bool:
        # equality of values; the grade is bookkeeping and not compared
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            if k == 0:
                body = str(c)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    body = zk
                elif c == -1:
                    body = f"-{zk}"
                else:
                    body = f"{c}*{zk}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"PolyQ({self})"


POLY_ONE = PolyQ((1,))
POLY_Z = PolyQ((0, 1))


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd over Q[z]; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _det_fraction_rows(rows: list[list[Fraction]]) -> Fraction:
    """Determinant of a rational matrix via integer Bareiss elimination.

    Each row is scaled to integers first so the inner loop runs on plain
    Python ints (no per-operation gcd).
    """
    n = len(rows)
    if n == 0:
        return ONE
    scale = ONE
    m = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        scale /= den
        m.append([int(x * den) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return ZERO
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pk = m[k][k]
        mk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pk - mik * mk[j]) // prev
            mi[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1] * scale


class ConstMatrix:
    """Immutable rectangular matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(as_fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ConstMatrix is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows) -> "ConstMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "ConstMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ConstMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    # -- inspection ---------------------------------------------------
    def get(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "ConstMatrix") -> "ConstMatrix":
        self._same_shape(other)
        return ConstMatrix(self.rows, self.cols,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ConstMatrix") -> "ConstMatrix":
        self._same_shape(other)
        return ConstMatrix(self.rows, self.cols,
                           [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ConstMatrix":
        return ConstMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other: "ConstMatrix") -> "ConstMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = [ZERO] * (self.rows * other.cols)
        oc = other.cols
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a:
                    ob = k * oc
                    rb = i * oc
                    for j in range(oc):
                        b = other.entries[ob + j]
                        if b:
                            out[rb + j] += a * b
        return ConstMatrix(self.rows, oc, out)

    def scale(self, c) -> "ConstMatrix":
        c = as_fraction(c)
        return ConstMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def transpose(self) -> "ConstMatrix":
        return ConstMatrix(self.cols, self.rows,
                           [self.get(i, j) for j in range(self.cols) for i in range(self.rows)])

    def _same_shape(self, other: "ConstMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- linear algebra -------------------------------------------------
    def det(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        return _det_fraction_rows(self.to_rows())

    def try_inverse(self) -> "ConstMatrix | None":
        """Exact inverse, or None when singular."""
        if not self.is_square:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [self.row(i) + ConstMatrix.identity(n).row(i) for i in range(n)]
        for c in range(n):
            pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if pivot is None:
                return None
            aug[c], aug[pivot] = aug[pivot], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return ConstMatrix.from_rows([r[n:] for r in aug])

    def kron_identity(self, n: int) -> "ConstMatrix":
        """Tensor product self (x) I_n: each scalar entry becomes a scalar
        multiple of the n-by-n identity block."""
        R, C = self.rows * n, self.cols * n
        out = [ZERO] * (R * C)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.get(i, j)
                if a:
                    for t in range(n):
                        out[(i * n + t) * C + (j * n + t)] = a
        return ConstMatrix(R, C, out)

    def block(self, i: int, j: int, n: int) -> "ConstMatrix":
        """The n-by-n block at block position (i, j)."""
        return ConstMatrix(n, n, [self.get(i * n + r, j * n + c)
                                  for r in range(n) for c in range(n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ConstMatrix({self.to_rows()})"


def solve_exact(a: ConstMatrix, b: ConstMatrix) -> ConstMatrix | None:
    """Solve a @ x = b exactly; None when inconsistent.

    Works for rectangular (including overdetermined) systems; free
    variables are set to zero.
    """
    if a.rows != b.rows:
        raise DimensionMismatch("solve_exact: row counts differ")
    m, n, k = a.rows, a.cols, b.cols
    aug = [a.row(i) + b.row(i) for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(x != 0 for x in aug[i][n:]):
            return None
    rows = [[ZERO] * k for _ in range(n)]
    for idx, c in enumerate(pivots):
        rows[c] = aug[idx][n:]
    return ConstMatrix.from_rows(rows)


def const_from_blocks(grid, block_rows: int, block_cols: int) -> ConstMatrix:
    """Assemble a matrix from a grid of ConstMatrix blocks (None = zero).

    All blocks are block_rows x block_cols.
    """
    R = len(grid) * block_rows
    C = len(grid[0]) * block_cols
    out = [ZERO] * (R * C)
    for bi, row in enumerate(grid):
        for bj, blk in enumerate(row):
            if blk is None:
                continue
            if blk.rows != block_rows or blk.cols != block_cols:
                raise DimensionMismatch("inconsistent block size")
            for r in range(block_rows):
                for c in range(block_cols):
                    out[(bi * block_rows + r) * C + (bj * block_cols + c)] = blk.get(r, c)
    return ConstMatrix(R, C, out)


class PolyMatrix:
    """Immutable rectangular matrix with PolyQ entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(e if isinstance(e, PolyQ) else PolyQ((e,)) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, n, [POLY_ONE if i == j else PolyQ.zero()
                          for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, [PolyQ.zero()] * (rows * cols))

    @classmethod
    def from_const(cls, m: ConstMatrix) -> "PolyMatrix":
        return cls(m.rows, m.cols, [PolyQ((x,)) for x in m.entries])

    # -- inspection ---------------------------------------------------
    def get(self, i: int, j: int) -> PolyQ:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[PolyQ]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list[PolyQ]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def evaluate(self, x) -> ConstMatrix:
        x = as_fraction(x)
        return ConstMatrix(self.rows, self.cols, [e(x) for e in self.entries])

    def max_degree(self) -> int:
        return max((e.degree for e in self.entries), default=-1)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix(self.rows, self.cols,
                          [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix(self.rows, self.cols,
                          [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return polymatrix_mul(self, other)

    def scale_poly(self, p: PolyQ) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [p * e for e in self.entries])

    def scale(self, c) -> "PolyMatrix":
        c = as_fraction(c)
        return PolyMatrix(self.rows, self.cols, [e.scale(c) for e in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows,
                          [self.get(i, j) for j in range(self.cols) for i in range(self.rows)])

    def _same_shape(self, other: "PolyMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"PolyMatrix({[[str(e) for e in r] for r in self.to_rows()]})"


def polymatrix_from_blocks(grid, n: int) -> PolyMatrix:
    """Assemble from a grid of n-by-n PolyMatrix blocks (None = zero)."""
    R = len(grid) * n
    C = len(grid[0]) * n
    out = [PolyQ.zero()] * (R * C)
    for bi, row in enumerate(grid):
        for bj, blk in enumerate(row):
            if blk is None:
                continue
            for r in range(n):
                for c in range(n):
                    out[(bi * n + r) * C + (bj * n + c)] = blk.get(r, c)
    return PolyMatrix(R, C, out)


def polymatrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Exact product of polynomial matrices."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = PolyQ.zero()
            for k in range(a.cols):
                x = arow[k]
                y = b.get(k, j)
                if not (x.is_zero or y.is_zero):
                    acc = acc + x * y
            out.append(acc)
    return PolyMatrix(a.rows, b.cols, out)


def _interp_at_integers(values: list[Fraction]) -> PolyQ:
    """Interpolate exact values taken at z = 0, 1, ..., len(values)-1."""
    d = len(values) - 1
    # Newton forward differences: coefficient of the k-th falling factorial
    diffs = list(values)
    newton = [diffs[0]]
    for k in range(1, d + 1):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0] / math.factorial(k))
    acc = PolyQ.zero(0)
    basis = POLY_ONE
    for k, c in enumerate(newton):
        if c:
            acc = acc + basis.scale(c)
        if k < d:
            basis = basis * PolyQ((-k, 1))
    return acc


def _det_degree_bound(m: PolyMatrix) -> int:
    """Row/column-wise degree bound for det(m); -1 when det is forced zero."""
    row_bound = 0
    for i in range(m.rows):
        d = max((e.degree for e in m.row(i)), default=-1)
        if d < 0:
            return -1
        row_bound += d
    col_bound = 0
    for j in range(m.cols):
        d = max((m.get(i, j).degree for i in range(m.rows)), default=-1)
        if d < 0:
            return -1
        col_bound += d
    return min(row_bound, col_bound)


def polymatrix_det(m: PolyMatrix) -> PolyQ:
    """Exact determinant via evaluation at integer points and interpolation.

    The matrix is evaluated at 0..D with D a degree bound for the result,
    each rational determinant is computed exactly, and the values are
    interpolated back.
    """
    if not m.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    if m.rows == 0:
        return POLY_ONE
    bound = _det_degree_bound(m)
    if bound < 0:
        return PolyQ.zero()
    values = [_det_fraction_rows(m.evaluate(x).to_rows()) for x in range(bound + 1)]
    return _interp_at_integers(values).with_grade(bound)


def is_unimodular(m: PolyMatrix) -> tuple[bool, Fraction | None]:
    """Whether det(m) is a nonzero constant; returns (flag, unit)."""
    d = polymatrix_det(m)
    if d.degree == 0:
        return True, d.coeff(0)
    return False, None


def polymatrix_inverse_unimodular(m: PolyMatrix, check: bool = True) -> PolyMatrix:
    """Exact inverse of a unimodular polynomial matrix.

    Unimodularity makes every evaluation m(x) invertible and the inverse a
    polynomial matrix, so the inverse is recovered by pointwise rational
    inversion at enough integer points followed by interpolation.  The
    product m @ inverse is re-checked before returning.
    """
    ok, _unit = is_unimodular(m)
    if not ok:
        raise NotUnimodular("matrix is not unimodular")
    n = m.rows
    # entries of the inverse are cofactors divided by the constant det
    bound = max(_det_degree_bound(m), 0)
    points = []
    for x in range(bound + 1):
        inv = m.evaluate(x).try_inverse()
        if inv is None:  # impossible for unimodular m
            raise NotUnimodular("evaluation unexpectedly singular")
        points.append(inv)
    entries = []
    for i in range(n):
        for j in range(n):
            entries.append(_interp_at_integers([p.get(i, j) for p in points]))
    result = PolyMatrix(n, n, entries)
    if check and polymatrix_mul(m, result) != PolyMatrix.identity(n):
        raise NotUnimodular("inverse verification failed")
    return result

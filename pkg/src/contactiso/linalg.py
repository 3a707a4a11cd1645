"""Exact linear algebra over the rationals.

Matrices are tuples of tuples of ``fractions.Fraction`` (helpers accept any
nested sequences of ints/Fractions).  Row reduction uses a fraction-free
forward pass on integerized rows, so pivots stay exact and the reduced
echelon basis of a nullspace is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateFormError

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def freeze(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def freeze_vector(vec) -> Vector:
    return tuple(Fraction(x) for x in vec)


def identity(k: int) -> Matrix:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(k)) for i in range(k))


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(_ZERO for _ in range(c)) for _ in range(r))


def transpose(m) -> Matrix:
    return tuple(zip(*freeze(m)))


def mat_add(a, b) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(freeze(a), freeze(b)))


def mat_sub(a, b) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(freeze(a), freeze(b)))


def mat_scale(c, m) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in freeze(m))


def mat_mul(a, b) -> Matrix:
    a = freeze(a)
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(ra, cb)) for cb in bt) for ra in a)


def mat_vec(m, v) -> Vector:
    v = freeze_vector(v)
    return tuple(sum(x * y for x, y in zip(row, v)) for row in freeze(m))


def vec_dot(u, v) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(u, v)), _ZERO)


def is_zero_matrix(m) -> bool:
    return all(x == 0 for row in m for x in row)


def trace(m) -> Fraction:
    return sum((row[i] for i, row in enumerate(freeze(m))), _ZERO)


def _integer_rows(rows) -> list[list[int]]:
    """Scale each row to coprime integers (kernel and pivots unchanged)."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            d = x.denominator
            lcm = lcm * d // gcd(lcm, d)
        ints = [int(x * lcm) for x in fr]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _echelon(m: list[list[int]]):
    """Fraction-free forward elimination in place; returns pivot (row, col) list."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        prow = m[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if not f:
                continue
            row = m[i]
            new = [pv * a - f * b for a, b in zip(row, prow)]
            g = 0
            for v in new:
                g = gcd(g, v)
            if g > 1:
                new = [v // g for v in new]
            m[i] = new
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return pivots


def rref(rows):
    """Reduced row echelon form. Returns (matrix, pivot column tuple)."""
    m = _integer_rows(rows)
    if not m:
        return (), ()
    pivots = _echelon(m)
    fm = [[Fraction(v) for v in row] for row in m]
    for k in range(len(pivots) - 1, -1, -1):
        r, c = pivots[k]
        pv = fm[r][c]
        if pv != 1:
            fm[r] = [x / pv for x in fm[r]]
        for i in range(r):
            f = fm[i][c]
            if f:
                fm[i] = [a - f * b for a, b in zip(fm[i], fm[r])]
    return freeze(fm), tuple(c for _, c in pivots)


def rank(rows) -> int:
    m = _integer_rows(rows)
    if not m:
        return 0
    return len(_echelon(m))


def exact_nullspace(rows, ncols: int | None = None) -> list[Vector]:
    """Deterministic kernel basis from the reduced echelon form.

    Each basis vector has a 1 in one free column and the negated reduced
    entries in the pivot columns.
    """
    rows = [list(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [tuple(_ONE if i == j else _ZERO for i in range(ncols)) for j in range(ncols)]
    width = len(rows[0])
    if ncols is not None and ncols != width:
        raise ValueError("ncols disagrees with matrix width")
    red, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for c in range(width):
        if c in pivset:
            continue
        vec = [_ZERO] * width
        vec[c] = _ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -red[i][c]
        basis.append(tuple(vec))
    return basis


def solve(a, b) -> Vector | None:
    """One exact solution of a x = b, or None if inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    a = freeze(a)
    b = freeze_vector(b)
    if len(a) != len(b):
        raise ValueError("shape mismatch")
    width = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if width in pivots:
        return None
    x = [_ZERO] * width
    for i, pc in enumerate(pivots):
        x[pc] = red[i][width]
    return tuple(x)


def det(rows) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    k = len(m)
    if any(len(r) != k for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    out = _ONE
    for c in range(k):
        pr = None
        for i in range(c, k):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return _ZERO
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        pv = m[c][c]
        out *= pv
        for i in range(c + 1, k):
            f = m[i][c]
            if not f:
                continue
            f /= pv
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * out


def inverse(rows) -> Matrix:
    m = freeze(rows)
    k = len(m)
    aug = [list(row) + [_ONE if i == j else _ZERO for j in range(k)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if tuple(pivots) != tuple(range(k)):
        raise DegenerateFormError("matrix is singular")
    return tuple(tuple(red[i][k:]) for i in range(k))


def signature(rows) -> tuple[int, int]:
    """(positive, negative) inertia of a symmetric matrix, by congruence."""
    a = [list(map(Fraction, r)) for r in rows]
    k = len(a)
    pos = neg = 0
    for step in range(k):
        piv = None
        for i in range(step, k):
            if a[i][i]:
                piv = i
                break
        if piv is None:
            off = None
            for i in range(step, k):
                for j in range(i + 1, k):
                    if a[i][j]:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                break  # remaining block is zero
            i, j = off
            # row/column addition creates a nonzero diagonal entry at i
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for r in range(k):
                a[r][i] += a[r][j]
            piv = i
        if piv != step:
            a[step], a[piv] = a[piv], a[step]
            for r in range(k):
                a[r][step], a[r][piv] = a[r][piv], a[r][step]
        d = a[step][step]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(step + 1, k):
            f = a[i][step] / d
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[step])]
        for j in range(step + 1, k):
            f = a[step][j] / d
            if f:
                for r in range(k):
                    a[r][j] -= f * a[r][step]
    return pos, neg


# ---------------------------------------------------------------------------
# Characteristic polynomial and semisimplicity
# ---------------------------------------------------------------------------

def charpoly(rows) -> tuple[Fraction, ...]:
    """Monic characteristic polynomial, coefficients by descending power.

    Faddeev-LeVerrier recursion, exact over the rationals.
    """
    m = freeze(rows)
    k = len(m)
    coeffs = [_ONE]
    n_mat = zeros(k, k)
    for step in range(1, k + 1):
        n_mat = mat_mul(m, mat_add(n_mat, mat_scale(coeffs[-1], identity(k))))
        coeffs.append(-trace(n_mat) / step)
    return tuple(coeffs)


def poly_trim(p) -> tuple[Fraction, ...]:
    p = [Fraction(c) for c in p]
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return tuple(p[i:])


def poly_derivative(p) -> tuple[Fraction, ...]:
    p = poly_trim(p)
    deg = len(p) - 1
    if deg == 0:
        return (_ZERO,)
    return tuple(c * (deg - i) for i, c in enumerate(p[:-1]))


def poly_divmod(num, den):
    num = list(poly_trim(num))
    den = poly_trim(den)
    if den == (_ZERO,):
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and poly_trim(num) != (_ZERO,):
        shift = len(num) - len(den)
        f = num[0] / den[0]
        q[len(q) - 1 - shift] = f
        for i, c in enumerate(den):
            num[i] -= f * c
        num.pop(0)
        if not num:
            break
    return poly_trim(q), poly_trim(num if num else [_ZERO])


def poly_gcd(a, b) -> tuple[Fraction, ...]:
    """Monic gcd over the rationals."""
    a, b = poly_trim(a), poly_trim(b)
    while b != (_ZERO,):
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a[0] != 1 and a[0] != 0:
        a = tuple(c / a[0] for c in a)
    return a


def poly_eval_matrix(p, rows) -> Matrix:
    m = freeze(rows)
    k = len(m)
    out = zeros(k, k)
    for c in poly_trim(p):
        out = mat_add(mat_mul(out, m), mat_scale(c, identity(k)))
    return out


def is_semisimple(rows) -> bool:
    """Exact test: the squarefree part of the charpoly annihilates the matrix."""
    p = charpoly(rows)
    g = poly_gcd(p, poly_derivative(p))
    sqfree, rem = poly_divmod(p, g)
    assert rem == (_ZERO,)
    return is_zero_matrix(poly_eval_matrix(sqfree, rows))


# ---------------------------------------------------------------------------
# Exact radical scalars
# ---------------------------------------------------------------------------

def _int_nth_root(x: int, k: int) -> int | None:
    """Exact integer k-th root of x >= 1, or None."""
    if x < 1:
        return None
    r = round(x ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 1 and cand ** k == x:
            return cand
    return None


@dataclass(frozen=True)
class RootScale:
    """Exact positive scalar of the form base**(num/den)."""

    base: Fraction
    num: int
    den: int

    @classmethod
    def of(cls, base, num: int, den: int) -> "RootScale":
        base = Fraction(base)
        if base <= 0:
            raise ValueError("base must be positive")
        if den == 0:
            raise ValueError("zero root index")
        if den < 0:
            num, den = -num, -den
        g = gcd(abs(num), den)
        if g > 1:
            num //= g
            den //= g
        if base == 1 or num == 0:
            return cls(_ONE, 0, 1)
        root_n = _int_nth_root(base.numerator, den)
        root_d = _int_nth_root(base.denominator, den)
        if root_n is not None and root_d is not None:
            return cls(Fraction(root_n, root_d), num, 1)
        return cls(base, num, den)

    @classmethod
    def one(cls) -> "RootScale":
        return cls(_ONE, 0, 1)

    def as_fraction(self) -> Fraction | None:
        if self.den == 1:
            return self.base ** self.num
        return None

    def power(self, k: int) -> "RootScale":
        return RootScale.of(self.base, self.num * k, self.den)

    def is_one(self) -> bool:
        return self.num == 0 or self.base == 1

    def times_rational_is_one(self, c, k: int = 1) -> bool:
        """Exact test of c * self**k == 1 for rational c."""
        c = Fraction(c)
        if c <= 0:
            return False
        return c ** self.den * self.base ** (k * self.num) == 1

    def __float__(self) -> float:
        return float(self.base) ** (self.num / self.den)

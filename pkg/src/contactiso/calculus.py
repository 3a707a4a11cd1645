"""Symbolic calculus of polynomial frames on R^(2n+1) and pointwise contact data.

A framed structure is 2n polynomial vector fields declared orthonormal with
signs epsilon_i, spanning a corank-1 distribution.  At rational sample points
this module produces the annihilating covector, the normalized skew form of
the distribution in the frame, the transverse (Reeb) direction and the
extended metric, all in exact arithmetic.  The normalization factor
|Pf|^(-1/n) is kept as an exact radical scale when it is irrational; in that
case the stored covector, skew form, Reeb vector and extended metric are the
rational representatives of the unnormalized gauge and ``scale`` converts
them (alpha and omega multiply by scale, the Reeb vector divides by it).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import (
    DimensionMismatchError,
    FrameDegenerateError,
    NotContactError,
    SingularMapError,
    ValidationError,
)
from .linalg import Matrix, RootScale, Vector, exact_nullspace, freeze, freeze_vector
from .pencil import FormPair, SkewForm, SymmetricForm, pfaffian
from .poly import Polynomial

__all__ = [
    "VectorField",
    "OneForm",
    "TwoForm",
    "AffineMap",
    "FramedStructure",
    "PointwiseData",
    "lie_bracket",
    "apply_field",
    "exterior_derivative",
    "gradient",
    "wedge",
    "one_form_apply",
    "two_form_apply",
    "pushforward",
    "field_after_map",
    "canonical_contact_data",
    "symplectic_in_frame",
    "isometry_check",
    "default_sample_points",
]


@dataclass(frozen=True)
class VectorField:
    coordinates: tuple[str, ...]
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != len(self.coordinates):
            raise DimensionMismatchError("component count must equal dimension")
        for c in self.components:
            if c.variables != self.coordinates:
                raise DimensionMismatchError("component over wrong coordinates")

    def evaluate(self, point) -> Vector:
        return tuple(c.evaluate(point) for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


@dataclass(frozen=True)
class OneForm:
    coordinates: tuple[str, ...]
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != len(self.coordinates):
            raise DimensionMismatchError("component count must equal dimension")

    def evaluate(self, point) -> Vector:
        return tuple(c.evaluate(point) for c in self.components)


@dataclass(frozen=True)
class TwoForm:
    coordinates: tuple[str, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        object.__setattr__(self, "entries", tuple(tuple(row) for row in self.entries))
        k = len(self.coordinates)
        if len(self.entries) != k or any(len(r) != k for r in self.entries):
            raise DimensionMismatchError("two-form matrix must be dim x dim")
        for i in range(k):
            for j in range(i, k):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError("two-form matrix is not antisymmetric")

    def evaluate(self, point) -> Matrix:
        return tuple(tuple(e.evaluate(point) for e in row) for row in self.entries)


def format_point(point) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in point) + ")"


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    """[X, Y]^k = sum_j X^j d_j Y^k - Y^j d_j X^k, exact."""
    if x.coordinates != y.coordinates:
        raise DimensionMismatchError("bracket of fields over different coordinates")
    comps = []
    for k in range(len(x.coordinates)):
        acc = Polynomial.zero(x.coordinates)
        for j in range(len(x.coordinates)):
            acc = acc + x.components[j] * y.components[k].diff(j)
            acc = acc - y.components[j] * x.components[k].diff(j)
        comps.append(acc)
    return VectorField(x.coordinates, tuple(comps))


def apply_field(x: VectorField, f: Polynomial) -> Polynomial:
    """Directional derivative X(f)."""
    acc = Polynomial.zero(x.coordinates)
    for j in range(len(x.coordinates)):
        acc = acc + x.components[j] * f.diff(j)
    return acc


def exterior_derivative(a: OneForm) -> TwoForm:
    k = len(a.coordinates)
    entries = [[a.components[j].diff(i) - a.components[i].diff(j) for j in range(k)] for i in range(k)]
    return TwoForm(a.coordinates, entries)


def gradient(f: Polynomial) -> OneForm:
    return OneForm(f.variables, tuple(f.diff(i) for i in range(len(f.variables))))


def wedge(a: OneForm, b: OneForm) -> TwoForm:
    k = len(a.coordinates)
    entries = [
        [a.components[i] * b.components[j] - a.components[j] * b.components[i] for j in range(k)]
        for i in range(k)
    ]
    return TwoForm(a.coordinates, entries)


def one_form_apply(a: OneForm, x: VectorField) -> Polynomial:
    acc = Polynomial.zero(a.coordinates)
    for ak, xk in zip(a.components, x.components):
        acc = acc + ak * xk
    return acc


def two_form_apply(t: TwoForm, x: VectorField, y: VectorField) -> Polynomial:
    acc = Polynomial.zero(t.coordinates)
    for i, row in enumerate(t.entries):
        for j, e in enumerate(row):
            if not e.is_zero():
                acc = acc + e * x.components[i] * y.components[j]
    return acc


# ---------------------------------------------------------------------------
# Affine maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """q -> linear . q + offset with invertible linear part."""

    linear: Matrix
    offset: Vector

    def __post_init__(self):
        object.__setattr__(self, "linear", freeze(self.linear))
        object.__setattr__(self, "offset", freeze_vector(self.offset))
        k = len(self.linear)
        if any(len(r) != k for r in self.linear) or len(self.offset) != k:
            raise DimensionMismatchError("affine map shape mismatch")
        if linalg.det(self.linear) == 0:
            raise SingularMapError("linear part is singular")

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        return cls(linalg.identity(dim), (Fraction(0),) * dim)

    @property
    def dim(self) -> int:
        return len(self.offset)

    def apply(self, point) -> Vector:
        moved = linalg.mat_vec(self.linear, point)
        return tuple(a + b for a, b in zip(moved, self.offset))

    def inverse(self) -> "AffineMap":
        inv = linalg.inverse(self.linear)
        shift = linalg.mat_vec(inv, self.offset)
        return AffineMap(inv, tuple(-x for x in shift))

    def coordinate_polynomials(self, coordinates) -> list[Polynomial]:
        """The map's components as degree-1 polynomials over ``coordinates``."""
        polys = []
        for i in range(self.dim):
            acc = Polynomial.constant(coordinates, self.offset[i])
            for j, name in enumerate(coordinates):
                if self.linear[i][j]:
                    acc = acc + self.linear[i][j] * Polynomial.variable(coordinates, name)
            polys.append(acc)
        return polys


def field_after_map(x: VectorField, m: AffineMap) -> VectorField:
    """Components of X evaluated along the map: q -> X(m(q))."""
    subs = m.coordinate_polynomials(x.coordinates)
    return VectorField(x.coordinates, tuple(c.substitute(subs) for c in x.components))


def pushforward(m: AffineMap, x: VectorField) -> VectorField:
    """(m_* X)(q) = Dm . X(m^{-1}(q)); exact for affine maps."""
    if m.dim != len(x.coordinates):
        raise DimensionMismatchError("map and field dimensions differ")
    pulled = field_after_map(x, m.inverse())
    comps = []
    for k in range(m.dim):
        acc = Polynomial.zero(x.coordinates)
        for j in range(m.dim):
            if m.linear[k][j]:
                acc = acc + m.linear[k][j] * pulled.components[j]
        comps.append(acc)
    return VectorField(x.coordinates, tuple(comps))


# ---------------------------------------------------------------------------
# Framed structures
# ---------------------------------------------------------------------------

class FramedStructure:
    """2n orthonormal polynomial fields spanning a corank-1 distribution."""

    def __init__(self, coordinates, frame, signature, contact_form: OneForm | None = None):
        self.coordinates = tuple(coordinates)
        self.frame = tuple(frame)
        self.signature = tuple(int(s) for s in signature)
        self.contact_form = contact_form
        dim = len(self.coordinates)
        if dim % 2 == 0 or dim < 3:
            raise ValidationError(f"dimension must be odd and at least 3, got {dim}")
        if len(self.frame) != dim - 1:
            raise ValidationError(f"expected {dim - 1} frame fields, got {len(self.frame)}")
        for x in self.frame:
            if x.coordinates != self.coordinates:
                raise ValidationError("frame field over wrong coordinates")
        if len(self.signature) != dim - 1 or any(s not in (-1, 1) for s in self.signature):
            raise ValidationError("signature must list +1/-1 for each frame field")
        if contact_form is not None:
            if contact_form.coordinates != self.coordinates:
                raise ValidationError("contact form over wrong coordinates")
            for i, x in enumerate(self.frame):
                if not one_form_apply(contact_form, x).is_zero():
                    raise ValidationError(f"contact form does not annihilate frame field {i}")

    def __eq__(self, other):
        if not isinstance(other, FramedStructure):
            return NotImplemented
        return (
            self.coordinates == other.coordinates
            and self.frame == other.frame
            and self.signature == other.signature
            and self.contact_form == other.contact_form
        )

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    @property
    def index(self) -> int:
        return sum(1 for s in self.signature if s < 0)

    @cached_property
    def brackets(self) -> dict[tuple[int, int], VectorField]:
        out = {}
        for i in range(len(self.frame)):
            for j in range(i + 1, len(self.frame)):
                out[(i, j)] = lie_bracket(self.frame[i], self.frame[j])
        return out

    @cached_property
    def annihilator(self) -> OneForm:
        """A polynomial 1-form annihilating the frame (given, or from minors)."""
        if self.contact_form is not None:
            return self.contact_form
        rows = [list(x.components) for x in self.frame]
        memo: dict = {}
        comps = []
        cols = tuple(range(self.dim))
        for k in range(self.dim):
            minor_cols = cols[:k] + cols[k + 1:]
            d = _poly_det(rows, minor_cols, 0, memo, self.coordinates)
            comps.append(d if k % 2 == 0 else -d)
        return OneForm(self.coordinates, tuple(comps))

    @cached_property
    def omega_poly(self) -> tuple[tuple[Polynomial, ...], ...]:
        """Matrix of the annihilator applied to frame brackets (gauge-dependent)."""
        width = len(self.frame)
        zero = Polynomial.zero(self.coordinates)
        rows = [[zero] * width for _ in range(width)]
        for (i, j), br in self.brackets.items():
            val = one_form_apply(self.annihilator, br)
            rows[i][j] = val
            rows[j][i] = -val
        return tuple(tuple(r) for r in rows)

    @cached_property
    def pfaffian_poly(self) -> Polynomial:
        return _poly_pf(self.omega_poly, tuple(range(len(self.frame))), self.coordinates)

    @cached_property
    def theta_numerator(self) -> TwoForm:
        """n*P*d(alpha) - dP ^ alpha for the annihilator gauge.

        At each point this is a positive multiple of the exterior derivative
        of the normalized contact form, so its kernel is the Reeb direction.
        """
        a = self.annihilator
        da = exterior_derivative(a)
        p = self.pfaffian_poly
        dp = gradient(p)
        w = wedge(dp, a)
        n = self.n
        entries = [
            [n * p * da.entries[i][j] - w.entries[i][j] for j in range(self.dim)]
            for i in range(self.dim)
        ]
        return TwoForm(self.coordinates, entries)


def _poly_det(rows, cols: tuple[int, ...], row_start: int, memo: dict, coordinates) -> Polynomial:
    """Determinant of rows[row_start:] on the given columns, memoized Laplace."""
    if not cols:
        return Polynomial.constant(coordinates, 1)
    key = (row_start, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    acc = Polynomial.zero(coordinates)
    row = rows[row_start]
    for pos, c in enumerate(cols):
        entry = row[c]
        if entry.is_zero():
            continue
        sub = _poly_det(rows, cols[:pos] + cols[pos + 1:], row_start + 1, memo, coordinates)
        term = entry * sub
        acc = acc + term if pos % 2 == 0 else acc - term
    memo[key] = acc
    return acc


def _poly_pf(m, idx: tuple[int, ...], coordinates) -> Polynomial:
    if not idx:
        return Polynomial.constant(coordinates, 1)
    first, rest = idx[0], idx[1:]
    acc = Polynomial.zero(coordinates)
    for pos, j in enumerate(rest):
        entry = m[first][j]
        if entry.is_zero():
            continue
        term = entry * _poly_pf(m, rest[:pos] + rest[pos + 1:], coordinates)
        acc = acc + term if pos % 2 == 0 else acc - term
    return acc


# ---------------------------------------------------------------------------
# Pointwise canonical data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointwiseData:
    """Canonical contact data at one rational point.

    When ``scale`` is 1 every field is fully normalized (|Pf(omega)| = 1).
    Otherwise alpha/omega/reeb/big_g hold the rational gauge and the true
    normalized data is (scale*alpha, scale*omega, reeb/scale); ``pf`` is the
    normalized Pfaffian (always +-1) either way.
    """

    point: Vector
    alpha: Vector
    reeb: Vector
    big_g: Matrix
    omega: SkewForm
    pf: Fraction
    scale: RootScale
    signature: tuple[int, ...]

    @property
    def index(self) -> int:
        return sum(1 for s in self.signature if s < 0)

    def form_pair(self) -> FormPair:
        dim = len(self.signature)
        g = SymmetricForm(
            tuple(
                tuple(Fraction(self.signature[i]) if i == j else Fraction(0) for j in range(dim))
                for i in range(dim)
            ),
            self.index,
        )
        return FormPair(g, self.omega, dim // 2)


def canonical_contact_data(fs: FramedStructure, point) -> PointwiseData:
    """Annihilator, normalized skew form, Reeb direction and extended metric at a point."""
    p = freeze_vector(point)
    if len(p) != fs.dim:
        raise DimensionMismatchError("point dimension mismatch")
    frame_rows = [x.evaluate(p) for x in fs.frame]
    if linalg.rank(frame_rows) < len(fs.frame):
        raise FrameDegenerateError(f"frame fields dependent at {format_point(p)}")
    kernel = exact_nullspace(frame_rows)
    assert len(kernel) == 1
    a0 = kernel[0]
    # normalize the last nonzero entry to +1; for graded frames this keeps the
    # pointwise gauge aligned with the global dz-type annihilator
    lead = next(x for x in reversed(a0) if x != 0)
    a0 = tuple(x / lead for x in a0)

    width = len(fs.frame)
    w0 = [[Fraction(0)] * width for _ in range(width)]
    for (i, j), br in fs.brackets.items():
        val = linalg.vec_dot(a0, br.evaluate(p))
        w0[i][j] = val
        w0[j][i] = -val
    pf0 = pfaffian(w0)
    if pf0 == 0:
        raise NotContactError(f"distribution is not contact at {format_point(p)}")

    scale = RootScale.of(abs(pf0), -1, fs.n)

    theta = fs.theta_numerator.evaluate(p)
    kern = exact_nullspace(theta)
    if len(kern) != 1:
        raise NotContactError(f"transverse direction is not unique at {format_point(p)}")
    v = kern[0]
    av = linalg.vec_dot(a0, v)
    if av == 0:
        raise NotContactError(f"transverse direction lies in the distribution at {format_point(p)}")
    reeb0 = tuple(x / av for x in v)

    fr = scale.as_fraction()
    if fr is not None:
        alpha = tuple(fr * x for x in a0)
        omega = SkewForm(tuple(tuple(fr * x for x in row) for row in w0))
        reeb = tuple(x / fr for x in reeb0)
        out_scale = RootScale.one()
    else:
        alpha = a0
        omega = SkewForm(tuple(tuple(row) for row in w0))
        reeb = reeb0
        out_scale = scale

    cols = list(frame_rows) + [reeb]
    c_inv = linalg.inverse(linalg.transpose(cols))
    d = [[Fraction(0)] * fs.dim for _ in range(fs.dim)]
    for i, s in enumerate(fs.signature):
        d[i][i] = Fraction(s)
    d[fs.dim - 1][fs.dim - 1] = Fraction(1)
    big_g = linalg.mat_mul(linalg.mat_mul(linalg.transpose(c_inv), d), c_inv)

    pf = Fraction(1) if pf0 > 0 else Fraction(-1)
    return PointwiseData(p, alpha, reeb, big_g, omega, pf, out_scale, fs.signature)


def symplectic_in_frame(fs: FramedStructure, point) -> SkewForm:
    """Normalized skew form of the distribution in the orthonormal frame."""
    return canonical_contact_data(fs, point).omega


def isometry_check(m: AffineMap, fs: FramedStructure, points) -> bool:
    """Exact check that the map preserves the distribution and the frame Gram matrix."""
    if m.dim != fs.dim:
        raise DimensionMismatchError("map dimension mismatch")
    dim = fs.dim
    eps = [Fraction(s) for s in fs.signature]
    for point in points:
        p = freeze_vector(point)
        q = m.apply(p)
        target_cols = linalg.transpose([x.evaluate(q) for x in fs.frame])
        sols = []
        for x in fs.frame:
            pushed = linalg.mat_vec(m.linear, x.evaluate(p))
            sol = linalg.solve(target_cols, pushed)
            if sol is None:
                return False
            sols.append(sol)
        width = len(fs.frame)
        for i in range(width):
            for j in range(i, width):
                gram = sum(eps[k] * sols[i][k] * sols[j][k] for k in range(width))
                want = eps[i] if i == j else Fraction(0)
                if gram != want:
                    return False
    return True


def default_sample_points(dim: int, seed: int = 0, extra: int = 8) -> list[Vector]:
    """The origin plus ``extra`` reproducible small-rational points."""
    rng = random.Random(seed)
    pts = [tuple(Fraction(0) for _ in range(dim))]
    for _ in range(extra):
        pts.append(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(dim)))
    return pts

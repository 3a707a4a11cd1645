"""Left-invariant contact structures on R^(2n+1) with a Heisenberg-type group law.

The model with plane weights b_1..b_n uses the frame
X_i = d/dx_i + (b_i/2) y_i d/dz, Y_i = d/dy_i - (b_i/2) x_i d/dz (orthonormal
with signs (p_i, r_i) per plane) and the group law whose z-component is
z + z' + (1/2) sum b_i (y_i x'_i - y'_i x_i).  These models realize the
maximal isometry dimensions the bound calculators report.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass

from . import linalg
from .calculus import AffineMap, FramedStructure, OneForm, VectorField, field_after_map
from .errors import BadSpecError, NotSymplecticError
from .linalg import Matrix, freeze, freeze_vector
from .poly import Polynomial

__all__ = [
    "HeisenbergSpec",
    "build_model",
    "group_multiply",
    "left_translation",
    "linear_isometry_map",
    "verify_lemma2",
    "model_symplectic_matrix",
    "plane_blocks_to_coordinates",
]


@dataclass(frozen=True)
class HeisenbergSpec:
    """n plane weights b_i > 0 and a metric sign pair (p_i, r_i) per plane."""

    n: int
    frequencies: tuple[Fraction, ...]
    signature: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "frequencies", tuple(Fraction(b) for b in self.frequencies))
        object.__setattr__(
            self, "signature", tuple((int(p), int(r)) for p, r in self.signature)
        )
        if self.n < 1:
            raise BadSpecError("n must be at least 1")
        if len(self.frequencies) != self.n or len(self.signature) != self.n:
            raise BadSpecError("need one frequency and one sign pair per plane")
        if any(b <= 0 for b in self.frequencies):
            raise BadSpecError("frequencies must be positive")
        if any(p not in (-1, 1) or r not in (-1, 1) for p, r in self.signature):
            raise BadSpecError("signature entries must be +1 or -1")

    @property
    def index(self) -> int:
        return sum(1 for pair in self.signature for s in pair if s < 0)


def effective_frequencies(spec: HeisenbergSpec) -> tuple[Fraction, ...]:
    """Plane weights rescaled so their product is 1, when that is exact.

    Scaling every b_i by the same factor is the coordinate change z -> c z,
    so it does not change the structure up to isometry.  If the needed n-th
    root is irrational the weights are kept as given and the pointwise
    normalization carries the radical instead.
    """
    prod = Fraction(1)
    for b in spec.frequencies:
        prod *= b
    if prod == 1:
        return spec.frequencies
    mu = linalg.RootScale.of(prod, -1, spec.n).as_fraction()
    if mu is None:
        return spec.frequencies
    return tuple(b * mu for b in spec.frequencies)


def _coordinates(n: int) -> tuple[str, ...]:
    return tuple([f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"])


def build_model(spec: HeisenbergSpec) -> FramedStructure:
    """Framed structure of the model; frame order X_1, Y_1, ..., X_n, Y_n."""
    n = spec.n
    coords = _coordinates(n)
    bs = effective_frequencies(spec)
    half = Fraction(1, 2)
    frame = []
    signature = []
    for i in range(n):
        x_i = Polynomial.variable(coords, f"x{i + 1}")
        y_i = Polynomial.variable(coords, f"y{i + 1}")
        zero = Polynomial.zero(coords)
        xcomp = [zero] * (2 * n + 1)
        xcomp[i] = Polynomial.constant(coords, 1)
        xcomp[2 * n] = half * bs[i] * y_i
        ycomp = [zero] * (2 * n + 1)
        ycomp[n + i] = Polynomial.constant(coords, 1)
        ycomp[2 * n] = -half * bs[i] * x_i
        frame.append(VectorField(coords, tuple(xcomp)))
        frame.append(VectorField(coords, tuple(ycomp)))
        signature.extend(spec.signature[i])
    alpha_comps = []
    for i in range(n):
        alpha_comps.append(-half * bs[i] * Polynomial.variable(coords, f"y{i + 1}"))
    for i in range(n):
        alpha_comps.append(half * bs[i] * Polynomial.variable(coords, f"x{i + 1}"))
    alpha_comps.append(Polynomial.constant(coords, 1))
    contact_form = OneForm(coords, tuple(alpha_comps))
    return FramedStructure(coords, tuple(frame), tuple(signature), contact_form)


def group_multiply(p, q, spec: HeisenbergSpec):
    """Group product p * q; z-component z + z' + (1/2) sum b_i (y_i x'_i - y'_i x_i)."""
    n = spec.n
    p = freeze_vector(p)
    q = freeze_vector(q)
    if len(p) != 2 * n + 1 or len(q) != 2 * n + 1:
        raise ValueError("points must have dimension 2n+1")
    bs = effective_frequencies(spec)
    out = [a + b for a, b in zip(p, q)]
    twist = sum(
        (bs[i] * (p[n + i] * q[i] - q[n + i] * p[i]) for i in range(n)), Fraction(0)
    )
    out[2 * n] = p[2 * n] + q[2 * n] + twist / 2
    return tuple(out)


def left_translation(p, spec: HeisenbergSpec) -> AffineMap:
    """The affine map q -> p * q."""
    n = spec.n
    p = freeze_vector(p)
    bs = effective_frequencies(spec)
    dim = 2 * n + 1
    linear = [[Fraction(1) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
    for i in range(n):
        linear[2 * n][i] = bs[i] * p[n + i] / 2
        linear[2 * n][n + i] = -bs[i] * p[i] / 2
    return AffineMap(tuple(tuple(row) for row in linear), p)


def linear_isometry_map(sigma, spec: HeisenbergSpec) -> AffineMap:
    """(x, y, z) -> (sigma.(x, y), z) for a 2n x 2n matrix on the (x, y) block."""
    n = spec.n
    sigma = freeze(sigma)
    if len(sigma) != 2 * n or any(len(r) != 2 * n for r in sigma):
        raise ValueError("sigma must be 2n x 2n")
    dim = 2 * n + 1
    linear = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(2 * n):
        for j in range(2 * n):
            linear[i][j] = sigma[i][j]
    linear[2 * n][2 * n] = Fraction(1)
    return AffineMap(tuple(tuple(row) for row in linear), (Fraction(0),) * dim)


def model_symplectic_matrix(spec: HeisenbergSpec) -> Matrix:
    """Matrix of the model's two-form on (x, y) coordinates, up to overall sign."""
    n = spec.n
    bs = effective_frequencies(spec)
    m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[i][n + i] = bs[i]
        m[n + i][i] = -bs[i]
    return tuple(tuple(row) for row in m)


def plane_blocks_to_coordinates(blocks) -> Matrix:
    """Assemble per-plane 2x2 blocks into a matrix on (x_1..x_n, y_1..y_n)."""
    n = len(blocks)
    m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i, blk in enumerate(blocks):
        blk = freeze(blk)
        m[i][i] = blk[0][0]
        m[i][n + i] = blk[0][1]
        m[n + i][i] = blk[1][0]
        m[n + i][n + i] = blk[1][1]
    return tuple(tuple(row) for row in m)


def verify_lemma2(sigma, spec: HeisenbergSpec) -> bool:
    """Exact symbolic check of the pushforward expansion of the frame under f_sigma.

    Requires sigma to preserve the model two-form (sigma^T W sigma = W); then
    Df.X_i(q) must equal sum_j sigma[j][i] X_j(f(q)) + sigma[n+j][i] Y_j(f(q)),
    and similarly for Y_i with columns n+i.
    """
    n = spec.n
    sigma = freeze(sigma)
    w = model_symplectic_matrix(spec)
    if linalg.mat_mul(linalg.mat_mul(linalg.transpose(sigma), w), sigma) != w:
        raise NotSymplecticError("sigma does not preserve the model two-form")
    fs = build_model(spec)
    f = linear_isometry_map(sigma, spec)
    xs = [fs.frame[2 * i] for i in range(n)]
    ys = [fs.frame[2 * i + 1] for i in range(n)]
    xs_after = [field_after_map(x, f) for x in xs]
    ys_after = [field_after_map(y, f) for y in ys]
    coords = fs.coordinates
    dim = 2 * n + 1
    for col, source in [(lambda i: i, xs), (lambda i: n + i, ys)]:
        for i in range(n):
            c = col(i)
            lhs = [Polynomial.zero(coords) for _ in range(dim)]
            for k in range(dim):
                for j in range(dim):
                    if f.linear[k][j]:
                        lhs[k] = lhs[k] + f.linear[k][j] * source[i].components[j]
            rhs = [Polynomial.zero(coords) for _ in range(dim)]
            for j in range(n):
                for k in range(dim):
                    if sigma[j][c]:
                        rhs[k] = rhs[k] + sigma[j][c] * xs_after[j].components[k]
                    if sigma[n + j][c]:
                        rhs[k] = rhs[k] + sigma[n + j][c] * ys_after[j].components[k]
            if any(l != r for l, r in zip(lhs, rhs)):
                return False
    return True

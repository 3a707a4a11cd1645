"""The Lie algebra of matrices preserving both forms of a pencil.

For a pair (g, w) this is {A : AᵀG + GA = 0 and AᵀW + WA = 0}, computed as an
exact nullspace.  Its dimension is the local ingredient of every isometry
dimension bound the package reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import NotClosedError
from .linalg import Matrix, exact_nullspace
from .pencil import FREQUENCY, PARA, FormPair, KroneckerProfile

__all__ = [
    "StabilizerBasis",
    "BoundsReport",
    "stabilizer_basis",
    "bracket_structure",
    "dimension_bounds",
]

# Profile values this close to 1 are treated as exactly 1 when deciding which
# bound formulas apply.  Matches the default eigenvalue tolerance.
_VALUE_ATOL = 1e-9


@dataclass(frozen=True)
class StabilizerBasis:
    """Echelon-ordered basis of the joint stabilizer algebra.

    ``structure_constants[a][b][k]`` expands [B_a, B_b] in the basis; it is
    computed on first access and cached.
    """

    generators: tuple[Matrix, ...]
    dimension: int

    @cached_property
    def structure_constants(self) -> tuple:
        constants, closed = bracket_structure(self.generators)
        if not closed:
            raise NotClosedError("commutator left the computed stabilizer basis")
        return constants

    def commutator_in_basis(self, a: int, b: int) -> tuple[Fraction, ...]:
        return self.structure_constants[a][b]


def _preservation_rows(form: Matrix, dim: int) -> list[list[Fraction]]:
    """Rows of the linear system AᵀM + MA = 0 in the unknowns A[r][c] (row-major)."""
    rows = []
    for i in range(dim):
        for j in range(dim):
            row = [Fraction(0)] * (dim * dim)
            for r in range(dim):
                row[r * dim + i] += form[r][j]
                row[r * dim + j] += form[i][r]
            rows.append(row)
    return rows


def stabilizer_basis(pair: FormPair) -> StabilizerBasis:
    """Exact basis of {A : A preserves g and w infinitesimally}.

    The basis is the reduced-echelon kernel of the stacked preservation
    constraints, so its order is deterministic.
    """
    dim = 2 * pair.n
    rows = _preservation_rows(pair.g.entries, dim)
    rows += _preservation_rows(pair.w.entries, dim)
    kernel = exact_nullspace(rows)
    gens = tuple(
        tuple(tuple(vec[r * dim + c] for c in range(dim)) for r in range(dim)) for vec in kernel
    )
    return StabilizerBasis(gens, len(gens))


def bracket_structure(generators) -> tuple[tuple | None, bool]:
    """Structure constants of a matrix Lie algebra basis, plus a closure flag.

    Expands every commutator [B_a, B_b] in the basis exactly.  A False flag
    means some commutator is not in the span (which for a basis produced by
    :func:`stabilizer_basis` would be a computational bug).
    """
    if isinstance(generators, StabilizerBasis):
        generators = generators.generators
    gens = [linalg.freeze(g) for g in generators]
    d = len(gens)
    if d == 0:
        return (), True
    dim = len(gens[0])
    vecs = [[g[r][c] for r in range(dim) for c in range(dim)] for g in gens]
    # factor the span once: in the reduced echelon form R the pivot columns
    # carry identity coordinates, so expansion is coefficient read-off
    red, pivots = linalg.rref(vecs)
    if len(pivots) != d:
        raise ValueError("generators are linearly dependent")
    change = [[vec[p] for p in pivots] for vec in vecs]  # gen_a = sum_i change[a][i] R_i
    back = linalg.transpose(linalg.inverse(change))
    constants = [[None] * d for _ in range(d)]
    for a in range(d):
        for b in range(d):
            comm = linalg.mat_sub(linalg.mat_mul(gens[a], gens[b]), linalg.mat_mul(gens[b], gens[a]))
            target = [comm[r][c] for r in range(dim) for c in range(dim)]
            coeffs = linalg.mat_vec(back, [target[p] for p in pivots])
            residual = list(target)
            for x, vec in zip(coeffs, vecs):
                if x:
                    residual = [rv - x * gv for rv, gv in zip(residual, vec)]
            if any(residual):
                return None, False
            constants[a][b] = tuple(coeffs)
    return tuple(tuple(row) for row in constants), True


@dataclass(frozen=True)
class BoundsReport:
    """Every dimension bound the theory attaches to one spectral profile."""

    dim_m: int
    n: int
    index: int
    exact_dim_g0: int
    lemma1_bound: int
    blockwise_dim: int
    thm1_bound: int
    thm3_bound: int | None
    thm4_bound: int | None
    est3_value: int | None


def dimension_bounds(
    profile: KroneckerProfile, dim_m: int, index: int, exact_dim: int
) -> BoundsReport:
    """Evaluate the bound formulas for a profile on a (2n+1)-manifold.

    thm3 applies only to compatible profiles (all values 1, semisimple);
    thm4 only to regular ones (semisimple, no generic block).  est3 is the
    model dimension for the profile's own para-plane count t.
    """
    n = (dim_m - 1) // 2
    if dim_m != 2 * n + 1:
        raise ValueError("dim_m must be odd")
    s, t = profile.s, profile.t

    lemma1 = s * s + t * t
    blockwise = sum(s_i * s_i + p_i * p_i for _, s_i, p_i in profile.groups)

    if index % 2 == 0 or index == n:
        thm1 = dim_m + n * n
    else:
        thm1 = dim_m + (n - 1) ** 2 + 1

    only_freq_para = all(b.kind in (FREQUENCY, PARA) for b in profile.blocks)
    regular = profile.semisimple and only_freq_para
    compatible = regular and all(abs(b.value - 1.0) <= _VALUE_ATOL for b in profile.blocks)

    thm3 = dim_m + s * s + (n - s) ** 2 if compatible else None
    thm4 = dim_m + blockwise if regular else None
    est3 = dim_m + (n - t) ** 2 + t * t

    return BoundsReport(
        dim_m=dim_m,
        n=n,
        index=index,
        exact_dim_g0=exact_dim,
        lemma1_bound=lemma1,
        blockwise_dim=blockwise,
        thm1_bound=thm1,
        thm3_bound=thm3,
        thm4_bound=thm4,
        est3_value=est3,
    )

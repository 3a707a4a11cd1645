"""Graded symbol algebra of a contact pencil and its degree-one prolongation.

The symbol is the two-step nilpotent algebra of the distribution (bracket
given by the skew form into a one-dimensional center) extended by the joint
stabilizer algebra in degree zero.  A degree-one derivation A assigns a
stabilizer element A(v) to every v and a vector v_A to the center generator,
subject to the graded Leibniz rule on both bracket types:

    A(v_i) v_j - A(v_j) v_i = w(v_i, v_j) v_A      (degree -1 pairs)
    w(v_A, v_j) = 0                                 (center with degree -1)

The second family forces v_A = 0 because w is nondegenerate; the first then
reduces to the classical torsion system whose only metric-compatible
solution is zero.  The solver assembles both families and reports the exact
solution space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContactIsoError
from .linalg import Matrix, Vector, exact_nullspace
from .pencil import FormPair, structure_operator
from .stabilizer import StabilizerBasis, stabilizer_basis

__all__ = [
    "SymbolAlgebra",
    "ProlongationResult",
    "build_symbol",
    "first_prolongation",
    "levi_civita_uniqueness",
    "theorem6_bound",
]


@dataclass(frozen=True)
class SymbolAlgebra:
    """Graded algebra: 2n-dim space, 1-dim center, stabilizer in degree zero."""

    n: int
    pair: FormPair
    g0: StabilizerBasis

    @property
    def total_dimension(self) -> int:
        return 2 * self.n + 1 + self.g0.dimension


def build_symbol(pair: FormPair) -> SymbolAlgebra:
    return SymbolAlgebra(pair.n, pair, stabilizer_basis(pair))


@dataclass(frozen=True)
class ProlongationResult:
    g1_dimension: int
    g1_basis: tuple[tuple[tuple[Matrix, ...], Vector], ...]
    trivial: bool


def first_prolongation(sym: SymbolAlgebra) -> ProlongationResult:
    """Exact solution space of the degree-one derivation equations."""
    n2 = 2 * sym.n
    gens = sym.g0.generators
    d = len(gens)
    w = sym.pair.w.entries
    # sanity: the degree -1 bracket coefficients are exactly w = J^T G
    j = structure_operator(sym.pair)
    assert all(
        sum(j.entries[k][i] * sym.pair.g.entries[k][m] for k in range(n2)) == w[i][m]
        for i in range(n2)
        for m in range(n2)
    )

    width = n2 * d + n2  # unknowns: coefficients of A(v_i) in the basis, then v_A
    rows: list[list[Fraction]] = []
    zero = Fraction(0)
    for i in range(n2):
        for jj in range(i + 1, n2):
            for m in range(n2):
                row = [zero] * width
                for a in range(d):
                    row[i * d + a] += gens[a][m][jj]
                    row[jj * d + a] -= gens[a][m][i]
                row[n2 * d + m] -= w[i][jj]
                rows.append(row)
    for jj in range(n2):
        row = [zero] * width
        for m in range(n2):
            row[n2 * d + m] = w[m][jj]
        rows.append(row)

    kernel = exact_nullspace(rows, ncols=width) if rows else exact_nullspace([], ncols=width)
    basis = []
    for vec in kernel:
        mats = []
        for i in range(n2):
            coeffs = vec[i * d:(i + 1) * d]
            mat = [[zero] * n2 for _ in range(n2)]
            for a, c in enumerate(coeffs):
                if c:
                    for r in range(n2):
                        for col in range(n2):
                            mat[r][col] += c * gens[a][r][col]
            mats.append(tuple(tuple(r) for r in mat))
        v_a = vec[n2 * d:]
        basis.append((tuple(mats), tuple(v_a)))
    return ProlongationResult(len(kernel), tuple(basis), len(kernel) == 0)


def levi_civita_uniqueness(index: int, n: int) -> bool:
    """True iff A(v_i) v_j = A(v_j) v_i with all A(v_i) in so(index, 2n-index) forces A = 0."""
    n2 = 2 * n
    if not 0 <= index <= n2:
        raise ValueError("index out of range")
    g = [[Fraction(0)] * n2 for _ in range(n2)]
    for i in range(n2):
        g[i][i] = Fraction(-1) if i < index else Fraction(1)
    # basis of the orthogonal algebra from the exact kernel of A^T G + G A = 0
    rows = []
    for i in range(n2):
        for jj in range(n2):
            row = [Fraction(0)] * (n2 * n2)
            for r in range(n2):
                row[r * n2 + i] += g[r][jj]
                row[r * n2 + jj] += g[i][r]
            rows.append(row)
    so_basis = [
        tuple(tuple(vec[r * n2 + c] for c in range(n2)) for r in range(n2))
        for vec in exact_nullspace(rows)
    ]
    d = len(so_basis)
    width = n2 * d
    sys_rows: list[list[Fraction]] = []
    zero = Fraction(0)
    for i in range(n2):
        for jj in range(i + 1, n2):
            for m in range(n2):
                row = [zero] * width
                for a in range(d):
                    row[i * d + a] += so_basis[a][m][jj]
                    row[jj * d + a] -= so_basis[a][m][i]
                sys_rows.append(row)
    return len(exact_nullspace(sys_rows, ncols=width)) == 0


def theorem6_bound(fs, points) -> int:
    """dim M plus the smallest sampled stabilizer dimension.

    The theoretical bound takes an infimum over all points; this evaluates it
    on the given sample points only.
    """
    from .calculus import canonical_contact_data

    dims = []
    for p in points:
        data = canonical_contact_data(fs, p)
        dims.append(stabilizer_basis(data.form_pair()).dimension)
    if not dims:
        raise ContactIsoError("at least one sample point is required")
    return fs.dim + min(dims)

"""Pencils of one symmetric and one skew-symmetric form on a 2n-space.

The pair (g, w) determines an operator J with g(Jv, u) = w(v, u).  Its
eigenvalue layout (frequency planes with definite metric, para planes with
null real eigendirections, generic leftovers) is the pointwise invariant
everything else in the package consumes.  Exact rational arithmetic is used
for every algebraic decision; floating point only locates eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import (
    DegenerateFormError,
    NumericAmbiguityError,
    OddDimensionError,
    UnsupportedPencilError,
)
from .linalg import Matrix, RootScale, exact_nullspace, freeze

__all__ = [
    "FREQUENCY",
    "PARA",
    "GENERIC",
    "SymmetricForm",
    "SkewForm",
    "FormPair",
    "StructureOperator",
    "SpectralBlock",
    "KroneckerProfile",
    "structure_operator",
    "spectral_classify",
    "is_compatible",
    "is_compatible_scaled",
    "pfaffian",
    "exact_nullspace",
]

FREQUENCY = "frequency"
PARA = "para"
GENERIC = "generic"


def pfaffian(rows) -> Fraction:
    """Pfaffian of a skew-symmetric matrix, by expansion along the first row."""
    m = freeze(rows)
    k = len(m)
    if k % 2:
        raise OddDimensionError(f"Pfaffian needs even dimension, got {k}")
    for i in range(k):
        if len(m[i]) != k:
            raise ValueError("Pfaffian of a non-square matrix")
        for j in range(i, k):
            if m[i][j] != -m[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    return _pf(m, tuple(range(k)))


def _pf(m: Matrix, idx: tuple[int, ...]) -> Fraction:
    if not idx:
        return Fraction(1)
    first = idx[0]
    rest = idx[1:]
    total = Fraction(0)
    for pos, j in enumerate(rest):
        a = m[first][j]
        if a:
            sign = 1 if pos % 2 == 0 else -1
            sub = rest[:pos] + rest[pos + 1:]
            total += sign * a * _pf(m, sub)
    return total


@dataclass(frozen=True)
class SymmetricForm:
    """Nondegenerate symmetric form; ``index`` is the number of negative squares."""

    entries: Matrix
    index: int

    def __post_init__(self):
        m = freeze(self.entries)
        object.__setattr__(self, "entries", m)
        k = len(m)
        for i in range(k):
            if len(m[i]) != k:
                raise ValueError("symmetric form must be square")
            for j in range(i + 1, k):
                if m[i][j] != m[j][i]:
                    raise ValueError("matrix is not symmetric")
        pos, neg = linalg.signature(m)
        if pos + neg != k:
            raise DegenerateFormError("symmetric form is degenerate")
        if neg != self.index:
            raise ValueError(f"stored index {self.index} != computed index {neg}")

    @classmethod
    def from_rows(cls, rows) -> "SymmetricForm":
        m = freeze(rows)
        _, neg = linalg.signature(m)
        return cls(m, neg)

    @property
    def dim(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SkewForm:
    """Nondegenerate skew-symmetric form on an even-dimensional space."""

    entries: Matrix

    def __post_init__(self):
        m = freeze(self.entries)
        object.__setattr__(self, "entries", m)
        if pfaffian(m) == 0:
            raise DegenerateFormError("skew form is degenerate")

    @property
    def dim(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FormPair:
    """The pencil (g, w) on a 2n-dimensional space."""

    g: SymmetricForm
    w: SkewForm
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.g.dim != 2 * self.n or self.w.dim != 2 * self.n:
            raise ValueError("both forms must be 2n x 2n")

    @classmethod
    def from_rows(cls, g_rows, w_rows) -> "FormPair":
        g = SymmetricForm.from_rows(g_rows)
        if g.dim % 2:
            raise ValueError("form pair needs even dimension")
        return cls(g, SkewForm(freeze(w_rows)), g.dim // 2)


@dataclass(frozen=True)
class StructureOperator:
    entries: Matrix

    @property
    def dim(self) -> int:
        return len(self.entries)


def structure_operator(pair: FormPair) -> StructureOperator:
    """The operator J with Jᵀ·G = W, i.e. g(Jv, u) = w(v, u). Exact."""
    g = pair.g.entries
    w = pair.w.entries
    j = linalg.mat_scale(-1, linalg.mat_mul(linalg.inverse(g), w))
    jt = linalg.transpose(j)
    assert linalg.mat_mul(jt, g) == w
    assert linalg.is_zero_matrix(linalg.mat_add(linalg.mat_mul(jt, g), linalg.mat_mul(g, j)))
    assert linalg.is_zero_matrix(linalg.mat_add(linalg.mat_mul(jt, w), linalg.mat_mul(w, j)))
    return StructureOperator(j)


def is_compatible(pair: FormPair) -> bool:
    """Exact test J⁴ = I.

    Holds iff there is a basis simultaneously orthonormal for g and canonical
    for w (all frequency and para eigenvalues equal to 1, semisimple).
    """
    j = structure_operator(pair).entries
    j2 = linalg.mat_mul(j, j)
    return linalg.mat_mul(j2, j2) == linalg.identity(len(j))


def is_compatible_scaled(pair: FormPair, scale: RootScale) -> bool:
    """Compatibility of (g, scale·w) for an exact radical scale factor.

    (scale·J)⁴ = I iff J⁴ is a positive scalar matrix c·I with c·scale⁴ = 1.
    """
    j = structure_operator(pair).entries
    j2 = linalg.mat_mul(j, j)
    j4 = linalg.mat_mul(j2, j2)
    c = j4[0][0]
    if c <= 0:
        return False
    if j4 != linalg.mat_scale(c, linalg.identity(len(j))):
        return False
    return scale.times_rational_is_one(c, 4)


@dataclass(frozen=True)
class SpectralBlock:
    """One eigenvalue-magnitude block of the operator J.

    ``value`` is the frequency b for FREQUENCY blocks, the real eigenvalue
    magnitude c for PARA blocks, and |Re λ| for GENERIC blocks.  For
    FREQUENCY blocks ``definite_signs`` records the sign of g on each
    invariant plane.
    """

    kind: str
    value: float
    plane_count: int
    definite_signs: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class KroneckerProfile:
    """Spectral classification of J: s frequency planes and t = n - s others.

    ``groups`` merges blocks of equal eigenvalue magnitude into
    (value, s_i, p_i) with s_i frequency planes and p_i non-frequency planes.
    """

    blocks: tuple[SpectralBlock, ...]
    s: int
    t: int
    semisimple: bool
    groups: tuple[tuple[float, int, int], ...]


def _cluster(values: np.ndarray, tol: float) -> list[list[int]]:
    """Connected components of the 'within tol' graph on complex values."""
    k = len(values)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(values[i] - values[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def spectral_classify(j: StructureOperator, pair: FormPair, tol: float = 1e-9) -> KroneckerProfile:
    """Classify the spectrum of J into frequency / para / generic blocks.

    Eigenvalues are located in floating point and clustered within ``tol``;
    the semisimplicity flag is decided exactly over the rationals.  Raises
    NumericAmbiguityError when clusters come closer than 10·tol and
    UnsupportedPencilError when a purely imaginary eigenvalue is defective.
    """
    n = pair.n
    dim = 2 * n
    jf = np.array([[float(x) for x in row] for row in j.entries])
    gf = np.array([[float(x) for x in row] for row in pair.g.entries])
    evals, evecs = np.linalg.eig(jf)

    clusters = _cluster(evals, tol)
    reps = [complex(np.mean(evals[idx])) for idx in clusters]
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if abs(reps[a] - reps[b]) < 10 * tol:
                raise NumericAmbiguityError(
                    f"eigenvalue clusters {reps[a]:.3e} and {reps[b]:.3e} are closer than 10*tol"
                )

    semisimple = linalg.is_semisimple(j.entries)
    zero_thr = 10 * tol
    scale_ref = max(1.0, float(np.max(np.abs(evals))))

    def geometric_mult(rep: complex) -> int:
        mat = jf - rep * np.eye(dim)
        return dim - np.linalg.matrix_rank(mat, tol=zero_thr * scale_ref)

    infos = []
    for idx, rep in zip(clusters, reps):
        re, im = rep.real, rep.imag
        if abs(re) <= zero_thr and abs(im) <= zero_thr:
            raise NumericAmbiguityError("eigenvalue cluster at zero for a nondegenerate pencil")
        kind = "imag" if abs(re) <= zero_thr else ("real" if abs(im) <= zero_thr else "generic")
        infos.append({"idx": idx, "rep": rep, "kind": kind, "mult": len(idx)})

    defect_found = False
    blocks: list[SpectralBlock] = []
    used = [False] * len(infos)

    def partner(target: complex):
        for k, info in enumerate(infos):
            if not used[k] and abs(info["rep"] - target) <= max(tol, zero_thr):
                return k
        raise NumericAmbiguityError("eigenvalue symmetry pairing failed")

    for k, info in enumerate(infos):
        if used[k]:
            continue
        rep, kind, mult = info["rep"], info["kind"], info["mult"]
        if kind == "imag":
            if rep.imag < 0:
                continue  # handled with its conjugate
            used[k] = True
            used[partner(rep.conjugate())] = True
            b = abs(rep.imag)
            defective = not semisimple and geometric_mult(rep) < mult
            if defective:
                raise UnsupportedPencilError(
                    f"purely imaginary eigenvalue ±{b:.6g}i is not semisimple"
                )
            signs = _frequency_signs(evecs[:, info["idx"]], gf, tol)
            if signs is None:
                raise UnsupportedPencilError(
                    f"metric is degenerate on the eigenspace of ±{b:.6g}i"
                )
            blocks.append(SpectralBlock(FREQUENCY, b, mult, signs))
        elif kind == "real":
            if rep.real < 0:
                continue
            used[k] = True
            used[partner(-rep)] = True
            c = abs(rep.real)
            defective = not semisimple and geometric_mult(rep) < mult
            if defective:
                defect_found = True
                blocks.append(SpectralBlock(GENERIC, c, mult))
            else:
                blocks.append(SpectralBlock(PARA, c, mult))
        else:
            if rep.real < 0 or rep.imag < 0:
                continue
            used[k] = True
            used[partner(rep.conjugate())] = True
            used[partner(-rep)] = True
            used[partner(-rep.conjugate())] = True
            if not semisimple and geometric_mult(rep) < mult:
                defect_found = True
            blocks.append(SpectralBlock(GENERIC, abs(rep.real), 2 * mult))

    if not semisimple and not defect_found and not any(b.kind == GENERIC for b in blocks):
        raise NumericAmbiguityError(
            "exact arithmetic reports a defective operator but no cluster shows it"
        )
    if not all(used) or sum(b.plane_count for b in blocks) != n:
        raise NumericAmbiguityError("eigenvalue clusters do not fill the expected ± symmetry")

    blocks.sort(key=lambda b: ({FREQUENCY: 0, PARA: 1, GENERIC: 2}[b.kind], b.value))
    s = sum(b.plane_count for b in blocks if b.kind == FREQUENCY)
    t = n - s

    groups = _merge_groups(blocks, tol)
    return KroneckerProfile(tuple(blocks), s, t, semisimple, groups)


def _frequency_signs(vecs: np.ndarray, gf: np.ndarray, tol: float) -> tuple[int, ...] | None:
    """Signs of g on the invariant planes of one imaginary eigenvalue.

    Diagonalizes the sesquilinear form zᵀ G z̄ on the complex eigenspace; the
    inertia gives one definite plane per eigenvector, or None if the form is
    numerically degenerate there.
    """
    h = vecs.T @ gf @ vecs.conj()
    h = (h + h.conj().T) / 2.0
    ev = np.linalg.eigvalsh(h)
    thr = max(100 * tol, 1e-8) * max(1.0, float(np.max(np.abs(ev))))
    if np.any(np.abs(ev) <= thr):
        return None
    signs = sorted((1 if x > 0 else -1 for x in ev), reverse=True)
    return tuple(signs)


def _merge_groups(blocks, tol: float) -> tuple[tuple[float, int, int], ...]:
    items = sorted(blocks, key=lambda b: b.value)
    groups: list[list[SpectralBlock]] = []
    for b in items:
        if groups and abs(groups[-1][-1].value - b.value) <= tol:
            groups[-1].append(b)
        else:
            groups.append([b])
    reps = [float(np.mean([b.value for b in g])) for g in groups]
    for a in range(len(reps) - 1):
        if abs(reps[a] - reps[a + 1]) < 10 * tol:
            raise NumericAmbiguityError(
                f"block values {reps[a]:.6g} and {reps[a + 1]:.6g} are closer than 10*tol"
            )
    out = []
    for rep, g in zip(reps, groups):
        s_i = sum(b.plane_count for b in g if b.kind == FREQUENCY)
        p_i = sum(b.plane_count for b in g if b.kind != FREQUENCY)
        out.append((rep, s_i, p_i))
    return tuple(out)


def rescale_profile(profile: KroneckerProfile, factor: float) -> KroneckerProfile:
    """Profile of (g, factor·w) given the profile of (g, w), factor > 0.

    Scaling w scales every eigenvalue of J by the same positive factor, so
    only the recorded values change.
    """
    if factor <= 0:
        raise ValueError("factor must be positive")
    if factor == 1.0:
        return profile
    blocks = tuple(replace(b, value=b.value * factor) for b in profile.blocks)
    groups = tuple((v * factor, s_i, p_i) for v, s_i, p_i in profile.groups)
    return KroneckerProfile(blocks, profile.s, profile.t, profile.semisimple, groups)

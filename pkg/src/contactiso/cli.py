"""Command-line front end: structure-spec files, analysis pipeline, reports.

Structure-spec files are JSON: ``n``, ``coordinates`` (2n+1 names), ``frame``
(2n lists of 2n+1 polynomial strings), ``signature`` (2n entries "+"/"-"),
optional ``contact_form``, ``sample_points`` (rationals as strings/ints) and
``tolerance``.  Reports are canonical JSON: sorted keys, rationals as "p/q"
strings, floats at 12 significant digits, byte-stable for a fixed seed.

Exit codes: 0 success, 2 parse/validation, 3 not contact, 4 unsupported pencil.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import (
    FramedStructure,
    OneForm,
    VectorField,
    canonical_contact_data,
    default_sample_points,
    format_point,
)
from .errors import (
    BadSpecError,
    ContactIsoError,
    NotContactError,
    NumericAmbiguityError,
    StructureParseError,
    UnsupportedPencilError,
    ValidationError,
)
from .heisenberg import HeisenbergSpec, build_model
from .pencil import (
    FREQUENCY,
    GENERIC,
    PARA,
    is_compatible,
    is_compatible_scaled,
    rescale_profile,
    spectral_classify,
    structure_operator,
)
from .poly import parse_polynomial
from .prolongation import build_symbol, first_prolongation
from .stabilizer import dimension_bounds, stabilizer_basis

__all__ = [
    "StructureSpecFile",
    "AnalysisReport",
    "parse_structure",
    "parse_structure_file",
    "analyze",
    "emit_report",
    "structure_to_spec_dict",
    "main",
]

DEFAULT_TOL = 1e-9

_THEOREM6_NOTE = "theorem6_bound is evaluated on the sampled points only"


@dataclass(frozen=True)
class StructureSpecFile:
    structure: FramedStructure
    sample_points: tuple | None
    tolerance: float | None


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{where}: bad rational {value!r}: {exc}") from None
    raise ValidationError(
        f"{where}: rationals must be integers or 'p/q' strings, got {type(value).__name__}"
    )


def _parse_sign(value, where: str) -> int:
    if value in ("+", "+1", 1):
        return 1
    if value in ("-", "-1", -1):
        return -1
    raise ValidationError(f"{where}: signature entries must be '+' or '-', got {value!r}")


def parse_structure_file(text: str) -> StructureSpecFile:
    """Parse and fully validate a structure-spec file."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from None
    if not isinstance(data, dict):
        raise ValidationError("structure spec must be a JSON object")
    for key in ("n", "coordinates", "frame", "signature"):
        if key not in data:
            raise ValidationError(f"missing required key {key!r}")

    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    dim = 2 * n + 1

    coords = data["coordinates"]
    if (
        not isinstance(coords, list)
        or len(coords) != dim
        or any(not isinstance(c, str) or not c for c in coords)
        or len(set(coords)) != dim
    ):
        raise ValidationError(f"coordinates must be {dim} distinct names")
    coords = tuple(coords)

    frame_data = data["frame"]
    if not isinstance(frame_data, list) or len(frame_data) != 2 * n:
        raise ValidationError(f"frame must list {2 * n} vector fields")
    frame = []
    for i, comps in enumerate(frame_data):
        if not isinstance(comps, list) or len(comps) != dim:
            raise ValidationError(f"frame[{i}] must list {dim} polynomial strings")
        polys = []
        for j, text_ij in enumerate(comps):
            if not isinstance(text_ij, str):
                raise ValidationError(f"frame[{i}][{j}] must be a polynomial string")
            try:
                polys.append(parse_polynomial(text_ij, coords))
            except StructureParseError as exc:
                raise StructureParseError(f"frame[{i}][{j}]: {exc}", position=exc.position) from None
        frame.append(VectorField(coords, tuple(polys)))

    sig_data = data["signature"]
    if not isinstance(sig_data, list) or len(sig_data) != 2 * n:
        raise ValidationError(f"signature must list {2 * n} entries")
    signature = tuple(_parse_sign(s, f"signature[{k}]") for k, s in enumerate(sig_data))

    contact_form = None
    if data.get("contact_form") is not None:
        cf = data["contact_form"]
        if not isinstance(cf, list) or len(cf) != dim:
            raise ValidationError(f"contact_form must list {dim} polynomial strings")
        comps = []
        for j, text_j in enumerate(cf):
            try:
                comps.append(parse_polynomial(text_j, coords))
            except StructureParseError as exc:
                raise StructureParseError(f"contact_form[{j}]: {exc}", position=exc.position) from None
        contact_form = OneForm(coords, tuple(comps))

    sample_points = None
    if data.get("sample_points") is not None:
        pts = data["sample_points"]
        if not isinstance(pts, list) or not pts:
            raise ValidationError("sample_points must be a nonempty list of points")
        parsed = []
        for k, pt in enumerate(pts):
            if not isinstance(pt, list) or len(pt) != dim:
                raise ValidationError(f"sample_points[{k}] must list {dim} rationals")
            parsed.append(tuple(_parse_rational(x, f"sample_points[{k}][{i}]") for i, x in enumerate(pt)))
        sample_points = tuple(parsed)

    tolerance = None
    if data.get("tolerance") is not None:
        tolerance = float(data["tolerance"])
        if tolerance <= 0:
            raise ValidationError("tolerance must be positive")

    structure = FramedStructure(coords, tuple(frame), signature, contact_form)
    return StructureSpecFile(structure, sample_points, tolerance)


def parse_structure(text: str) -> FramedStructure:
    return parse_structure_file(text).structure


def structure_to_spec_dict(fs: FramedStructure, sample_points=None, tolerance=None) -> dict:
    """Inverse of parse_structure for writing structure-spec files."""
    out = {
        "n": fs.n,
        "coordinates": list(fs.coordinates),
        "frame": [[str(c) for c in x.components] for x in fs.frame],
        "signature": ["+" if s > 0 else "-" for s in fs.signature],
    }
    if fs.contact_form is not None:
        out["contact_form"] = [str(c) for c in fs.contact_form.components]
    if sample_points is not None:
        out["sample_points"] = [[str(Fraction(x)) for x in p] for p in sample_points]
    if tolerance is not None:
        out["tolerance"] = tolerance
    return out


# ---------------------------------------------------------------------------
# Analysis pipeline
# ---------------------------------------------------------------------------

@dataclass
class PointRecord:
    point: tuple
    contact_ok: bool
    pfaffian: Fraction | None = None
    frequencies: list | None = None
    para_values: list | None = None
    s: int | None = None
    t: int | None = None
    compatible: bool | None = None
    dim_g0_exact: int | None = None
    error: str | None = None


@dataclass
class AnalysisReport:
    dim: int
    n: int
    index: int
    signature: tuple
    tolerance: float
    seed: int | None
    per_point: list[PointRecord] = field(default_factory=list)
    regular: bool | None = None
    lemma1_bound: int | None = None
    blockwise_dim: int | None = None
    thm1_bound: int | None = None
    thm3_bound: int | None = None
    thm4_bound: int | None = None
    est3_value: int | None = None
    theorem6_bound: int | None = None
    prolongation_trivial: bool | None = None
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    error_kind: str | None = None

    def exit_code(self) -> int:
        return {None: 0, "not_contact": 3, "unsupported_pencil": 4}[self.error_kind]

    def to_dict(self) -> dict:
        per_point = []
        for r in self.per_point:
            per_point.append(
                {
                    "point": [str(x) for x in r.point],
                    "contact_ok": r.contact_ok,
                    "pfaffian": None if r.pfaffian is None else str(r.pfaffian),
                    "frequencies": r.frequencies,
                    "para_values": r.para_values,
                    "s": r.s,
                    "t": r.t,
                    "compatible": r.compatible,
                    "dim_g0_exact": r.dim_g0_exact,
                    "error": r.error,
                }
            )
        return {
            "schema": "contactiso-report/1",
            "structure": {
                "dim": self.dim,
                "n": self.n,
                "index": self.index,
                "signature": ["+" if s > 0 else "-" for s in self.signature],
            },
            "tolerance": self.tolerance,
            "seed": self.seed,
            "per_point": per_point,
            "global": {
                "regular": self.regular,
                "lemma1_bound": self.lemma1_bound,
                "blockwise_dim": self.blockwise_dim,
                "thm1_bound": self.thm1_bound,
                "thm3_bound": self.thm3_bound,
                "thm4_bound": self.thm4_bound,
                "est3_value": self.est3_value,
                "theorem6_bound": self.theorem6_bound,
                "prolongation_trivial": self.prolongation_trivial,
                "notes": self.notes,
            },
            "warnings": self.warnings,
        }


def analyze(fs: FramedStructure, points=None, tol: float = DEFAULT_TOL, seed: int | None = None) -> AnalysisReport:
    """Run the full pointwise pipeline and aggregate the dimension bounds."""
    if points is None:
        points = default_sample_points(fs.dim, seed=seed if seed is not None else 0)
    points = [tuple(Fraction(x) for x in p) for p in points]
    if not points:
        raise ValidationError("at least one sample point is required")

    report = AnalysisReport(
        dim=fs.dim, n=fs.n, index=fs.index, signature=fs.signature, tolerance=tol, seed=seed
    )
    report.notes.append(_THEOREM6_NOTE)

    profiles = []
    dims = []
    first_pair = None
    first_profile = None
    first_dim = None

    for p in points:
        try:
            data = canonical_contact_data(fs, p)
        except NotContactError as exc:
            report.per_point.append(
                PointRecord(point=p, contact_ok=False, pfaffian=Fraction(0), error="not_contact")
            )
            report.warnings.append(str(exc))
            if report.error_kind is None:
                report.error_kind = "not_contact"
            continue

        pair = data.form_pair()
        basis = stabilizer_basis(pair)
        dims.append(basis.dimension)
        if first_pair is None:
            first_pair = pair
            first_dim = basis.dimension
        if data.scale.is_one():
            compatible = is_compatible(pair)
        else:
            compatible = is_compatible_scaled(pair, data.scale)
        record = PointRecord(
            point=p,
            contact_ok=True,
            pfaffian=data.pf,
            compatible=compatible,
            dim_g0_exact=basis.dimension,
        )

        try:
            profile = spectral_classify(structure_operator(pair), pair, tol)
            if not data.scale.is_one():
                profile = rescale_profile(profile, float(data.scale))
        except UnsupportedPencilError as exc:
            record.error = "unsupported_pencil"
            report.warnings.append(f"{format_point(p)}: {exc}")
            if report.error_kind is None:
                report.error_kind = "unsupported_pencil"
            report.per_point.append(record)
            continue

        record.frequencies = sorted(
            (b.value for b in profile.blocks for _ in range(b.plane_count) if b.kind == FREQUENCY),
            reverse=True,
        )
        record.para_values = sorted(
            (b.value for b in profile.blocks for _ in range(b.plane_count) if b.kind == PARA),
            reverse=True,
        )
        if any(b.kind == GENERIC for b in profile.blocks):
            report.warnings.append(f"{format_point(p)}: generic (non-frequency, non-para) eigenvalues present")
        record.s = profile.s
        record.t = profile.t
        report.per_point.append(record)
        profiles.append(profile)
        if first_profile is None:
            first_profile = profile

    if profiles and len(profiles) == len(points):
        patterns = [tuple(sorted((s_i, p_i) for _, s_i, p_i in prof.groups)) for prof in profiles]
        report.regular = all(pat == patterns[0] for pat in patterns) and all(
            prof.semisimple and all(b.kind != GENERIC for b in prof.blocks) for prof in profiles
        )

    if first_profile is not None:
        bounds = dimension_bounds(first_profile, fs.dim, fs.index, first_dim)
        report.lemma1_bound = bounds.lemma1_bound
        report.blockwise_dim = bounds.blockwise_dim
        report.thm1_bound = bounds.thm1_bound
        report.thm3_bound = bounds.thm3_bound
        report.thm4_bound = bounds.thm4_bound
        report.est3_value = bounds.est3_value
    if dims:
        report.theorem6_bound = fs.dim + min(dims)
    if first_pair is not None:
        report.prolongation_trivial = first_prolongation(build_symbol(first_pair)).trivial
    return report


# ---------------------------------------------------------------------------
# Canonical JSON emission
# ---------------------------------------------------------------------------

def _jsonify(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return float(format(value, ".12g"))
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def emit_report(report: AnalysisReport | dict) -> str:
    """Canonical JSON: sorted keys, "p/q" rationals, 12 significant digit floats."""
    data = report.to_dict() if isinstance(report, AnalysisReport) else report
    return json.dumps(_jsonify(data), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactiso",
        description="Analyze contact sub-pseudo-Riemannian structures given by polynomial frames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="run the full analysis pipeline on a structure-spec file")
    p_an.add_argument("spec", help="path to the structure-spec JSON file")
    p_an.add_argument("--points", help="JSON file with explicit sample points")
    p_an.add_argument("--tol", type=float, help="eigenvalue clustering tolerance (default 1e-9)")
    p_an.add_argument("--seed", type=int, default=0, help="seed for the default sample points")
    p_an.add_argument("--out", help="write the report here instead of stdout")

    p_mod = sub.add_parser("model", help="emit a built-in model as a structure-spec file")
    p_mod.add_argument("kind", choices=["heisenberg"])
    p_mod.add_argument("--n", type=int, required=True)
    p_mod.add_argument("--freq", required=True, help="comma-separated plane weights, e.g. 2,1/2")
    p_mod.add_argument(
        "--signature",
        required=True,
        help="2n comma-separated signs, paired per plane: p1,r1,p2,r2,...",
    )
    p_mod.add_argument("--emit", help="output path (default: stdout)")

    p_pr = sub.add_parser("prolongation", help="first prolongation of the symbol at a base point")
    p_pr.add_argument("spec")
    p_pr.add_argument("--seed", type=int, default=0)
    p_pr.add_argument("--out")

    p_b = sub.add_parser("bounds", help="dimension bound from dim M, rk H and the metric index")
    p_b.add_argument("--dim-m", type=int, required=True)
    p_b.add_argument("--rk-h", type=int, required=True)
    p_b.add_argument("--index", type=int, required=True)
    return parser


def _write(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    with open(args.spec, encoding="utf-8") as fh:
        spec = parse_structure_file(fh.read())
    tol = args.tol if args.tol is not None else (spec.tolerance or DEFAULT_TOL)
    if args.points:
        with open(args.points, encoding="utf-8") as fh:
            raw = json.load(fh)
        points = [
            tuple(_parse_rational(x, f"points[{k}][{i}]") for i, x in enumerate(pt))
            for k, pt in enumerate(raw)
        ]
    elif spec.sample_points is not None:
        points = list(spec.sample_points)
    else:
        points = default_sample_points(spec.structure.dim, seed=args.seed)
    report = analyze(spec.structure, points, tol=tol, seed=args.seed)
    _write(emit_report(report), args.out)
    return report.exit_code()


def _cmd_model(args) -> int:
    try:
        freqs = [Fraction(part) for part in args.freq.split(",") if part]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad --freq value: {exc}") from None
    signs = [_parse_sign(s.strip(), "--signature") for s in args.signature.split(",") if s.strip()]
    if len(signs) != 2 * args.n:
        raise ValidationError(f"--signature needs {2 * args.n} entries")
    pairs = tuple((signs[2 * i], signs[2 * i + 1]) for i in range(args.n))
    spec = HeisenbergSpec(args.n, tuple(freqs), pairs)
    fs = build_model(spec)
    text = json.dumps(_jsonify(structure_to_spec_dict(fs)), sort_keys=True, indent=2) + "\n"
    _write(text, args.emit)
    return 0


def _cmd_prolongation(args) -> int:
    with open(args.spec, encoding="utf-8") as fh:
        spec = parse_structure_file(fh.read())
    if spec.sample_points:
        base = spec.sample_points[0]
    else:
        base = default_sample_points(spec.structure.dim, seed=args.seed)[0]
    data = canonical_contact_data(spec.structure, base)
    sym = build_symbol(data.form_pair())
    result = first_prolongation(sym)
    payload = {
        "base_point": [str(x) for x in base],
        "g0_dimension": sym.g0.dimension,
        "symbol_dimension": sym.total_dimension,
        "g1_dimension": result.g1_dimension,
        "prolongation_trivial": result.trivial,
    }
    _write(json.dumps(_jsonify(payload), sort_keys=True, indent=2) + "\n", args.out)
    return 0


def _cmd_bounds(args) -> int:
    dim_m, rk_h, index = args.dim_m, args.rk_h, args.index
    if rk_h < 2 or rk_h % 2:
        raise ValidationError("--rk-h must be a positive even integer")
    if dim_m != rk_h + 1:
        raise ValidationError("--dim-m must equal rk H + 1 for a contact distribution")
    if not 0 <= index <= rk_h:
        raise ValidationError("--index must lie between 0 and rk H")
    n = rk_h // 2
    if index % 2 == 0 or index == n:
        bound = dim_m + n * n
        t_star = 0 if index % 2 == 0 else index
    else:
        bound = dim_m + (n - 1) ** 2 + 1
        t_star = 1
    payload = {
        "dim_m": dim_m,
        "rk_h": rk_h,
        "index": index,
        "thm1_bound": bound,
        "attaining_t": t_star,
    }
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "model": _cmd_model,
        "prolongation": _cmd_prolongation,
        "bounds": _cmd_bounds,
    }
    try:
        return handlers[args.command](args)
    except (StructureParseError, ValidationError, BadSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotContactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UnsupportedPencilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except NumericAmbiguityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ContactIsoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Commands: check, classify, symmetries, orbit, levi, type, report.  Domain
inputs are file paths (see the grammar in domains.parse_spec),
builtin gallery names, or, for report, a directory of .spec files (batch
mode).  All randomness is seeded: identical command + seed gives
byte-identical JSON/CSV output.  Reports are written atomically.

Exit codes: 0 success (check passed / classification Ball or Model),
1 parse or runtime error, 2 check violation or unresolved, 3 NotModel,
4 classification Unknown.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from fractions import Fraction
from pathlib import Path

from .automorphisms import (
    InfiniteTypeAutomorphism,
    accumulation_set,
    moebius_family,
    orbit,
)
from .boundary_analysis import levi_form, type_probe
from .classification import canonical_form, classify, verify_slice_form
from .domains import (
    DomainError,
    DomainSpec,
    boundary_regularity_sample,
    boundedness_certificate,
    parse_spec,
    sample_boundary,
)
from .gallery import GALLERY, infinite_type_domain
from .log_geometry import (
    enumerate_algebraic_symmetries,
    hyperplane_incidence,
    log_image_sample,
)
from .polynomials import SpecSyntaxError
from .reporting import SCHEMA_VERSION, dumps, write_json_atomic, write_text_atomic

__all__ = ["main"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2
EXIT_NOT_MODEL = 3
EXIT_UNKNOWN = 4


# ---------------------------------------------------------------------------
# Input handling
# ---------------------------------------------------------------------------


def _load_spec(target: str) -> DomainSpec:
    path = Path(target)
    if path.is_file():
        return parse_spec(path.read_text(encoding="utf-8"), default_name=path.stem)
    if target in GALLERY:
        return GALLERY[target]()
    raise FileNotFoundError(
        f"no spec file or builtin named {target!r} "
        f"(builtins: {', '.join(sorted(GALLERY))})"
    )


def _parse_complex_point(text: str, n: int) -> list[complex]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ValueError(f"point has {len(parts)} coordinates, expected {n}")
    return [complex(p.replace(" ", "")) for p in parts]


def _parse_exact_point(text: str, n: int) -> list:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ValueError(f"point has {len(parts)} coordinates, expected {n}")
    out: list = []
    for p in parts:
        try:
            out.append(Fraction(p))
        except ValueError:
            out.append(complex(p.replace(" ", "")))
    return out


def _resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("REINHARDT_LAB_SEED")
    return int(env) if env else 0


def _geometric_schedule(count: int) -> list[float]:
    return [-1.0 + 2.0**-i for i in range(1, count + 1)]


def _spec_header(spec: DomainSpec) -> dict:
    return {
        "name": spec.name,
        "n": spec.n,
        "Q": str(spec.Q),
        "blocks": spec.blocks,
    }


def _is_channel_fixture(spec: DomainSpec) -> bool:
    fixture = infinite_type_domain()
    return spec.n == fixture.n and spec.Q == fixture.Q


# ---------------------------------------------------------------------------
# Commands: each returns (exit_code, payload, text_artifact)
# ---------------------------------------------------------------------------


def cmd_check(spec: DomainSpec, args) -> tuple[int, dict, None]:
    bounded = boundedness_certificate(spec, seed=args.seed)
    payload: dict = {
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "spec": _spec_header(spec),
        "boundedness": bounded,
    }
    if bounded.kind == "bounded_certified":
        regularity = boundary_regularity_sample(spec, samples=args.samples, seed=args.seed)
        payload["regularity"] = regularity
        status = "ok" if not regularity.failures else "violation"
    elif bounded.kind == "unbounded_witness":
        status = "violation"
    else:
        status = "unresolved"
    payload["status"] = status
    return (EXIT_OK if status == "ok" else EXIT_VIOLATION), payload, None


def _classification_payload(spec: DomainSpec, args) -> tuple[int, dict]:
    verdict = classify(spec, assume_bounded=args.assume_bounded, seed=args.seed)
    payload: dict = {
        "verdict": verdict.kind,
        "reason": verdict.reason,
        "diagnostics": list(verdict.diagnostics),
    }
    if verdict.kind == "model":
        model = verdict.model
        assert model is not None
        payload["model"] = {
            "blocks": model.blocks,
            "m": list(model.exponents),
            "r": list(model.pure_coefficients),
            "cross": dict(model.cross_terms),
            "first_block_scale": model.first_block_scale,
        }
        payload["slice_checks"] = {
            str(j): verify_slice_form(spec, model, j)
            for j in range(1, model.blocks.p)
        }
    if verdict.kind in ("ball", "model"):
        canonical = canonical_form(spec, verdict)
        payload["canonical"] = {
            "kind": canonical.kind,
            "block_sizes": list(canonical.block_sizes),
            "m": list(canonical.exponents),
            "cross": dict(canonical.cross_terms),
            "witness_permutation": [i + 1 for i in canonical.witness_permutation],
            "witness_scalars": list(canonical.witness_scalars),
            "canonical_Q": str(canonical.spec.Q) if canonical.spec else None,
        }
        code = EXIT_OK
    elif verdict.kind == "not_model":
        code = EXIT_NOT_MODEL
    else:
        code = EXIT_UNKNOWN
    return code, payload


def cmd_classify(spec: DomainSpec, args) -> tuple[int, dict, None]:
    code, body = _classification_payload(spec, args)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "spec": _spec_header(spec),
        **body,
    }
    return code, payload, None


def cmd_symmetries(spec: DomainSpec, args) -> tuple[int, dict, None]:
    search = enumerate_algebraic_symmetries(
        spec,
        entry_bound=args.entry_bound,
        seed=args.seed,
        assume_bounded=args.assume_bounded,
    )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "symmetries",
        "spec": _spec_header(spec),
        "count": len(search.maps),
        "maps": list(search.maps),
        "warnings": list(search.warnings),
        "candidates_tested": search.candidates_tested,
        "incidence": search.incidence,
        "note": "maps listed modulo torus rotations",
    }
    return EXIT_OK, payload, None


def _orbit_maps(spec: DomainSpec, schedule):
    if _is_channel_fixture(spec):
        return [InfiniteTypeAutomorphism(a) for a in schedule]
    return moebius_family(spec, schedule)


def _orbit_csv(report) -> str:
    n = len(report.points[0]) if report.points else 0
    cols = ["i", "a_i"]
    for k in range(1, n + 1):
        cols += [f"re_z{k}", f"im_z{k}"]
    cols.append("boundary_distance")
    lines = [",".join(cols)]
    for i, (a, pt, dist) in enumerate(
        zip(report.parameters, report.points, report.boundary_distances), start=1
    ):
        row = [str(i), repr(a)]
        for c in pt:
            row += [repr(c.real), repr(c.imag)]
        row.append(repr(dist))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def cmd_orbit(spec: DomainSpec, args) -> tuple[int, dict, str]:
    schedule = _geometric_schedule(args.count)
    maps = _orbit_maps(spec, schedule)
    point = (
        _parse_complex_point(args.point, spec.n)
        if args.point
        else [0j] * spec.n
    )
    report = orbit(spec, maps, point, band=args.band)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "orbit",
        "spec": _spec_header(spec),
        "schedule": "a_i = -1 + 2^-i",
        "orbit": report,
    }
    return EXIT_OK, payload, _orbit_csv(report)


def cmd_levi(spec: DomainSpec, args) -> tuple[int, dict, None]:
    if not args.point:
        raise ValueError("levi requires --point re+imj,re+imj,...")
    point = _parse_complex_point(args.point, spec.n)
    report = levi_form(spec, point, band=max(args.band, 1e-8))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "levi",
        "spec": _spec_header(spec),
        "levi": report,
    }
    return EXIT_OK, payload, None


def cmd_type(spec: DomainSpec, args) -> tuple[int, dict, None]:
    if not args.point:
        raise ValueError("type requires --point with exact rational coordinates")
    point = _parse_exact_point(args.point, spec.n)
    report = type_probe(
        spec, point, degree=args.degree_bound, seed=args.seed
    )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "type",
        "spec": _spec_header(spec),
        "degree_bound": args.degree_bound,
        "probe": report,
    }
    return EXIT_OK, payload, None


# ---------------------------------------------------------------------------
# Report (single spec and batch)
# ---------------------------------------------------------------------------


def _guard(section: dict, key: str, fn) -> object | None:
    try:
        value = fn()
    except (DomainError, SpecSyntaxError, ValueError, FloatingPointError) as err:
        section[key] = {"error": str(err)}
        return None
    section[key] = value
    return value


def _build_report(spec: DomainSpec, seed: int, args) -> tuple[dict, dict]:
    """Returns (sections, objects-for-figures)."""
    sections: dict = {"spec": _spec_header(spec)}
    figure_objects: dict = {}

    bounded = _guard(sections, "boundedness", lambda: boundedness_certificate(spec, seed=seed))
    certified = bounded is not None and bounded.kind == "bounded_certified"
    if certified:
        _guard(
            sections,
            "regularity",
            lambda: boundary_regularity_sample(spec, samples=args.samples, seed=seed),
        )

    def classification():
        ns = argparse.Namespace(
            assume_bounded=args.assume_bounded, seed=seed
        )
        code, body = _classification_payload(spec, ns)
        body["exit_code"] = code
        return body

    cls = _guard(sections, "classification", classification)

    _guard(sections, "incidence", lambda: hyperplane_incidence(spec, seed=seed))
    if certified or args.assume_bounded:
        _guard(
            sections,
            "symmetries",
            lambda: {
                "maps": list(
                    enumerate_algebraic_symmetries(
                        spec,
                        entry_bound=args.entry_bound,
                        seed=seed,
                        assume_bounded=True,
                    ).maps
                )
            },
        )
    else:
        sections["symmetries"] = {
            "skipped": "boundedness not certified; rerun with --assume-bounded"
        }

    log_sample = _guard(
        sections,
        "log_image",
        lambda: log_image_sample(spec, count=max(256, args.samples), seed=seed),
    )
    if log_sample is not None:
        figure_objects["log_image"] = log_sample
        sections["log_image"] = {
            "accepted": log_sample.accepted,
            "attempted": log_sample.attempted,
            "rescale": list(log_sample.rescale),
        }

    orbit_wanted = _is_channel_fixture(spec) or (
        isinstance(cls, dict) and cls.get("verdict") in ("ball", "model")
    )
    if orbit_wanted:

        def run_orbit():
            schedule = _geometric_schedule(40)
            maps = _orbit_maps(spec, schedule)
            return orbit(spec, maps, [0j] * spec.n, band=args.band)

        orbit_report = _guard(sections, "orbit", run_orbit)
        if orbit_report is not None:
            figure_objects["orbit"] = orbit_report
        _guard(sections, "accumulation", lambda: accumulation_set(spec))

    if certified:

        def run_levi():
            pt = sample_boundary(spec, 1, seed=seed)[0]
            return levi_form(spec, pt, band=1e-6)

        levi_report = _guard(sections, "levi_sample", run_levi)
        if levi_report is not None:
            figure_objects["levi"] = levi_report

    return sections, figure_objects


def _render_artifacts(out_dir: Path, sections: dict, figure_objects: dict) -> dict:
    from . import figures

    written: dict = {}
    if "orbit" in figure_objects:
        csv_path = out_dir / "orbit.csv"
        write_text_atomic(csv_path, _orbit_csv(figure_objects["orbit"]))
        written["orbit_csv"] = csv_path.name
        written["orbit_png"] = figures.orbit_figure(
            figure_objects["orbit"], out_dir / "orbit.png"
        ).name
    if "levi" in figure_objects:
        written["levi_png"] = figures.levi_figure(
            figure_objects["levi"], out_dir / "levi.png"
        ).name
    if "log_image" in figure_objects:
        written["log_image_png"] = figures.log_image_figure(
            figure_objects["log_image"], out_dir / "log_image.png"
        ).name
    return written


def _entry_seed(global_seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{global_seed}:{name}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % (2**63)


def cmd_report(args) -> tuple[int, dict, None]:
    target = Path(args.spec)
    out_dir = Path(args.out) if args.out else None
    if target.is_dir():
        entries = {}
        spec_files = sorted(target.glob("*.spec"))
        if not spec_files:
            raise FileNotFoundError(f"no .spec files in directory {target}")
        for path in spec_files:
            spec = parse_spec(path.read_text(encoding="utf-8"), default_name=path.stem)
            name = spec.name or path.stem
            seed = _entry_seed(args.seed, name)
            sections, figure_objects = _build_report(spec, seed, args)
            sections["entry_seed"] = seed
            if out_dir is not None:
                entry_dir = out_dir / name
                entry_dir.mkdir(parents=True, exist_ok=True)
                sections["artifacts"] = _render_artifacts(
                    entry_dir, sections, figure_objects
                )
            entries[name] = sections
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "report",
            "batch": True,
            "seed": args.seed,
            "entries": entries,
        }
    else:
        spec = _load_spec(args.spec)
        sections, figure_objects = _build_report(spec, args.seed, args)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "report",
            "batch": False,
            "seed": args.seed,
            **sections,
        }
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            payload["artifacts"] = _render_artifacts(out_dir, sections, figure_objects)
    if out_dir is not None:
        write_json_atomic(out_dir / "report.json", payload)
    return EXIT_OK, payload, None


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", help="spec file, builtin name, or directory (report)")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (env REINHARDT_LAB_SEED)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--entry-bound", dest="entry_bound", type=int, default=2)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=2)
    p.add_argument("--band", type=float, default=1e-9)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--assume-bounded", dest="assume_bounded", action="store_true")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reinhardt-lab",
        description="Exact and numeric analysis of Reinhardt domains {Q(|z|^2) < 1}",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("check", "boundedness certificate and boundary regularity probe"),
        ("classify", "Ball / Model / NotModel / Unknown against the normal form"),
        ("symmetries", "enumerate monomial symmetries modulo torus"),
        ("orbit", "orbit of a point under the non-compact family (CSV)"),
        ("levi", "Levi form at a boundary point (needs --point)"),
        ("type", "contact-order probe at an exact boundary point (needs --point)"),
        ("report", "run everything; write JSON, CSV and figures to --out"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        if name in ("orbit", "levi", "type"):
            p.add_argument("--point", type=str, default=None)
        if name == "orbit":
            p.add_argument("--count", type=int, default=40)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.seed = _resolve_seed(args.seed)

    if args.samples <= 0 or args.entry_bound < 0 or args.degree_bound < 1:
        print("error: counts must be positive", file=sys.stderr)
        return EXIT_ERROR
    if not 0.0 < args.band <= 1e-3:
        print("error: --band must lie in (0, 1e-3]", file=sys.stderr)
        return EXIT_ERROR

    try:
        if args.command == "report":
            code, payload, text = cmd_report(args)
        else:
            spec = _load_spec(args.spec)
            handler = {
                "check": cmd_check,
                "classify": cmd_classify,
                "symmetries": cmd_symmetries,
                "orbit": cmd_orbit,
                "levi": cmd_levi,
                "type": cmd_type,
            }[args.command]
            code, payload, text = handler(spec, args)
    except (
        DomainError,
        SpecSyntaxError,
        ValueError,
        KeyError,
        OSError,
        ZeroDivisionError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR

    wants_csv = args.format == "csv" or (args.format is None and args.command == "orbit")
    if args.command == "report":
        if args.out is None:
            sys.stdout.write(dumps(payload))
    elif wants_csv and text is not None:
        if args.out:
            write_text_atomic(Path(args.out), text)
        else:
            sys.stdout.write(text)
    else:
        if args.out:
            write_json_atomic(Path(args.out), payload)
        else:
            sys.stdout.write(dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())

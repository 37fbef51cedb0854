"""Command-line front end: text/JSON input, JSON reports, exit codes.

Machine output is a single JSON object on stdout; a short human summary
goes to stderr.  Exit codes: 0 success, 1 verification failure, 2 input
error, 3 internal invariant breach.  Rationals cross the text boundary as
"num/den" strings in pi-units.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import chain_builder, degree_oracle, gale_plane, render
from .errors import (
    CoamoebaError,
    InputError,
    InternalInvariantError,
    ParseError,
    PointOnBoundary,
)
from .line_model import INFINITY, AffineLine, line_from_bconfig, line_from_forms

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


@dataclass
class InputDocument:
    """Either a planar configuration or an explicit form list."""

    bconfig: Optional[list[tuple[int, int]]] = None
    forms: Optional[list[tuple[int, int]]] = None
    pivot: Optional[int] = None
    normalize: bool = True


def parse_input(text: str) -> InputDocument:
    """Accept plain 'x y' lines with '#' comments, or a JSON object with
    exactly one of "b" / "forms" plus optional "pivot" and "normalize"."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
        if not isinstance(doc, dict):
            raise ParseError("top-level JSON value must be an object")
        has_b = "b" in doc
        has_forms = "forms" in doc
        if has_b == has_forms:
            raise ParseError('provide exactly one of "b" or "forms"')
        key = "b" if has_b else "forms"
        rows = doc[key]
        try:
            pairs = [(int(r[0]), int(r[1])) for r in rows]
        except (TypeError, ValueError, IndexError):
            raise ParseError(f'"{key}" must be a list of integer pairs')
        pivot = doc.get("pivot")
        if pivot is not None and not isinstance(pivot, int):
            raise ParseError('"pivot" must be an integer')
        normalize = doc.get("normalize", True)
        if not isinstance(normalize, bool):
            raise ParseError('"normalize" must be a boolean')
        return InputDocument(
            bconfig=pairs if has_b else None,
            forms=None if has_b else pairs,
            pivot=pivot,
            normalize=normalize,
        )

    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        fields = body.split()
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
    if not pairs:
        raise ParseError("empty input")
    return InputDocument(bconfig=pairs)


def _fraction_str(value) -> str:
    if value == INFINITY:
        return "inf"
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def parse_theta(text: str) -> degree_oracle.TorusPoint2:
    try:
        sx, sy = text.split(",")
        return degree_oracle.TorusPoint2.make(Fraction(sx.strip()), Fraction(sy.strip()))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--theta wants 'a/b,c/d' in pi-units, got {text!r}")


def _build(doc: InputDocument):
    """(line, config-or-None) from an input document."""
    if doc.forms is not None:
        return line_from_forms(doc.forms, normalize=doc.normalize), None
    config = gale_plane.validate_bconfig(doc.bconfig)
    pivot = doc.pivot if doc.pivot is not None else len(doc.bconfig)
    line = line_from_bconfig(config, pivot=pivot, normalize=doc.normalize)
    return line, config


def _line_payload(line: AffineLine) -> dict:
    return {
        "n": line.n,
        "m": line.m,
        "forms": [[f.alpha, f.beta] for f in line.forms],
        "perm": list(line.perm),
        "signs": list(line.signs),
        "blocks": [
            {"m": b.m, "m_next": b.m_next, "n": b.n, "zeta": _fraction_str(b.zeta)}
            for b in line.blocks
        ],
    }


def _chains_payload(line: AffineLine) -> dict:
    skel = chain_builder.coamoeba_vertices(line)
    path = chain_builder.zonotope_path(line)
    chain = chain_builder.zonotope_chain(path)
    return {
        "line": _line_payload(line),
        "coamoeba_vertices": [list(v) for v in skel.vertices],
        "f": [list(v) for v in skel.f],
        "g": [list(v) for v in skel.g],
        "h": [list(v) for v in skel.h],
        "ptilde": [list(v) for v in path.ptilde],
        "pprime": [list(v) for v in path.pprime],
        "path": [
            {"j": p.index, "primed": p.primed, "coords": list(p.coords)}
            for p in path.points
        ],
        "triangles": [
            {"a": list(t.a), "b": list(t.b), "c": list(t.c), "coeff": t.coeff}
            for t in chain.triangles
        ],
    }


def _class_payload(line: AffineLine, config) -> dict:
    cls = chain_builder.homology_class(line)
    out = {"class": [[i, j, c] for (i, j), c in cls.pairs()]}
    if config is not None:
        aligned = gale_plane.aligned_vectors(line, config)
        out["pushed"] = gale_plane.push_class(cls, aligned)
    return out


def _verify_payload(line: AffineLine, config, trials: int, seed: int) -> dict:
    checks = []

    report = chain_builder.verify_cycle(line)
    checks.append({
        "name": "cycle_boundary_empty",
        "ok": report.ok,
        "residual_edges": len(report.residual),
    })

    path = chain_builder.zonotope_path(line)
    half = path.half
    antipodal = path.ptilde[half] == tuple(-x for x in path.ptilde[0])
    checks.append({"name": "antipodal_lift", "ok": antipodal})

    cls = chain_builder.homology_class(line)
    oracle_ok = True
    mism = []
    for i in range(1, line.n + 1):
        for j in range(i + 1, line.n + 1):
            got = degree_oracle.class_oracle_2d(line, i, j)
            want = cls.coeff.get((i, j), 0)
            if got != want:
                oracle_ok = False
                mism.append([i, j, got, want])
    checks.append({"name": "class_oracle_2d", "ok": oracle_ok, "mismatches": mism})

    if config is not None:
        invariant = gale_plane.d_b(config)
        aligned = gale_plane.aligned_vectors(line, config)
        pushed = gale_plane.push_class(cls, aligned)
        checks.append({
            "name": "pushed_class_equals_chamber_invariant",
            "ok": pushed == invariant,
            "pushed": pushed,
            "d_b": invariant,
        })

        rng = random.Random(seed)
        degrees = set()
        for _ in range(trials):
            _, val = degree_oracle.random_generic_theta(
                rng, lambda t: degree_oracle.cycle_degree(line, config, t))
            degrees.add(val)
        checks.append({
            "name": "cycle_degree_constant_equals_d_b",
            "ok": degrees == {invariant},
            "degrees_seen": sorted(degrees),
            "trials": trials,
        })

        vertices = set(gale_plane.zonotope_b(config).vertices)
        brute = gale_plane.minkowski_vertices_bruteforce(config)
        checks.append({"name": "zonotope_matches_minkowski_sum", "ok": vertices == brute})

        try:
            dual = gale_plane.gale_dual(config)
            volume = gale_plane.normalized_volume(dual)
            checks.append({
                "name": "gale_dual_volume_equals_d_b",
                "ok": volume == invariant,
                "volume": volume,
            })
        except InputError as e:
            checks.append({
                "name": "gale_dual_volume_equals_d_b",
                "ok": True,
                "skipped": str(e),
            })

    return {"ok": all(c["ok"] for c in checks), "checks": checks}


def run(args: argparse.Namespace) -> tuple[int, dict, str]:
    """Dispatch one subcommand; returns (exit_code, json_payload, summary)."""
    doc = parse_input(args.input_text)
    if args.pivot is not None:
        doc.pivot = args.pivot
    if args.no_normalize:
        doc.normalize = False

    cmd = args.command
    if cmd == "validate":
        line, config = _build(doc)
        payload = {"valid": True, "n": line.n, "m": line.m,
                   "source": "b" if config is not None else "forms"}
        return EXIT_OK, payload, f"valid line with N={line.n}, M={line.m}"

    if cmd == "chains":
        line, _ = _build(doc)
        payload = _chains_payload(line)
        return EXIT_OK, payload, f"chains for N={line.n}, M={line.m}"

    if cmd == "class":
        line, config = _build(doc)
        payload = _class_payload(line, config)
        summary = f"class has {len(payload['class'])} terms"
        if "pushed" in payload:
            summary += f", pushes to {payload['pushed']}"
        return EXIT_OK, payload, summary

    if cmd == "db":
        _, config = _build(doc)
        if config is None:
            raise InputError("db needs a configuration input, not bare forms")
        rays = [v for v in config.vectors] + [(-x, -y) for x, y in config.vectors]
        chambers = [
            {"v": list(rep), "value": gale_plane.d_b_chamber(config, rep)}
            for rep in gale_plane.chamber_representatives(rays)
        ]
        value = gale_plane.d_b(config)
        return EXIT_OK, {"d_b": value, "chambers": chambers}, f"d_B = {value}"

    if cmd == "dual":
        _, config = _build(doc)
        if config is None:
            raise InputError("dual needs a configuration input, not bare forms")
        dual = gale_plane.gale_dual(config)
        volume = gale_plane.normalized_volume(dual)
        payload = {"points": [list(p) for p in dual.points],
                   "dim": dual.dim, "normalized_volume": volume}
        return EXIT_OK, payload, f"dual volume {volume}"

    if cmd == "degree":
        line, config = _build(doc)
        if config is None:
            raise InputError("degree needs a configuration input, not bare forms")
        theta = parse_theta(args.theta)
        push = gale_plane.pushforward_for(line, config)
        upper, lower = degree_oracle.boundary_polygons(line, push)
        coam = (degree_oracle.torus_degree_polygon(upper, theta)
                + degree_oracle.torus_degree_polygon(lower, theta))
        zono = degree_oracle.torus_degree_triangles(
            degree_oracle.pushed_zonotope_chain(line, push), theta)
        payload = {
            "theta": [_fraction_str(theta.x), _fraction_str(theta.y)],
            "coamoeba": coam,
            "zonotope": zono,
            "cycle_degree": coam + zono,
        }
        return EXIT_OK, payload, f"cycle degree {coam + zono}"

    if cmd == "verify":
        line, config = _build(doc)
        payload = _verify_payload(line, config, args.trials, args.seed)
        code = EXIT_OK if payload["ok"] else EXIT_VERIFY_FAILED
        failed = [c["name"] for c in payload["checks"] if not c["ok"]]
        summary = "all checks passed" if payload["ok"] else f"FAILED: {', '.join(failed)}"
        return code, payload, summary

    if cmd == "render":
        line, config = _build(doc)
        if config is None:
            raise InputError("render needs a configuration input, not bare forms")
        opts = render.RenderOptions(resolution=args.resolution, palette=args.palette,
                                    labels=not args.no_labels)
        svg = render.render_torus(line, config, opts)
        with open(args.out, "w") as fh:
            fh.write(svg)
        return EXIT_OK, {"out": args.out, "bytes": len(svg)}, f"wrote {args.out}"

    if cmd == "cover":
        line, config = _build(doc)
        path = chain_builder.zonotope_path(line)
        if config is not None:
            data = gale_plane.pushforward_path(
                path, gale_plane.pushforward_for(line, config))
        else:
            data = path  # requires a planar line
        opts = render.RenderOptions(resolution=args.resolution, palette=args.palette,
                                    labels=not args.no_labels)
        svg = render.render_cover(data, opts)
        with open(args.out, "w") as fh:
            fh.write(svg)
        return EXIT_OK, {"out": args.out, "bytes": len(svg)}, f"wrote {args.out}"

    if cmd == "sample":
        line, config = _build(doc)
        if config is None:
            raise InputError("sample needs a configuration input, not bare forms")
        report = degree_oracle.sample_coamoeba(line, config, args.count, args.seed)
        payload = {
            "count": args.count,
            "seed": args.seed,
            "eligible": report.eligible,
            "skipped": report.skipped,
            "violations": [
                {"index": i, "point": [p[0], p[1]], "multiplicity": m}
                for i, p, m in report.violations
            ],
            "ok": report.ok,
            "points": [[p[0], p[1]] for p in report.points],
        }
        code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
        return code, payload, (
            f"{report.eligible} eligible, {report.skipped} skipped, "
            f"{len(report.violations)} violations"
        )

    raise InputError(f"unknown subcommand {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coamoeba",
        description="Coamoeba and zonotope chains of real lines, with exact "
                    "torus covering-degree verification.",
    )
    parser.add_argument("command", choices=[
        "validate", "chains", "class", "db", "dual", "degree", "verify",
        "render", "cover", "sample",
    ])
    parser.add_argument("--input", help="input file (default: stdin)")
    parser.add_argument("--pivot", type=int, help="1-based pivot vector (default: last)")
    parser.add_argument("--no-normalize", action="store_true",
                        help="keep the supplied block ordering")
    parser.add_argument("--theta", default="1/7,2/7",
                        help="query point 'a/b,c/d' in pi-units (degree)")
    parser.add_argument("--trials", type=int, default=25,
                        help="random degree probes in verify")
    parser.add_argument("--count", type=int, default=1000, help="sample count")
    parser.add_argument("--seed", type=int, default=0, help="random seed")
    parser.add_argument("--out", default="out.svg", help="output SVG path")
    parser.add_argument("--resolution", type=int, default=256, help="render grid size")
    parser.add_argument("--palette", default="amber", help="render palette")
    parser.add_argument("--no-labels", action="store_true", help="omit labels")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.input:
        with open(args.input) as fh:
            args.input_text = fh.read()
    else:
        args.input_text = sys.stdin.read()

    try:
        code, payload, summary = run(args)
    except InternalInvariantError as e:
        print(json.dumps({"error": str(e), "kind": "internal"}))
        print(f"internal invariant breach: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, CoamoebaError) as e:
        print(json.dumps({"error": str(e), "kind": type(e).__name__}))
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT

    print(json.dumps(payload))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

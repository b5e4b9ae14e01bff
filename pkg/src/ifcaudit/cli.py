"""Command-line entry point: parse, census, diff, georef, generate, check,
report.

Exit codes: 0 success, 1 for assertion-style findings (a diff that was
expected to be empty, a manifest mismatch), 2 for usage and I/O errors.
Results go to stdout or --out; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .benchkit import (
    consistency,
    read_answers_csv,
    read_answers_jsonl,
    report_as_json,
    roundtrip_report,
    synthesis_csv,
    synthesis_markdown,
    synthesis_matrix,
    visibility_ratio,
)
from .benchkit.answers import Category
from .census import census, diff, diff_csv, diff_markdown
from .errors import IfcAuditError, MalformedFile, NoAnswers, TooFewRespondents
from .geomcheck import (
    check_validity,
    context_precision,
    evaluate_item,
    item_fragment,
    suite_proxies,
)
from .geomgen import (
    DEFAULT_PRECISION,
    DEFAULT_SPACING,
    generate_geometry_suite,
)
from .georef import detect_georef, report_as_dict
from .schema import SchemaVersion
from .spf import load, save

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(path: str, eager: bool = False):
    try:
        return load(path, eager=eager)
    except FileNotFoundError:
        raise SystemExit_(f"no such file: {path}")
    except MalformedFile as exc:
        raise SystemExit_(f"{path}: {exc}")


class SystemExit_(Exception):
    """Usage or I/O failure mapped to exit code 2."""


def cmd_parse(args) -> int:
    graph = _load(args.file, eager=True)
    summary = {
        "schema": graph.schema_name(),
        "instances": len(graph),
        "byte_size": graph.byte_size,
        "diagnostics": [str(d) for d in graph.diagnostics],
        "header": {
            "description": graph.header.description,
            "file_name": graph.header.file_name.name,
            "timestamp": graph.header.file_name.timestamp,
        },
    }
    for d in graph.diagnostics:
        print(str(d), file=sys.stderr)
    _emit(_json_dump(summary), args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    graph = _load(args.file)
    c = census(graph)
    if args.format == "csv":
        lines = ["type,count"]
        lines += [f"{t},{n}" for t, n in sorted(c.counts.items())]
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "markdown":
        lines = ["| Type | Count |", "| --- | ---: |"]
        lines += [f"| {t} | {n} |" for t, n in sorted(c.counts.items())]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(
            _json_dump(
                {
                    "schema": c.schema.value if c.schema else None,
                    "total": c.total,
                    "byte_size": c.byte_size,
                    "counts": dict(sorted(c.counts.items())),
                }
            ),
            args.out,
        )
    return EXIT_OK


def cmd_diff(args) -> int:
    ref = census(_load(args.reference))
    exp = census(_load(args.exported))
    d = diff(ref, exp)
    for message in d.diagnostics:
        print(message, file=sys.stderr)
    if args.format == "csv":
        _emit(diff_csv(ref, exp, d), args.out)
    elif args.format == "markdown":
        _emit(diff_markdown(ref, exp, d), args.out)
    else:
        _emit(
            _json_dump(
                {
                    "deltas": dict(sorted(d.deltas.items())),
                    "lost_types": sorted(d.lost_types),
                    "gained_types": sorted(d.gained_types),
                    "grouped_deltas": {
                        g.value: n
                        for g, n in sorted(
                            d.grouped_deltas.items(), key=lambda kv: kv[0].value
                        )
                    },
                    "size_delta_bytes": d.size_delta_bytes,
                }
            ),
            args.out,
        )
    if args.expect_unchanged and not d.empty:
        print("census differs but --expect-unchanged was given", file=sys.stderr)
        return EXIT_FINDINGS
    return EXIT_OK


def cmd_georef(args) -> int:
    graph = _load(args.file, eager=True)
    report = detect_georef(graph)
    _emit(_json_dump(report_as_dict(report)), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    schema = SchemaVersion.IFC2X3 if args.schema == "ifc2x3" else SchemaVersion.IFC4
    graph, manifest = generate_geometry_suite(
        schema,
        spacing=args.spacing,
        precision=args.precision,
        include_below_precision_item=args.extra_below_precision,
    )
    save(graph, args.out)
    if args.manifest:
        Path(args.manifest).write_text(
            _json_dump(manifest.to_dict()), encoding="utf-8"
        )
    print(
        f"wrote {args.out}: {len(manifest.items)} items, {len(graph)} instances",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_check(args) -> int:
    graph = _load(args.file, eager=True)
    manifest = None
    if args.manifest:
        manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
    precision = args.precision
    if precision is None:
        if manifest:
            precision = manifest["precision"]
        else:
            precision = context_precision(graph) or DEFAULT_PRECISION
    expected = {}
    if manifest:
        for entry in manifest["items"]:
            expected[entry["slot"]] = entry["expected_validity"]

    results = []
    mismatches = 0
    for proxy in suite_proxies(graph):
        slot = proxy.attr(3).value if hasattr(proxy.attr(3), "value") else ""
        name = proxy.attr(2).value if hasattr(proxy.attr(2), "value") else ""
        fragment = item_fragment(graph, proxy)
        verdict = check_validity(graph, fragment, precision)
        outcome = evaluate_item(graph, proxy, segments=args.segments, precision=precision)
        entry = {
            "slot": slot,
            "definition": name,
            "validity": verdict.status,
            "reasons": sorted(r.value for r in verdict.reasons),
            "validity_warnings": sorted(w.value for w in verdict.warnings),
            "displayed": outcome.displayed,
            "z_relation": outcome.z_relation.value if outcome.z_relation else None,
            "shape_class": outcome.shape_class,
            "smooth_curves": outcome.smooth_curves,
            "volume": outcome.mesh.volume if outcome.mesh else None,
            "area": outcome.mesh.surface_area if outcome.mesh else None,
            "centroid": list(map(float, outcome.mesh.centroid)) if outcome.mesh else None,
            "warnings": outcome.warnings,
        }
        if slot in expected:
            want = expected[slot]
            agrees = want["valid"] == verdict.valid and set(want["reasons"]) == {
                r.value for r in verdict.reasons
            }
            entry["matches_manifest"] = agrees
            if not agrees:
                mismatches += 1
        results.append(entry)
        if args.mesh_dump and outcome.mesh is not None:
            dump_path = Path(args.mesh_dump) / f"{slot or name}.tris"
            dump_path.parent.mkdir(parents=True, exist_ok=True)
            dump_path.write_text(outcome.mesh.dump_ascii(), encoding="utf-8")

    _emit(_json_dump({"items": results}), args.out)
    if args.expect_match and mismatches:
        print(f"{mismatches} item(s) disagree with the manifest", file=sys.stderr)
        return EXIT_FINDINGS
    return EXIT_OK


def cmd_report_roundtrip(args) -> int:
    reference = _load(args.reference, eager=True)
    exported = _load(args.exported, eager=True)
    report = roundtrip_report(reference, exported)
    payload = report_as_json(report)
    if args.format == "markdown":
        ref_census = report.reference_census
        exp_census = report.export_census
        lines = [
            "# Round-trip report",
            "",
            f"- unchanged: **{report.unchanged}**",
            f"- size ratio: {report.size_ratio:.4f}",
            f"- family balances: {report.family_balances}",
            "",
            diff_markdown(ref_census, exp_census, report.diff),
        ]
        _emit("\n".join(lines), args.out)
    else:
        _emit(_json_dump(payload), args.out)
    if args.expect_unchanged and not report.unchanged:
        print("model changed across the round trip", file=sys.stderr)
        return EXIT_FINDINGS
    return EXIT_OK


def cmd_report_answers(args) -> int:
    path = Path(args.records)
    if not path.exists():
        raise SystemExit_(f"no such file: {args.records}")
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() in (".jsonl", ".ndjson"):
        records = read_answers_jsonl(text)
    else:
        records = read_answers_csv(text)

    matrix = synthesis_matrix(records)
    slots = sorted(
        {r.item_slot for r in records if r.category is Category.GEOMETRY_ITEM and r.item_slot}
    )
    visibility = {}
    consistency_scores = {}
    for slot in slots:
        try:
            visibility[slot] = visibility_ratio(records, slot)
        except NoAnswers:
            pass
        try:
            consistency_scores[slot] = consistency(records, slot)
        except (TooFewRespondents, NoAnswers):
            pass

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "synthesis.md").write_text(synthesis_markdown(matrix), encoding="utf-8")
    (out_dir / "scores.csv").write_text(synthesis_csv(matrix), encoding="utf-8")
    (out_dir / "metrics.json").write_text(
        _json_dump(
            {
                "visibility_ratio": visibility,
                "consistency": consistency_scores,
                "consistency_note": (
                    "low values can stem from the nature of the questions; no "
                    "normalization for the answer-space size is applied"
                ),
                "timing_distribution": {
                    dataset: {b.value: n for b, n in buckets.items()}
                    for dataset, buckets in matrix.timing_distribution.items()
                },
                "success_rates": matrix.success_rates,
                "diagnostics": matrix.diagnostics,
            }
        ),
        encoding="utf-8",
    )
    print(f"wrote synthesis to {out_dir}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ifcaudit",
        description="IFC/SPF interoperability audit toolkit",
    )
    parser.add_argument("--version", action="version", version=f"ifcaudit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a file and print a summary")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("census", help="count entities per type")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("diff", help="census diff between two files")
    p.add_argument("reference")
    p.add_argument("exported")
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--expect-unchanged", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("georef", help="detect georeferencing levels")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_georef)

    p = sub.add_parser("generate", help="generate the geometry conformance suite")
    p.add_argument("--schema", choices=["ifc2x3", "ifc4"], required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--spacing", type=float, default=DEFAULT_SPACING)
    p.add_argument("--precision", type=float, default=DEFAULT_PRECISION)
    p.add_argument("--manifest")
    p.add_argument(
        "--extra-below-precision",
        action="store_true",
        help="append the optional below-precision-depth item",
    )
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="validity and geometry evaluation per item")
    p.add_argument("file")
    p.add_argument("--manifest")
    p.add_argument("--segments", type=int, default=64)
    p.add_argument("--precision", type=float, default=None)
    p.add_argument("--expect-match", action="store_true",
                   help="exit 1 when verdicts disagree with the manifest")
    p.add_argument("--mesh-dump", help="directory for ASCII triangle dumps")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", help="aggregated reports")
    report_sub = p.add_subparsers(dest="report_command", required=True)

    rr = report_sub.add_parser("roundtrip", help="round-trip interoperability report")
    rr.add_argument("reference")
    rr.add_argument("exported")
    rr.add_argument("--format", choices=["json", "markdown"], default="json")
    rr.add_argument("--expect-unchanged", action="store_true")
    rr.add_argument("--out")
    rr.set_defaults(func=cmd_report_roundtrip)

    ra = report_sub.add_parser("answers", help="aggregate benchmark answers")
    ra.add_argument("records", help="CSV or JSON-lines answer records")
    ra.add_argument("--out", required=True, help="output directory")
    ra.set_defaults(func=cmd_report_answers)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit_ as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except IfcAuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

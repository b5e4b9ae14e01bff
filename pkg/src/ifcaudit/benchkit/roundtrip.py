"""Round-trip interoperability report: census diff, family balances and
georeferencing before/after for a reference model and its re-export."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..census import FAMILIES, Census, CensusDiff, census, diff, family_balance
from ..georef import LoGeoRefReport, detect_georef, report_as_dict
from ..spf.model import InstanceGraph

#: Size band treated as "unchanged"; growth or shrinkage beyond it is an
#: interoperability signal even when the census matches.
SIZE_RATIO_BAND = (0.98, 1.02)


@dataclass
class InteropReport:
    reference_census: Census
    export_census: Census
    diff: CensusDiff
    family_balances: dict[str, int]
    unchanged: bool
    georef_before: LoGeoRefReport
    georef_after: LoGeoRefReport
    size_ratio: float
    diagnostics: list[str] = field(default_factory=list)


def roundtrip_report(
    reference: InstanceGraph, exported: InstanceGraph
) -> InteropReport:
    ref_census = census(reference)
    exp_census = census(exported)
    d = diff(ref_census, exp_census)
    balances = {name: family_balance(d, family) for name, family in FAMILIES.items()}
    before = detect_georef(reference)
    after = detect_georef(exported)
    diagnostics = list(d.diagnostics)
    if set(before.levels) != set(after.levels):
        diagnostics.append(
            f"georeferencing changed: levels {before.levels} -> {after.levels}"
        )
    size_ratio = (
        exp_census.byte_size / ref_census.byte_size if ref_census.byte_size else 1.0
    )
    unchanged = d.empty and SIZE_RATIO_BAND[0] <= size_ratio <= SIZE_RATIO_BAND[1]
    return InteropReport(
        reference_census=ref_census,
        export_census=exp_census,
        diff=d,
        family_balances=balances,
        unchanged=unchanged,
        georef_before=before,
        georef_after=after,
        size_ratio=size_ratio,
        diagnostics=diagnostics,
    )


def report_as_json(report: InteropReport) -> dict[str, Any]:
    return {
        "unchanged": report.unchanged,
        "size_ratio": report.size_ratio,
        "total_reference": report.reference_census.total,
        "total_exported": report.export_census.total,
        "deltas": dict(sorted(report.diff.deltas.items())),
        "lost_types": sorted(report.diff.lost_types),
        "gained_types": sorted(report.diff.gained_types),
        "grouped_deltas": {
            g.value: d for g, d in sorted(
                report.diff.grouped_deltas.items(), key=lambda kv: kv[0].value
            )
        },
        "family_balances": report.family_balances,
        "georef_before": report_as_dict(report.georef_before),
        "georef_after": report_as_dict(report.georef_after),
        "diagnostics": report.diagnostics,
    }

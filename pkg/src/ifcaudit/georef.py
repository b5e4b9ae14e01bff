"""Detection of georeferencing levels (LoGeoRef10..50) and their payloads.

Level 10 is a postal address on the site or building, 20 the WGS84 latitude,
longitude and elevation on the site, 30 a non-zero site placement (an ad-hoc
convention, reported best-effort), 40 the world coordinate system or true
north of the geometric representation context, and 50 (IFC4 only) a map
conversion with a projected CRS.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

from .errors import BadLength, MixedSign
from .schema import SchemaVersion
from .spf.model import (
    UNSET,
    AttributeValue,
    EntityInstance,
    EnumToken,
    InstanceGraph,
    Integer,
    ListValue,
    Real,
    Reference,
    Text,
    TypedValue,
)

#: Location magnitude below which a placement counts as "at the origin".
ORIGIN_TOLERANCE = 1e-9


class LoGeoRefLevel(enum.IntEnum):
    L10 = 10
    L20 = 20
    L30 = 30
    L40 = 40
    L50 = 50


@dataclass(frozen=True)
class GeoParams:
    level: LoGeoRefLevel
    payload: dict[str, Any]


@dataclass
class LoGeoRefReport:
    detected: dict[LoGeoRefLevel, GeoParams] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def levels(self) -> list[int]:
        return sorted(p.level.value for p in self.detected.values())


def compound_angle_to_degrees(measure: list[int] | tuple[int, ...]) -> float:
    """Convert an IFC compound plane angle (degrees, minutes, seconds and
    optional millionth-seconds) to decimal degrees."""
    if len(measure) not in (3, 4):
        raise BadLength(f"compound angle needs 3 or 4 components, got {len(measure)}")
    sign = 0
    for component in measure:
        if component == 0:
            continue
        s = 1 if component > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            raise MixedSign(f"components disagree in sign: {measure}")
    if sign == 0:
        return 0.0
    parts = [abs(c) for c in measure] + [0] * (4 - len(measure))
    magnitude = parts[0] + parts[1] / 60.0 + parts[2] / 3600.0 + parts[3] / 3.6e9
    return sign * magnitude


def _numbers(value: AttributeValue) -> list[float] | None:
    if not isinstance(value, ListValue):
        return None
    out = []
    for item in value.items:
        if isinstance(item, (Real, Integer)):
            out.append(float(item.value))
        elif isinstance(item, TypedValue) and isinstance(item.value, (Real, Integer)):
            out.append(float(item.value.value))
        else:
            return None
    return out


def _integers(value: AttributeValue) -> list[int] | None:
    if not isinstance(value, ListValue):
        return None
    out = []
    for item in value.items:
        if isinstance(item, Integer):
            out.append(item.value)
        else:
            return None
    return out


def _number(value: AttributeValue) -> float | None:
    if isinstance(value, (Real, Integer)):
        return float(value.value)
    if isinstance(value, TypedValue):
        return _number(value.value)
    return None


def _text(value: AttributeValue) -> str | None:
    return value.value if isinstance(value, Text) else None


def length_unit(graph: InstanceGraph) -> tuple[str, float]:
    """Name of the project length unit and its scale to meters."""
    prefixes = {
        "EXA": 1e18, "PETA": 1e15, "TERA": 1e12, "GIGA": 1e9, "MEGA": 1e6,
        "KILO": 1e3, "HECTO": 1e2, "DECA": 1e1, "DECI": 1e-1, "CENTI": 1e-2,
        "MILLI": 1e-3, "MICRO": 1e-6, "NANO": 1e-9, "PICO": 1e-12,
        "FEMTO": 1e-15, "ATTO": 1e-18,
    }
    for unit in graph.by_type("IFCSIUNIT"):
        unit_type = unit.attr(1)
        if isinstance(unit_type, EnumToken) and unit_type.name == "LENGTHUNIT":
            prefix = unit.attr(2)
            name = unit.attr(3)
            if isinstance(name, EnumToken) and name.name == "METRE":
                if isinstance(prefix, EnumToken):
                    scale = prefixes.get(prefix.name, 1.0)
                    return f"{prefix.name.lower()}metre", scale
                return "metre", 1.0
    return "unknown", 1.0


def _resolve_point(graph: InstanceGraph, value: AttributeValue) -> list[float] | None:
    if not isinstance(value, Reference):
        return None
    try:
        inst = graph.resolve(value.id)
    except KeyError:
        return None
    if inst.type_name != "IFCCARTESIANPOINT":
        return None
    return _numbers(inst.attr(0))


def _resolve_direction(graph: InstanceGraph, value: AttributeValue) -> list[float] | None:
    if not isinstance(value, Reference):
        return None
    try:
        inst = graph.resolve(value.id)
    except KeyError:
        return None
    if inst.type_name != "IFCDIRECTION":
        return None
    return _numbers(inst.attr(0))


def detect_georef(
    graph: InstanceGraph, schema: SchemaVersion | None = None
) -> LoGeoRefReport:
    """Inspect a parsed model for each georeferencing level; read-only."""
    report = LoGeoRefReport()
    if schema is None:
        schema = SchemaVersion.from_name(graph.schema_name())
    unit_name, unit_scale = length_unit(graph)

    sites = graph.by_type("IFCSITE")
    buildings = graph.by_type("IFCBUILDING")
    if not sites:
        report.diagnostics.append("no IfcSite instance present")

    _detect_l10(graph, sites, buildings, report)
    if sites:
        _detect_l20(graph, sites[0], unit_name, unit_scale, report)
        _detect_l30(graph, sites[0], unit_name, report)
    _detect_l40(graph, unit_name, report)
    _detect_l50(graph, schema, report)
    return report


def _detect_l10(
    graph: InstanceGraph,
    sites: list[EntityInstance],
    buildings: list[EntityInstance],
    report: LoGeoRefReport,
) -> None:
    hosts = [("site", s, 13) for s in sites] + [("building", b, 11) for b in buildings]
    for host_kind, host, address_index in hosts:
        ref = host.attr(address_index)
        if not isinstance(ref, Reference):
            continue
        try:
            address = graph.resolve(ref.id)
        except KeyError:
            report.diagnostics.append(f"{host_kind} address reference #{ref.id} dangling")
            continue
        if address.type_name != "IFCPOSTALADDRESS":
            continue
        fields = {
            "address_lines": [
                t.value
                for t in (
                    address.attr(4).items if isinstance(address.attr(4), ListValue) else ()
                )
                if isinstance(t, Text)
            ],
            "postal_box": _text(address.attr(5)),
            "town": _text(address.attr(6)),
            "region": _text(address.attr(7)),
            "postal_code": _text(address.attr(8)),
            "country": _text(address.attr(9)),
        }
        report.detected[LoGeoRefLevel.L10] = GeoParams(
            LoGeoRefLevel.L10,
            {"host": host_kind, **{k: v for k, v in fields.items() if v}},
        )
        return


def _detect_l20(
    graph: InstanceGraph,
    site: EntityInstance,
    unit_name: str,
    unit_scale: float,
    report: LoGeoRefReport,
) -> None:
    lat_attr, lon_attr, ele_attr = site.attr(9), site.attr(10), site.attr(11)
    lat_parts = _integers(lat_attr)
    lon_parts = _integers(lon_attr)
    if lat_parts is None or lon_parts is None:
        return
    try:
        lat = compound_angle_to_degrees(lat_parts)
        lon = compound_angle_to_degrees(lon_parts)
    except (MixedSign, BadLength) as exc:
        report.diagnostics.append(f"unusable RefLatitude/RefLongitude: {exc}")
        return
    if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
        report.diagnostics.append(
            f"latitude/longitude out of range after conversion: {lat}, {lon}"
        )
        return
    payload: dict[str, Any] = {"latitude": lat, "longitude": lon}
    elevation = _number(ele_attr)
    if elevation is not None:
        payload["elevation_m"] = elevation * unit_scale
        payload["elevation_unit"] = unit_name
    report.detected[LoGeoRefLevel.L20] = GeoParams(LoGeoRefLevel.L20, payload)


def _detect_l30(
    graph: InstanceGraph, site: EntityInstance, unit_name: str, report: LoGeoRefReport
) -> None:
    placement_ref = site.attr(5)
    if not isinstance(placement_ref, Reference):
        return
    try:
        placement = graph.resolve(placement_ref.id)
    except KeyError:
        report.diagnostics.append(f"site placement #{placement_ref.id} dangling")
        return
    if placement.type_name != "IFCLOCALPLACEMENT":
        return
    rel = placement.attr(1)
    if not isinstance(rel, Reference):
        return
    try:
        axis = graph.resolve(rel.id)
    except KeyError:
        return
    if axis.type_name != "IFCAXIS2PLACEMENT3D":
        return
    location = _resolve_point(graph, axis.attr(0))
    axis_dir = _resolve_direction(graph, axis.attr(1))
    ref_dir = _resolve_direction(graph, axis.attr(2))
    nonzero = location is not None and any(abs(c) > ORIGIN_TOLERANCE for c in location)
    if not nonzero and axis_dir is None and ref_dir is None:
        return
    payload: dict[str, Any] = {
        "reference_point": location,
        "unit": unit_name,
    }
    if axis_dir is not None:
        payload["axis"] = axis_dir
    if ref_dir is not None:
        payload["ref_direction"] = ref_dir
    report.detected[LoGeoRefLevel.L30] = GeoParams(LoGeoRefLevel.L30, payload)


def _detect_l40(graph: InstanceGraph, unit_name: str, report: LoGeoRefReport) -> None:
    for context in graph.by_type("IFCGEOMETRICREPRESENTATIONCONTEXT"):
        wcs = context.attr(4)
        true_north = context.attr(5)
        origin = None
        axes_set = False
        if isinstance(wcs, Reference):
            try:
                axis = graph.resolve(wcs.id)
            except KeyError:
                continue
            if axis.type_name == "IFCAXIS2PLACEMENT3D":
                origin = _resolve_point(graph, axis.attr(0))
                axes_set = axis.attr(1) is not UNSET or axis.attr(2) is not UNSET
        north = _resolve_direction(graph, true_north)
        origin_nonzero = origin is not None and any(
            abs(c) > ORIGIN_TOLERANCE for c in origin
        )
        if not origin_nonzero and not axes_set and north is None:
            continue
        payload: dict[str, Any] = {"origin": origin, "unit": unit_name}
        if north is not None:
            payload["true_north"] = north[:2]
        report.detected[LoGeoRefLevel.L40] = GeoParams(LoGeoRefLevel.L40, payload)
        return


def _detect_l50(
    graph: InstanceGraph, schema: SchemaVersion | None, report: LoGeoRefReport
) -> None:
    conversions = graph.by_type("IFCMAPCONVERSION")
    if not conversions:
        return
    if schema is not SchemaVersion.IFC4:
        report.diagnostics.append(
            "IfcMapConversion present but file schema is not IFC4; level 50 not reported"
        )
        return
    conversion = conversions[0]
    crs_name = None
    target = conversion.attr(1)
    if isinstance(target, Reference):
        try:
            crs = graph.resolve(target.id)
        except KeyError:
            crs = None
        if crs is not None and crs.type_name == "IFCPROJECTEDCRS":
            crs_name = _text(crs.attr(0))
    if crs_name is None:
        report.diagnostics.append("IfcMapConversion without IfcProjectedCRS target")
        return
    abscissa = _number(conversion.attr(5))
    ordinate = _number(conversion.attr(6))
    if abscissa is None and ordinate is None:
        rotation = (1.0, 0.0)
    else:
        rotation = (abscissa or 0.0, ordinate or 0.0)
        if math.hypot(*rotation) == 0.0:
            report.diagnostics.append(
                "XAxisAbscissa/XAxisOrdinate both zero; identity rotation assumed"
            )
            rotation = (1.0, 0.0)
    report.detected[LoGeoRefLevel.L50] = GeoParams(
        LoGeoRefLevel.L50,
        {
            "eastings": _number(conversion.attr(2)),
            "northings": _number(conversion.attr(3)),
            "orthogonal_height": _number(conversion.attr(4)),
            "rotation": rotation,
            "crs_name": crs_name,
        },
    )


def report_as_dict(report: LoGeoRefReport) -> dict[str, Any]:
    """JSON-friendly form of a report."""
    return {
        "levels": report.levels,
        "params": {
            str(p.level.value): p.payload for p in report.detected.values()
        },
        "diagnostics": list(report.diagnostics),
    }

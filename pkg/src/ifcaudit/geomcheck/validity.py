"""Schema-rule validity checks for the suite's shape recipes.

Three rule families are implemented: positive length measures (depth and
friends must be strictly positive), the extrusion-direction rule (the
direction must not lie in the profile plane) and the swept-disk parameter
range. A positive depth below the context precision is flagged as a warning,
not a violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..errors import UnsupportedShape
from ..geomgen.suite import InvalidReason
from ..spf.model import (
    AttributeValue,
    EntityInstance,
    InstanceGraph,
    Integer,
    ListValue,
    Real,
    Reference,
    TypedValue,
)

DIRECTION_DOT_TOLERANCE = 1e-12

SUPPORTED_ROOTS = {
    "IFCBOOLEANRESULT",
    "IFCBOOLEANCLIPPINGRESULT",
    "IFCSHELLBASEDSURFACEMODEL",
    "IFCFACETEDBREP",
    "IFCEXTRUDEDAREASOLID",
    "IFCREVOLVEDAREASOLID",
    "IFCSWEPTDISKSOLID",
}


@dataclass
class ValidityVerdict:
    valid: bool
    reasons: frozenset[InvalidReason]
    warnings: frozenset[InvalidReason] = frozenset()
    details: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "Valid" if self.valid else "Invalid"


def _walk_values(value: AttributeValue) -> Iterable[AttributeValue]:
    yield value
    if isinstance(value, ListValue):
        for item in value.items:
            yield from _walk_values(item)
    elif isinstance(value, TypedValue):
        yield from _walk_values(value.value)


def _numeric(value: AttributeValue) -> float | None:
    if isinstance(value, (Real, Integer)):
        return float(value.value)
    return None


def _direction_ratios(graph: InstanceGraph, ref: AttributeValue) -> list[float] | None:
    if not isinstance(ref, Reference):
        return None
    inst = graph.resolve(ref.id)
    if inst.type_name != "IFCDIRECTION":
        return None
    ratios = inst.attr(0)
    if not isinstance(ratios, ListValue):
        return None
    out = []
    for item in ratios.items:
        n = _numeric(item)
        if n is None:
            return None
        out.append(n)
    return out


def check_validity(
    graph: InstanceGraph,
    instances: list[EntityInstance],
    precision: float,
) -> ValidityVerdict:
    """Apply the supported rules over one item's instance fragment."""
    roots = [i for i in instances if i.type_name in SUPPORTED_ROOTS]
    if not roots:
        present = sorted({i.type_name for i in instances})
        raise UnsupportedShape(f"no supported geometry root among {present}")

    reasons: set[InvalidReason] = set()
    warnings: set[InvalidReason] = set()
    details: list[str] = []

    for inst in instances:
        for attr in inst.attributes:
            for value in _walk_values(attr):
                if (
                    isinstance(value, TypedValue)
                    and value.name == "IFCPOSITIVELENGTHMEASURE"
                ):
                    magnitude = _numeric(value.value)
                    if magnitude is None:
                        continue
                    if magnitude <= 0.0:
                        reasons.add(InvalidReason.POSITIVE_LENGTH)
                        details.append(
                            f"#{inst.id} {inst.type_name}: positive length measure "
                            f"is {magnitude}"
                        )
                    elif magnitude < precision:
                        warnings.add(InvalidReason.BELOW_PRECISION)
                        details.append(
                            f"#{inst.id} {inst.type_name}: length {magnitude} below "
                            f"precision {precision}"
                        )

    for inst in instances:
        if inst.type_name == "IFCEXTRUDEDAREASOLID":
            ratios = _direction_ratios(graph, inst.attr(2))
            if ratios is None or len(ratios) < 3:
                details.append(f"#{inst.id}: extrusion direction unreadable")
                continue
            # the profile lies in the XY plane of the solid's position, so the
            # plane normal there is (0,0,1) and the rule reduces to the z ratio
            if abs(ratios[2]) <= DIRECTION_DOT_TOLERANCE:
                reasons.add(InvalidReason.VALID_EXTRUSION_DIRECTION)
                details.append(
                    f"#{inst.id}: extrusion direction {tuple(ratios)} parallel to profile"
                )

    for inst in instances:
        if inst.type_name == "IFCSWEPTDISKSOLID":
            start = _numeric(inst.attr(3))
            end = _numeric(inst.attr(4))
            param_range = _directrix_range(graph, inst.attr(0))
            if param_range is None or start is None or end is None:
                continue
            low, high = param_range
            if start < low - 1e-12 or end > high + 1e-12 or end <= start:
                reasons.add(InvalidReason.PARAM_RANGE)
                details.append(
                    f"#{inst.id}: sweep parameters [{start}, {end}] outside "
                    f"directrix range [{low}, {high}]"
                )

    return ValidityVerdict(
        valid=not reasons,
        reasons=frozenset(reasons),
        warnings=frozenset(warnings),
        details=details,
    )


def _directrix_range(
    graph: InstanceGraph, ref: AttributeValue
) -> tuple[float, float] | None:
    if not isinstance(ref, Reference):
        return None
    curve = graph.resolve(ref.id)
    if curve.type_name != "IFCPOLYLINE":
        return None
    points = curve.attr(0)
    if not isinstance(points, ListValue):
        return None
    return 0.0, float(len(points.items) - 1)

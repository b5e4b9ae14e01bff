"""Shape evaluation: from IFC definitions to triangle meshes and the
benchmark template's follow-up answers (displayed, Z=0 relation, shape)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import UnsupportedShape
from ..spf.model import (
    AttributeValue,
    EntityInstance,
    EnumToken,
    InstanceGraph,
    Integer,
    ListValue,
    Real,
    Reference,
    TypedValue,
)
from .mesh import TriMesh
from .tessellate import (
    box_mesh,
    crane_rail_polygon,
    ellipse_polygon,
    ensure_ccw,
    extrude_polygon,
    ishape_polygon,
    rectangle_polygon,
    revolve_polygon,
    tube_mesh,
)

DEFAULT_SEGMENTS = 64
SMOOTH_SEGMENT_THRESHOLD = 32

_SURFACE_MODEL_ROOTS = {"IFCSHELLBASEDSURFACEMODEL", "IFCFACEBASEDSURFACEMODEL"}

_KIND_LABELS = {
    "IFCBOOLEANRESULT": "BooleanResult",
    "IFCBOOLEANCLIPPINGRESULT": "BooleanClippingResult",
    "IFCSHELLBASEDSURFACEMODEL": "ShellBasedSurfaceModel",
    "IFCFACETEDBREP": "FacetedBrep",
    "IFCEXTRUDEDAREASOLID": "ExtrudedAreaSolid",
    "IFCREVOLVEDAREASOLID": "RevolvedAreaSolid",
    "IFCSWEPTDISKSOLID": "SweptDiskSolid",
}

_PROFILE_LABELS = {
    "IFCRECTANGLEPROFILEDEF": "Rectangle",
    "IFCELLIPSEPROFILEDEF": "Ellipse",
    "IFCISHAPEPROFILEDEF": "IShape",
    "IFCCRANERAILASHAPEPROFILEDEF": "CraneRailAShape",
}

_CURVED_PROFILES = {"IFCELLIPSEPROFILEDEF", "IFCISHAPEPROFILEDEF"}


class ZRelation(enum.Enum):
    ABOVE = "AboveZ0"
    BELOW = "BelowZ0"
    STRADDLES = "StraddlesZ0"
    ON = "OnZ0"


@dataclass
class EvaluationOutcome:
    displayed: bool
    z_relation: ZRelation | None
    shape_class: str
    smooth_curves: bool
    mesh: TriMesh | None
    warnings: list[str] = field(default_factory=list)
    is_surface_model: bool = False

    @property
    def volume(self) -> float | None:
        if self.mesh is None or self.is_surface_model:
            return None if self.mesh is None else self.mesh.volume
        return self.mesh.volume

    @property
    def surface_area(self) -> float | None:
        return None if self.mesh is None else self.mesh.surface_area


def classify_z(zmin: float, zmax: float, band: float) -> ZRelation:
    if abs(zmin) <= band and abs(zmax) <= band:
        return ZRelation.ON
    if zmin >= -band:
        return ZRelation.ABOVE
    if zmax <= band:
        return ZRelation.BELOW
    return ZRelation.STRADDLES


# --- attribute helpers -------------------------------------------------------


def _num(value: AttributeValue) -> float | None:
    if isinstance(value, (Real, Integer)):
        return float(value.value)
    if isinstance(value, TypedValue):
        return _num(value.value)
    return None


def _floats(value: AttributeValue) -> list[float] | None:
    if not isinstance(value, ListValue):
        return None
    out = []
    for item in value.items:
        n = _num(item)
        if n is None:
            return None
        out.append(n)
    return out


def _point(graph: InstanceGraph, ref: AttributeValue, dim: int = 3) -> np.ndarray:
    inst = graph.deref(ref)
    coords = _floats(inst.attr(0)) or []
    coords = coords + [0.0] * (dim - len(coords))
    return np.array(coords[:dim])


def _direction(
    graph: InstanceGraph, ref: AttributeValue, default: tuple[float, ...]
) -> np.ndarray:
    if not isinstance(ref, Reference):
        return np.array(default, dtype=np.float64)
    inst = graph.deref(ref)
    ratios = _floats(inst.attr(0)) or list(default)
    ratios = ratios + [0.0] * (len(default) - len(ratios))
    return np.array(ratios[: len(default)], dtype=np.float64)


def axis2_matrix(graph: InstanceGraph, ref: AttributeValue) -> np.ndarray:
    """4x4 matrix of an IfcAxis2Placement3D (identity when unset)."""
    m = np.eye(4)
    if not isinstance(ref, Reference):
        return m
    inst = graph.deref(ref)
    if inst.type_name != "IFCAXIS2PLACEMENT3D":
        raise UnsupportedShape(f"unsupported placement {inst.type_name}")
    location = _point(graph, inst.attr(0)) if isinstance(inst.attr(0), Reference) else np.zeros(3)
    z = _direction(graph, inst.attr(1), (0.0, 0.0, 1.0))
    z = z / np.linalg.norm(z)
    x_hint = _direction(graph, inst.attr(2), (1.0, 0.0, 0.0))
    x = x_hint - (x_hint @ z) * z
    norm = np.linalg.norm(x)
    if norm < 1e-12:
        x = np.array([1.0, 0.0, 0.0]) if abs(z[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        x = x - (x @ z) * z
        norm = np.linalg.norm(x)
    x = x / norm
    y = np.cross(z, x)
    m[:3, 0], m[:3, 1], m[:3, 2], m[:3, 3] = x, y, z, location
    return m


def placement_matrix(graph: InstanceGraph, ref: AttributeValue) -> np.ndarray:
    """Composed matrix of an IfcLocalPlacement chain."""
    if not isinstance(ref, Reference):
        return np.eye(4)
    inst = graph.deref(ref)
    if inst.type_name != "IFCLOCALPLACEMENT":
        raise UnsupportedShape(f"unsupported object placement {inst.type_name}")
    parent = placement_matrix(graph, inst.attr(0))
    return parent @ axis2_matrix(graph, inst.attr(1))


def _profile_polygon(
    graph: InstanceGraph, ref: AttributeValue, segments: int
) -> tuple[np.ndarray, str]:
    profile = graph.deref(ref)
    name = profile.type_name
    if name == "IFCRECTANGLEPROFILEDEF":
        poly = rectangle_polygon(
            _num(profile.attr(3)) or 0.0, _num(profile.attr(4)) or 0.0
        )
    elif name == "IFCELLIPSEPROFILEDEF":
        poly = ellipse_polygon(
            _num(profile.attr(3)) or 0.0, _num(profile.attr(4)) or 0.0, segments
        )
    elif name == "IFCISHAPEPROFILEDEF":
        poly = ishape_polygon(
            _num(profile.attr(3)) or 0.0,
            _num(profile.attr(4)) or 0.0,
            _num(profile.attr(5)) or 0.0,
            _num(profile.attr(6)) or 0.0,
            _num(profile.attr(7)) or 0.0,
            segments,
        )
    elif name == "IFCCRANERAILASHAPEPROFILEDEF":
        poly = crane_rail_polygon(
            overall_height=_num(profile.attr(3)) or 0.0,
            base_width=_num(profile.attr(4)) or 0.0,
            head_width=_num(profile.attr(6)) or 0.0,
            head_depth_2=_num(profile.attr(7)) or 0.0,
            head_depth_3=_num(profile.attr(8)) or 0.0,
            web_thickness=_num(profile.attr(9)) or 0.0,
            base_width_4=_num(profile.attr(10)) or 0.0,
            base_depth_1=_num(profile.attr(11)) or 0.0,
            base_depth_2=_num(profile.attr(12)) or 0.0,
            base_depth_3=_num(profile.attr(13)) or 0.0,
        )
    else:
        raise UnsupportedShape(f"unsupported profile {name}")
    # apply the 2D profile position (offset plus optional rotation)
    position = profile.attr(2)
    if isinstance(position, Reference):
        a2d = graph.deref(position)
        offset = (
            _point(graph, a2d.attr(0), dim=2)
            if isinstance(a2d.attr(0), Reference)
            else np.zeros(2)
        )
        ref_dir = _direction(graph, a2d.attr(1), (1.0, 0.0))
        ref_dir = ref_dir / np.linalg.norm(ref_dir)
        rot = np.array([[ref_dir[0], -ref_dir[1]], [ref_dir[1], ref_dir[0]]])
        poly = poly @ rot.T + offset
    return ensure_ccw(poly), name


# --- item collection ---------------------------------------------------------


def context_precision(graph: InstanceGraph) -> float | None:
    """Point-equality tolerance declared in the geometric representation
    context, if any."""
    for context in graph.by_type("IFCGEOMETRICREPRESENTATIONCONTEXT"):
        value = _num(context.attr(3))
        if value is not None and value > 0:
            return value
    return None


def suite_proxies(graph: InstanceGraph) -> list[EntityInstance]:
    """Suite proxies ordered by their slot label (stored in Description)."""
    proxies = graph.by_type("IFCBUILDINGELEMENTPROXY")
    labelled = []
    for proxy in proxies:
        desc = proxy.attr(3)
        label = desc.value if hasattr(desc, "value") and isinstance(desc.value, str) else ""
        labelled.append((label, proxy))
    labelled.sort(key=lambda pair: pair[0])
    return [p for _, p in labelled]


def item_fragment(graph: InstanceGraph, proxy: EntityInstance) -> list[EntityInstance]:
    """Closure of geometry instances under a proxy's shape representation,
    excluding the shared representation context."""
    rep_ref = proxy.attr(6)
    if not isinstance(rep_ref, Reference):
        return []
    pds = graph.deref(rep_ref)
    roots: list[Reference] = []
    reps = pds.attr(2)
    if isinstance(reps, ListValue):
        for rep in reps.items:
            if not isinstance(rep, Reference):
                continue
            shape = graph.deref(rep)
            items = shape.attr(3)
            if isinstance(items, ListValue):
                roots.extend(r for r in items.items if isinstance(r, Reference))
    seen: set[int] = set()
    out: list[EntityInstance] = []
    stack = list(roots)
    while stack:
        ref = stack.pop()
        if ref.id in seen:
            continue
        seen.add(ref.id)
        inst = graph.resolve(ref.id)
        out.append(inst)
        for attr in inst.attributes:
            for value in _walk(attr):
                if isinstance(value, Reference) and value.id not in seen:
                    stack.append(value)
    out.sort(key=lambda i: i.id)
    return out


def _walk(value: AttributeValue):
    yield value
    if isinstance(value, ListValue):
        for item in value.items:
            yield from _walk(item)
    elif isinstance(value, TypedValue):
        yield from _walk(value.value)


def shape_roots(graph: InstanceGraph, proxy: EntityInstance) -> list[EntityInstance]:
    rep_ref = proxy.attr(6)
    if not isinstance(rep_ref, Reference):
        return []
    pds = graph.deref(rep_ref)
    roots = []
    reps = pds.attr(2)
    if isinstance(reps, ListValue):
        for rep in reps.items:
            if not isinstance(rep, Reference):
                continue
            shape = graph.deref(rep)
            items = shape.attr(3)
            if isinstance(items, ListValue):
                roots.extend(graph.resolve(r.id) for r in items.items if isinstance(r, Reference))
    return roots


# --- evaluation --------------------------------------------------------------


def evaluate_item(
    graph: InstanceGraph,
    proxy: EntityInstance,
    segments: int = DEFAULT_SEGMENTS,
    precision: float = 1e-5,
) -> EvaluationOutcome:
    """Evaluate one suite item to a mesh in world coordinates."""
    roots = shape_roots(graph, proxy)
    if not roots:
        raise UnsupportedShape(f"proxy #{proxy.id} has no shape representation items")
    root = roots[0]
    world = placement_matrix(graph, proxy.attr(5))
    outcome = _evaluate_root(graph, root, segments, precision)
    if outcome.mesh is not None:
        mesh = outcome.mesh.transformed(world).welded(precision)
        outcome.mesh = mesh
        zmin, zmax = mesh.bbox[0][2], mesh.bbox[1][2]
        outcome.z_relation = classify_z(zmin, zmax, precision)
        if outcome.is_surface_model:
            outcome.displayed = mesh.surface_area > precision**2
        else:
            outcome.displayed = mesh.volume > precision**3
    return outcome


def _evaluate_root(
    graph: InstanceGraph, root: EntityInstance, segments: int, precision: float
) -> EvaluationOutcome:
    name = root.type_name
    kind = _KIND_LABELS.get(name)
    if kind is None:
        raise UnsupportedShape(f"unsupported geometry root {name}")
    if name == "IFCEXTRUDEDAREASOLID":
        return _eval_extrusion(graph, root, segments)
    if name == "IFCREVOLVEDAREASOLID":
        return _eval_revolution(graph, root, segments)
    if name == "IFCSWEPTDISKSOLID":
        return _eval_swept_disk(graph, root, segments)
    if name in ("IFCFACETEDBREP", "IFCSHELLBASEDSURFACEMODEL"):
        return _eval_faces(graph, root)
    if name in ("IFCBOOLEANRESULT", "IFCBOOLEANCLIPPINGRESULT"):
        return _eval_boolean(graph, root)
    raise UnsupportedShape(name)


def _not_displayed(shape_class: str, warning: str) -> EvaluationOutcome:
    return EvaluationOutcome(
        displayed=False,
        z_relation=None,
        shape_class=shape_class,
        smooth_curves=False,
        mesh=None,
        warnings=[warning],
    )


def _eval_extrusion(
    graph: InstanceGraph, root: EntityInstance, segments: int
) -> EvaluationOutcome:
    polygon, profile_name = _profile_polygon(graph, root.attr(0), segments)
    shape_class = f"ExtrudedAreaSolid/{_PROFILE_LABELS.get(profile_name, profile_name)}"
    warnings: list[str] = []
    direction = _direction(graph, root.attr(2), (0.0, 0.0, 1.0))
    depth = _num(root.attr(3)) or 0.0
    if depth == 0.0:
        return _not_displayed(shape_class, "zero extrusion depth; nothing to evaluate")
    if abs(direction[2]) <= 1e-12:
        return _not_displayed(
            shape_class,
            "extrusion direction parallel to profile plane; no solid exists",
        )
    norm = np.linalg.norm(direction)
    if abs(norm - 1.0) > 1e-9:
        warnings.append(
            f"NonNormalizedDirection: |direction| = {norm:.9g}; normalized before sweeping"
        )
    unit = direction / norm
    if depth < 0:
        warnings.append(
            "negative extrusion depth evaluated as sweep along the reversed direction"
        )
    sweep = unit * depth
    poly = polygon if sweep[2] >= 0 else polygon[::-1]
    mesh = extrude_polygon(poly, sweep)
    mesh = mesh.transformed(axis2_matrix(graph, root.attr(1)))
    smooth = profile_name in _CURVED_PROFILES and segments >= SMOOTH_SEGMENT_THRESHOLD
    return EvaluationOutcome(
        displayed=True,
        z_relation=None,
        shape_class=shape_class,
        smooth_curves=smooth,
        mesh=mesh,
        warnings=warnings,
    )


def _eval_revolution(
    graph: InstanceGraph, root: EntityInstance, segments: int
) -> EvaluationOutcome:
    polygon, profile_name = _profile_polygon(graph, root.attr(0), segments)
    shape_class = f"RevolvedAreaSolid/{_PROFILE_LABELS.get(profile_name, profile_name)}"
    axis_ref = root.attr(2)
    axis = graph.deref(axis_ref)
    if axis.type_name != "IFCAXIS1PLACEMENT":
        raise UnsupportedShape(f"revolution axis {axis.type_name}")
    axis_point = (
        _point(graph, axis.attr(0)) if isinstance(axis.attr(0), Reference) else np.zeros(3)
    )
    axis_dir = _direction(graph, axis.attr(1), (0.0, 0.0, 1.0))
    if abs(axis_dir[2]) > 1e-9 or abs(axis_point[2]) > 1e-9:
        raise UnsupportedShape("revolution axis must lie in the profile plane")
    angle = _num(root.attr(3)) or 0.0
    if abs(angle - 2.0 * math.pi) > 1e-6:
        raise UnsupportedShape("only full-sweep revolutions are supported")
    mesh = revolve_polygon(polygon, axis_point, axis_dir, segments)
    mesh = mesh.transformed(axis2_matrix(graph, root.attr(1)))
    return EvaluationOutcome(
        displayed=True,
        z_relation=None,
        shape_class=shape_class,
        smooth_curves=segments >= SMOOTH_SEGMENT_THRESHOLD,
        mesh=mesh,
        warnings=[],
    )


def _eval_swept_disk(
    graph: InstanceGraph, root: EntityInstance, segments: int
) -> EvaluationOutcome:
    shape_class = "SweptDiskSolid/Disk"
    warnings: list[str] = []
    directrix = graph.deref(root.attr(0))
    if directrix.type_name != "IFCPOLYLINE":
        raise UnsupportedShape(f"directrix {directrix.type_name}")
    point_refs = directrix.attr(0)
    if not isinstance(point_refs, ListValue) or len(point_refs.items) != 2:
        raise UnsupportedShape("only straight two-point directrices are supported")
    p0 = _point(graph, point_refs.items[0])
    p1 = _point(graph, point_refs.items[1])
    radius = _num(root.attr(1)) or 0.0
    start = _num(root.attr(3))
    end = _num(root.attr(4))
    low, high = 0.0, 1.0
    if start is None:
        start = low
    if end is None:
        end = high
    if start < low or end > high:
        warnings.append(
            f"sweep parameters [{start:g}, {end:g}] outside directrix range "
            f"[{low:g}, {high:g}]; clamped"
        )
        start, end = max(start, low), min(end, high)
    if end <= start or radius <= 0:
        return _not_displayed(shape_class, "empty sweep after clamping")
    a = p0 + (p1 - p0) * start
    b = p0 + (p1 - p0) * end
    mesh = tube_mesh(a, b, radius, segments)
    return EvaluationOutcome(
        displayed=True,
        z_relation=None,
        shape_class=shape_class,
        smooth_curves=segments >= SMOOTH_SEGMENT_THRESHOLD,
        mesh=mesh,
        warnings=warnings,
    )


def _face_mesh(graph: InstanceGraph, shell: EntityInstance) -> TriMesh:
    vertices: list[np.ndarray] = []
    tris: list[tuple[int, int, int]] = []
    faces = shell.attr(0)
    if not isinstance(faces, ListValue):
        raise UnsupportedShape("shell without face list")
    for face_ref in faces.items:
        face = graph.deref(face_ref)
        bounds = face.attr(0)
        if not isinstance(bounds, ListValue):
            continue
        for bound_ref in bounds.items:
            bound = graph.deref(bound_ref)
            loop = graph.deref(bound.attr(0))
            if loop.type_name != "IFCPOLYLOOP":
                raise UnsupportedShape(f"face bound loop {loop.type_name}")
            pts = loop.attr(0)
            if not isinstance(pts, ListValue):
                continue
            coords = [_point(graph, p) for p in pts.items]
            orientation = bound.attr(1)
            if isinstance(orientation, EnumToken) and orientation.name == "F":
                coords = coords[::-1]
            base = len(vertices)
            vertices.extend(coords)
            for k in range(1, len(coords) - 1):
                tris.append((base, base + k, base + k + 1))
    return TriMesh(np.array(vertices), np.array(tris, dtype=np.int64))


def _eval_faces(graph: InstanceGraph, root: EntityInstance) -> EvaluationOutcome:
    is_surface = root.type_name in _SURFACE_MODEL_ROOTS
    if root.type_name == "IFCFACETEDBREP":
        shells = [graph.deref(root.attr(0))]
        shape_class = "FacetedBrep"
    else:
        refs = root.attr(0)
        if not isinstance(refs, ListValue):
            raise UnsupportedShape("surface model without shells")
        shells = [graph.deref(r) for r in refs.items]
        shape_class = "ShellBasedSurfaceModel"
    mesh = TriMesh.concat([_face_mesh(graph, s) for s in shells])
    return EvaluationOutcome(
        displayed=True,
        z_relation=None,
        shape_class=shape_class,
        smooth_curves=False,
        mesh=mesh,
        warnings=[],
        is_surface_model=is_surface,
    )


# --- axis-aligned boolean results ---------------------------------------------


def _box_of_operand(graph: InstanceGraph, ref: AttributeValue) -> tuple[np.ndarray, np.ndarray]:
    inst = graph.deref(ref)
    if inst.type_name == "IFCFACETEDBREP":
        mesh = _face_mesh(graph, graph.deref(inst.attr(0)))
        lo, hi = mesh.bbox
        if abs(mesh.volume - float(np.prod(hi - lo))) > 1e-9 * max(1.0, mesh.volume):
            raise UnsupportedShape("brep operand is not an axis-aligned box")
        return lo, hi
    if inst.type_name == "IFCEXTRUDEDAREASOLID":
        outcome = _eval_extrusion(graph, inst, segments=4)
        if outcome.mesh is None:
            raise UnsupportedShape("degenerate extrusion operand")
        mesh = outcome.mesh.transformed(np.eye(4))
        lo, hi = mesh.bbox
        if abs(mesh.volume - float(np.prod(hi - lo))) > 1e-9 * max(1.0, mesh.volume):
            raise UnsupportedShape("extrusion operand is not an axis-aligned box")
        return lo, hi
    raise UnsupportedShape(f"unsupported boolean operand {inst.type_name}")


def _half_space_region(
    graph: InstanceGraph, ref: AttributeValue
) -> tuple[int, float, bool]:
    """(axis index, bound, material_below) of an axis-aligned half space."""
    inst = graph.deref(ref)
    if inst.type_name != "IFCHALFSPACESOLID":
        raise UnsupportedShape(f"unsupported second operand {inst.type_name}")
    plane = graph.deref(inst.attr(0))
    if plane.type_name != "IFCPLANE":
        raise UnsupportedShape(f"half space surface {plane.type_name}")
    m = axis2_matrix(graph, plane.attr(0))
    normal = m[:3, 2]
    location = m[:3, 3]
    axis = int(np.argmax(np.abs(normal)))
    if abs(abs(normal[axis]) - 1.0) > 1e-9:
        raise UnsupportedShape("half space plane is not axis-aligned")
    agreement = inst.attr(1)
    flag = isinstance(agreement, EnumToken) and agreement.name == "T"
    # agreement TRUE: the normal points away from the material
    material_below = flag == (normal[axis] > 0)
    return axis, float(location[axis]), material_below


def _boxes_to_outcome(
    boxes: list[tuple[np.ndarray, np.ndarray]], shape_class: str
) -> EvaluationOutcome:
    boxes = [(lo, hi) for lo, hi in boxes if (np.asarray(hi) > np.asarray(lo)).all()]
    if not boxes:
        return _not_displayed(shape_class, "boolean result is empty")
    mesh = TriMesh.concat([box_mesh(lo, hi) for lo, hi in boxes])
    return EvaluationOutcome(
        displayed=True,
        z_relation=None,
        shape_class=shape_class,
        smooth_curves=False,
        mesh=mesh,
        warnings=[],
    )


def _eval_boolean(graph: InstanceGraph, root: EntityInstance) -> EvaluationOutcome:
    operator = root.attr(0)
    op = operator.name if isinstance(operator, EnumToken) else ""
    shape_class = _KIND_LABELS[root.type_name]

    second_inst = graph.deref(root.attr(2))
    first_box = _box_of_operand(graph, root.attr(1))

    if second_inst.type_name == "IFCHALFSPACESOLID":
        axis, bound, material_below = _half_space_region(graph, root.attr(2))
        if op != "DIFFERENCE":
            raise UnsupportedShape(f"half-space operand with operator {op}")
        lo, hi = first_box[0].copy(), first_box[1].copy()
        if material_below:
            lo[axis] = max(lo[axis], bound)  # removing z <= bound keeps the top
        else:
            hi[axis] = min(hi[axis], bound)
        return _boxes_to_outcome([(lo, hi)], shape_class)

    second_box = _box_of_operand(graph, root.attr(2))
    (alo, ahi), (blo, bhi) = first_box, second_box
    diffs = [
        k
        for k in range(3)
        if abs(alo[k] - blo[k]) > 1e-12 or abs(ahi[k] - bhi[k]) > 1e-12
    ]
    if len(diffs) > 1:
        raise UnsupportedShape(
            "cube operands must be offset along a single axis"
        )
    if not diffs:
        # identical operands
        if op == "DIFFERENCE":
            return _boxes_to_outcome([], shape_class)
        return _boxes_to_outcome([(alo, ahi)], shape_class)
    k = diffs[0]
    a0, a1, b0, b1 = alo[k], ahi[k], blo[k], bhi[k]
    boxes: list[tuple[np.ndarray, np.ndarray]] = []

    def interval_boxes(intervals: list[tuple[float, float]]):
        for lo_k, hi_k in intervals:
            if hi_k - lo_k <= 1e-12:
                continue
            lo, hi = alo.copy(), ahi.copy()
            lo[k], hi[k] = lo_k, hi_k
            boxes.append((lo, hi))

    if op == "DIFFERENCE":
        intervals = []
        if b0 > a0:
            intervals.append((a0, min(b0, a1)))
        if b1 < a1:
            intervals.append((max(b1, a0), a1))
        interval_boxes(intervals)
    elif op == "INTERSECTION":
        interval_boxes([(max(a0, b0), min(a1, b1))])
    elif op == "UNION":
        if max(a0, b0) > min(a1, b1):
            interval_boxes([(a0, a1), (b0, b1)])  # disjoint
        else:
            interval_boxes([(min(a0, b0), max(a1, b1))])
    else:
        raise UnsupportedShape(f"unsupported boolean operator {op}")
    return _boxes_to_outcome(boxes, shape_class)


# --- validity/import/export tuple --------------------------------------------


class Observation(enum.Enum):
    YES = "Y"
    NO = "N"
    UNKNOWN = "Unknown"


class TupleFlag(enum.Enum):
    NEVER_EXPORTED = "NeverExported"
    LOOSEN_CANDIDATE = "LoosenCandidate"
    PRACTITIONER_PROBLEM = "PractitionerProblem"


@dataclass(frozen=True)
class TupleClassification:
    exported: Observation
    imported: Observation
    valid: Observation
    flags: frozenset[TupleFlag]

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.exported.value, self.imported.value, self.valid.value)


def classify_tuple(
    valid: bool,
    displayed: bool,
    exported: bool | None = None,
) -> TupleClassification:
    """Place one shape in the exported/imported/valid cube and attach the
    three flag states of interest."""
    exported_obs = (
        Observation.UNKNOWN
        if exported is None
        else (Observation.YES if exported else Observation.NO)
    )
    imported_obs = Observation.YES if displayed else Observation.NO
    valid_obs = Observation.YES if valid else Observation.NO
    flags: set[TupleFlag] = set()
    if exported_obs is Observation.NO:
        flags.add(TupleFlag.NEVER_EXPORTED)
    if exported_obs is Observation.YES and displayed and not valid:
        flags.add(TupleFlag.LOOSEN_CANDIDATE)
    if exported_obs is Observation.YES and not displayed:
        flags.add(TupleFlag.PRACTITIONER_PROBLEM)
    return TupleClassification(exported_obs, imported_obs, valid_obs, frozenset(flags))

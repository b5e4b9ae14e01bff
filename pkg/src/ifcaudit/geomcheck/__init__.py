"""Geometric validity rules, shape evaluation and validation properties."""

from .evaluate import (
    DEFAULT_SEGMENTS,
    EvaluationOutcome,
    Observation,
    TupleClassification,
    TupleFlag,
    ZRelation,
    classify_tuple,
    classify_z,
    context_precision,
    evaluate_item,
    item_fragment,
    placement_matrix,
    shape_roots,
    suite_proxies,
)
from .mesh import TriMesh
from .validity import DIRECTION_DOT_TOLERANCE, ValidityVerdict, check_validity

__all__ = [
    "DEFAULT_SEGMENTS",
    "DIRECTION_DOT_TOLERANCE",
    "EvaluationOutcome",
    "Observation",
    "TriMesh",
    "TupleClassification",
    "TupleFlag",
    "ValidityVerdict",
    "ZRelation",
    "check_validity",
    "classify_tuple",
    "classify_z",
    "context_precision",
    "evaluate_item",
    "item_fragment",
    "placement_matrix",
    "shape_roots",
    "suite_proxies",
]

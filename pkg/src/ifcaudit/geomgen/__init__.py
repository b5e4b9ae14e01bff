"""Synthetic geometry conformance suite generation."""

from .generate import (
    FULL_SWEEP_RADIANS,
    TIMESTAMP_ENV,
    deterministic_guid,
    generate_geometry_suite,
    generate_item,
)
from .suite import (
    BELOW_PRECISION_ITEM,
    DEFAULT_PRECISION,
    DEFAULT_SPACING,
    SLANT_COMPONENT,
    IFC4_EXCLUDED_SLOTS,
    SUITE_ITEMS,
    ExpectedValidity,
    GeometryTestItem,
    InvalidReason,
    Profile,
    ShapeKind,
    SuiteManifest,
    Variant,
    item_by_slot,
    items_for,
)

__all__ = [
    "BELOW_PRECISION_ITEM",
    "DEFAULT_PRECISION",
    "DEFAULT_SPACING",
    "ExpectedValidity",
    "FULL_SWEEP_RADIANS",
    "GeometryTestItem",
    "IFC4_EXCLUDED_SLOTS",
    "InvalidReason",
    "Profile",
    "ShapeKind",
    "SLANT_COMPONENT",
    "SUITE_ITEMS",
    "SuiteManifest",
    "TIMESTAMP_ENV",
    "Variant",
    "deterministic_guid",
    "generate_geometry_suite",
    "generate_item",
    "item_by_slot",
    "items_for",
]

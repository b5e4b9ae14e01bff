"""STEP Physical File (ISO 10303-21) reading and writing."""

from .model import (
    DERIVED,
    FALSE,
    TRUE,
    UNSET,
    AttributeValue,
    Binary,
    Diagnostic,
    EntityInstance,
    EnumToken,
    FileName,
    InstanceGraph,
    Integer,
    ListValue,
    Real,
    Reference,
    SpfHeader,
    Text,
    TypedValue,
    real_lexeme,
)
from .parser import load, materialize, parse_spf
from .writer import format_instance, format_value, save, write_spf

__all__ = [
    "AttributeValue",
    "Binary",
    "DERIVED",
    "Diagnostic",
    "EntityInstance",
    "EnumToken",
    "FALSE",
    "FileName",
    "InstanceGraph",
    "Integer",
    "ListValue",
    "Real",
    "Reference",
    "SpfHeader",
    "Text",
    "TRUE",
    "TypedValue",
    "UNSET",
    "format_instance",
    "format_value",
    "load",
    "materialize",
    "parse_spf",
    "real_lexeme",
    "save",
    "write_spf",
]

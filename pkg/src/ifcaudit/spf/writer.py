"""Serialization of instance graphs back to ISO 10303-21 text.

Printing is deterministic: a graph always serializes to the same bytes, and
re-parsing the output yields a structurally identical graph. Reals re-emit
their stored lexeme, so numbers pass through untouched.
"""

from __future__ import annotations

import os
from pathlib import Path

from .model import (
    DERIVED,
    UNSET,
    AttributeValue,
    Binary,
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


def format_value(value: AttributeValue) -> str:
    if value is UNSET:
        return "$"
    if value is DERIVED:
        return "*"
    if isinstance(value, Real):
        return value.lexeme
    if isinstance(value, Integer):
        return str(value.value)
    if isinstance(value, Text):
        return f"'{value.raw}'"
    if isinstance(value, EnumToken):
        return f".{value.name}."
    if isinstance(value, Reference):
        return f"#{value.id}"
    if isinstance(value, ListValue):
        return "(" + ",".join(format_value(v) for v in value.items) + ")"
    if isinstance(value, TypedValue):
        return f"{value.name}({format_value(value.value)})"
    if isinstance(value, Binary):
        return f'"{value.text}"'
    raise TypeError(f"not an attribute value: {value!r}")


def format_instance(inst: EntityInstance) -> str:
    params = ",".join(format_value(v) for v in inst.attributes)
    return f"#{inst.id}={inst.type_name}({params});"


def _quote(text: str | None) -> str:
    if text is None:
        return "$"
    return format_value(Text.of(text))


def _quote_list(items: list[str]) -> str:
    return "(" + ",".join(_quote(v) for v in items) + ")"


def write_spf(graph: InstanceGraph) -> bytes:
    """Serialize the graph; also refreshes ``graph.byte_size``."""
    h = graph.header
    fn = h.file_name
    lines = [
        "ISO-10303-21;",
        "HEADER;",
        f"FILE_DESCRIPTION({_quote_list(h.description)},{_quote(h.implementation_level)});",
        "FILE_NAME({},{},{},{},{},{},{});".format(
            _quote(fn.name),
            _quote(fn.timestamp),
            _quote_list(fn.authors),
            _quote_list(fn.organizations),
            _quote(fn.preprocessor_version),
            _quote(fn.originating_system),
            _quote(fn.authorization),
        ),
        f"FILE_SCHEMA({_quote_list(h.file_schema)});",
        "ENDSEC;",
        "DATA;",
    ]
    lines.extend(format_instance(inst) for inst in graph.instances)
    lines.append("ENDSEC;")
    lines.append("END-ISO-10303-21;")
    lines.append("")
    out = "\n".join(lines).encode("latin-1")
    graph.byte_size = len(out)
    return out


def save(graph: InstanceGraph, path: str | os.PathLike) -> int:
    data = write_spf(graph)
    Path(path).write_bytes(data)
    return len(data)

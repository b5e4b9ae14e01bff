"""Parsing of ISO 10303-21 exchange structures into instance graphs."""

from __future__ import annotations

import os
import re
from pathlib import Path

from ..errors import MalformedFile
from .attrparse import parse_attributes
from .backend import active_backend
from .model import (
    AttributeValue,
    Diagnostic,
    EntityInstance,
    FileName,
    InstanceGraph,
    ListValue,
    SpfHeader,
    Text,
)

_SENTINEL = b"ISO-10303-21;"
_END_SENTINEL = b"END-ISO-10303-21;"

_HEADER_RECORD = re.compile(
    rb"([A-Za-z_][A-Za-z0-9_]*)[ \t\r\n]*"
    rb"\(((?:[^;'\"/]|'(?:[^']|'')*'|\"[^\"]*\"|/\*.*?\*/|/)*)\)[ \t\r\n]*;",
    re.DOTALL,
)

_TRIVIA = re.compile(rb"(?:[ \t\r\n]+|/\*.*?\*/)*", re.DOTALL)


def _skip_trivia(data: bytes, pos: int) -> int:
    return _TRIVIA.match(data, pos).end()


def parse_spf(data: bytes, eager: bool = False) -> InstanceGraph:
    """Parse SPF text into an :class:`InstanceGraph`.

    With ``eager`` every instance's attribute tree is materialized up front,
    so string-escape anomalies land in the graph diagnostics. The default
    parses attributes lazily, which keeps census-scale work linear in the
    number of records rather than the number of attribute tokens.
    """
    if not isinstance(data, (bytes, bytearray)):
        raise TypeError("parse_spf expects bytes; use load() for paths")
    data = bytes(data)
    diagnostics: list[Diagnostic] = []

    pos = _skip_trivia(data, 0)
    if data[pos : pos + len(_SENTINEL)] != _SENTINEL:
        raise MalformedFile("missing ISO-10303-21 sentinel", pos)
    pos = _skip_trivia(data, pos + len(_SENTINEL))

    if data[pos : pos + 7] != b"HEADER;":
        raise MalformedFile("missing HEADER section", pos)
    header, pos = _parse_header(data, pos + 7, diagnostics)

    pos = _skip_trivia(data, pos)
    if data[pos : pos + 5] != b"DATA;":
        raise MalformedFile("missing DATA section", pos)

    _, scan = active_backend()
    raw_records, referenced, scan_diags, pos = scan(data, pos + 5)
    for code, message in scan_diags:
        diagnostics.append(Diagnostic(code, message))

    pos = _skip_trivia(data, pos)
    if data[pos : pos + len(_END_SENTINEL)] != _END_SENTINEL:
        diagnostics.append(
            Diagnostic("missing-end-sentinel", "file does not end with END-ISO-10303-21;")
        )

    source = data.decode("latin-1")
    instances: list[EntityInstance] = []
    index: dict[int, EntityInstance] = {}
    positions: dict[int, int] | None = None  # built lazily on first duplicate
    name_cache: dict[str, str] = {}
    for i in range(len(raw_records)):
        inst_id, name, pstart, pend = raw_records[i]
        raw_records[i] = None  # free scan tuples as we go; large files care
        name = name_cache.setdefault(name, name)
        inst = EntityInstance(inst_id, name, _src=source, _pstart=pstart, _pend=pend)
        if inst_id not in index:
            index[inst_id] = inst
            if positions is not None:
                positions[inst_id] = len(instances)
            instances.append(inst)
        else:
            diagnostics.append(
                Diagnostic("duplicate-id", f"instance #{inst_id} defined twice; last kept")
            )
            if positions is None:
                positions = {existing.id: k for k, existing in enumerate(instances)}
            index[inst_id] = inst
            instances[positions[inst_id]] = inst

    dangling = referenced - index.keys()
    for ref in sorted(dangling):
        diagnostics.append(
            Diagnostic("dangling-reference", f"reference to missing instance #{ref}")
        )

    graph = InstanceGraph(
        header=header,
        instances=instances,
        diagnostics=diagnostics,
        byte_size=len(data),
        _prebuilt_index=index,
    )
    if eager:
        materialize(graph)
    return graph


def load(path: str | os.PathLike, eager: bool = False) -> InstanceGraph:
    """Read and parse a file from disk."""
    return parse_spf(Path(path).read_bytes(), eager=eager)


def materialize(graph: InstanceGraph) -> None:
    """Force attribute parsing of every instance, collecting escape
    diagnostics into the graph."""
    sink: list[str] = []
    for inst in graph.instances:
        if inst._attrs is None:
            raw = inst.raw_params or ""
            inst._attrs = parse_attributes(raw, unknown_escape_sink=sink)
            inst._src = None
    for esc in sink:
        graph.diagnostics.append(
            Diagnostic("unknown-escape", f"escape sequence passed through verbatim: {esc!r}")
        )


def _parse_header(
    data: bytes, pos: int, diagnostics: list[Diagnostic]
) -> tuple[SpfHeader, int]:
    header = SpfHeader()
    seen: set[str] = set()
    while True:
        pos = _skip_trivia(data, pos)
        if data[pos : pos + 7] == b"ENDSEC;":
            pos += 7
            break
        m = _HEADER_RECORD.match(data, pos)
        if m is None:
            raise MalformedFile("unparseable header record", pos)
        keyword = m.group(1).upper().decode("ascii")
        attrs = parse_attributes(m.group(2).decode("latin-1"))
        if keyword == "FILE_DESCRIPTION":
            header.description = _text_list(attrs, 0)
            header.implementation_level = _text_at(attrs, 1) or ""
        elif keyword == "FILE_NAME":
            header.file_name = FileName(
                name=_text_at(attrs, 0) or "",
                timestamp=_text_at(attrs, 1) or "",
                authors=_text_list(attrs, 2),
                organizations=_text_list(attrs, 3),
                preprocessor_version=_text_at(attrs, 4) or "",
                originating_system=_text_at(attrs, 5) or "",
                authorization=_text_at(attrs, 6) or "",
            )
        elif keyword == "FILE_SCHEMA":
            header.file_schema = _text_list(attrs, 0)
        else:
            diagnostics.append(
                Diagnostic("ignored-header-record", f"header record {keyword} ignored")
            )
        if keyword in seen:
            diagnostics.append(
                Diagnostic("duplicate-header-record", f"{keyword} appears twice")
            )
        seen.add(keyword)
        pos = m.end()
    for required in ("FILE_DESCRIPTION", "FILE_NAME", "FILE_SCHEMA"):
        if required not in seen:
            diagnostics.append(
                Diagnostic("missing-header-record", f"{required} not present")
            )
    return header, pos


def _text_at(attrs: tuple[AttributeValue, ...], index: int) -> str | None:
    if index >= len(attrs):
        return None
    v = attrs[index]
    return v.value if isinstance(v, Text) else None


def _text_list(attrs: tuple[AttributeValue, ...], index: int) -> list[str]:
    if index >= len(attrs):
        return []
    v = attrs[index]
    if isinstance(v, ListValue):
        return [item.value for item in v.items if isinstance(item, Text)]
    return []

"""Data model for STEP physical file content.

Attribute values form a small tagged union mirroring the ISO 10303-21
parameter grammar. Reals keep their source lexeme so a parsed file can be
re-emitted without changing any printed number; strings keep the raw
(escaped) form next to the decoded text for the same reason.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Union

from ..errors import NotFound
from .strings import encode_step_string


class _Sentinel:
    __slots__ = ("_label",)

    def __init__(self, label: str):
        self._label = label

    def __repr__(self) -> str:
        return self._label


#: Unset attribute value, printed as ``$``.
UNSET = _Sentinel("UNSET")
#: Derived attribute value, printed as ``*``.
DERIVED = _Sentinel("DERIVED")


@dataclass(frozen=True, slots=True)
class Integer:
    value: int

    def __repr__(self) -> str:
        return f"Integer({self.value})"


@dataclass(frozen=True, slots=True)
class Real:
    """A real number together with the lexeme it was read from or will be
    written as."""

    value: float
    lexeme: str

    @classmethod
    def of(cls, value: float) -> "Real":
        return cls(value, real_lexeme(value))

    def __repr__(self) -> str:
        return f"Real({self.lexeme})"


@dataclass(frozen=True, slots=True)
class Text:
    value: str
    raw: str  # source form between the quotes, escapes intact

    @classmethod
    def of(cls, value: str) -> "Text":
        return cls(value, encode_step_string(value))

    def __repr__(self) -> str:
        return f"Text({self.value!r})"


@dataclass(frozen=True, slots=True)
class EnumToken:
    """Enumeration value; ``name`` excludes the surrounding dots."""

    name: str

    def __repr__(self) -> str:
        return f".{self.name}."


TRUE = EnumToken("T")
FALSE = EnumToken("F")


@dataclass(frozen=True, slots=True)
class Reference:
    id: int

    def __repr__(self) -> str:
        return f"#{self.id}"


@dataclass(frozen=True, slots=True)
class TypedValue:
    """Explicitly typed value, e.g. IFCPOSITIVELENGTHMEASURE(2.)."""

    name: str
    value: "AttributeValue"

    def __repr__(self) -> str:
        return f"{self.name}({self.value!r})"


@dataclass(frozen=True, slots=True)
class ListValue:
    items: tuple["AttributeValue", ...]

    def __repr__(self) -> str:
        return "(" + ",".join(repr(i) for i in self.items) + ")"

    def __iter__(self) -> Iterator["AttributeValue"]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True, slots=True)
class Binary:
    text: str  # hex payload between the double quotes


AttributeValue = Union[
    _Sentinel, Integer, Real, Text, EnumToken, Reference, TypedValue, ListValue, Binary
]


def real_lexeme(value: float) -> str:
    """Canonical STEP lexeme for a float (always contains a decimal point)."""
    if math.isinf(value) or math.isnan(value):
        raise ValueError(f"non-finite real cannot be serialized: {value}")
    if value == int(value) and abs(value) < 1e16:
        return f"{int(value)}."
    s = repr(value)
    if "e" in s or "E" in s:
        mantissa, _, exponent = s.lower().partition("e")
        if "." not in mantissa:
            mantissa += ".0"
        exponent = exponent.lstrip("+")
        if exponent.startswith("-"):
            exponent = "-" + exponent[1:].lstrip("0")
        else:
            exponent = exponent.lstrip("0")
        return f"{mantissa}E{exponent or '0'}"
    return s


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """Recoverable anomaly noticed while reading or analysing a file."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass
class FileName:
    """Payload of a FILE_NAME header record."""

    name: str = ""
    timestamp: str = ""
    authors: list[str] = field(default_factory=list)
    organizations: list[str] = field(default_factory=list)
    preprocessor_version: str = ""
    originating_system: str = ""
    authorization: str = ""


@dataclass
class SpfHeader:
    description: list[str] = field(default_factory=list)
    implementation_level: str = "2;1"
    file_name: FileName = field(default_factory=FileName)
    file_schema: list[str] = field(default_factory=list)


class EntityInstance:
    """One ``#id=TYPE(...)`` record.

    Attribute trees are built lazily: instances created by the parser keep a
    span into the source text and only materialize attribute values when
    accessed. Instances built programmatically carry their attributes
    directly. The memoization is idempotent, so concurrent readers may race
    on it harmlessly.
    """

    __slots__ = ("id", "type_name", "_attrs", "_src", "_pstart", "_pend")

    def __init__(
        self,
        id: int,
        type_name: str,
        attributes: tuple[AttributeValue, ...] | None = None,
        _src: str | None = None,
        _pstart: int = 0,
        _pend: int = 0,
    ):
        self.id = id
        self.type_name = type_name
        self._attrs = attributes
        self._src = _src
        self._pstart = _pstart
        self._pend = _pend

    @property
    def raw_params(self) -> str | None:
        """Source text between the outer parentheses, if parsed from text."""
        if self._src is None:
            return None
        return self._src[self._pstart : self._pend]

    @property
    def attributes(self) -> tuple[AttributeValue, ...]:
        attrs = self._attrs
        if attrs is None:
            from .attrparse import parse_attributes  # deferred, avoids cycle

            attrs = parse_attributes(self.raw_params or "")
            self._attrs = attrs
            self._src = None  # source span no longer needed
        return attrs

    def attr(self, index: int) -> AttributeValue:
        """Attribute at ``index``, UNSET when the record is shorter."""
        attrs = self.attributes
        return attrs[index] if index < len(attrs) else UNSET

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EntityInstance):
            return NotImplemented
        return (
            self.id == other.id
            and self.type_name == other.type_name
            and self.attributes == other.attributes
        )

    def __hash__(self) -> int:
        return hash((self.id, self.type_name))

    def __repr__(self) -> str:
        return f"#{self.id}={self.type_name}(...)"


class InstanceGraph:
    """Parsed or constructed SPF content: header plus ordered instances."""

    def __init__(
        self,
        header: SpfHeader | None = None,
        instances: list[EntityInstance] | None = None,
        diagnostics: list[Diagnostic] | None = None,
        byte_size: int = 0,
        _prebuilt_index: dict[int, EntityInstance] | None = None,
    ):
        self.header = header or SpfHeader()
        self.instances: list[EntityInstance] = instances or []
        self.diagnostics: list[Diagnostic] = diagnostics or []
        self.byte_size = byte_size
        if _prebuilt_index is not None:
            self._index = _prebuilt_index
        else:
            self._index = {i.id: i for i in self.instances}
        self._type_index: dict[str, list[EntityInstance]] | None = None

    def add(self, instance: EntityInstance) -> None:
        if instance.id in self._index:
            raise ValueError(f"duplicate instance id #{instance.id}")
        self.instances.append(instance)
        self._index[instance.id] = instance
        self._type_index = None

    def resolve(self, id: int) -> EntityInstance:
        try:
            return self._index[id]
        except KeyError:
            raise NotFound(f"no instance #{id}") from None

    def deref(self, value: AttributeValue) -> EntityInstance:
        if not isinstance(value, Reference):
            raise TypeError(f"not a reference: {value!r}")
        return self.resolve(value.id)

    def by_type(self, type_name: str) -> list[EntityInstance]:
        """All instances with exactly this type name (no subtype roll-up)."""
        if self._type_index is None:
            index: dict[str, list[EntityInstance]] = {}
            for inst in self.instances:
                index.setdefault(inst.type_name, []).append(inst)
            self._type_index = index
        return self._type_index.get(type_name.upper(), [])

    def schema_name(self) -> str | None:
        return self.header.file_schema[0] if self.header.file_schema else None

    def next_id(self) -> int:
        return max(self._index, default=0) + 1

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self) -> Iterator[EntityInstance]:
        return iter(self.instances)

    def __contains__(self, id: int) -> bool:
        return id in self._index

    def structurally_equal(self, other: "InstanceGraph") -> bool:
        """Field-by-field equality of header and all instances, ignoring
        diagnostics and byte size."""
        if self.header != other.header:
            return False
        if len(self.instances) != len(other.instances):
            return False
        return all(a == b for a, b in zip(self.instances, other.instances))

"""Encoding and decoding of ISO 10303-21 string payloads.

The exchange structure is ISO 8859-1 text; characters outside that range are
carried via control directives: '' for an apostrophe, \\\\ for a backslash,
\\S\\c for the upper half of the code page, \\X\\hh for a single byte and
\\X2\\..\\X0\\ / \\X4\\..\\X0\\ for UTF-16/UTF-32 code points.
"""

from __future__ import annotations


def decode_step_string(raw: str) -> tuple[str, list[str]]:
    """Decode the text between the quotes of a string token.

    Returns the logical text plus a list of unknown escape sequences that
    were passed through verbatim.
    """
    if "'" not in raw and "\\" not in raw:
        return raw, []
    out: list[str] = []
    unknown: list[str] = []
    i = 0
    n = len(raw)
    while i < n:
        c = raw[i]
        if c == "'":
            # doubled apostrophe; a lone one cannot occur inside the token
            out.append("'")
            i += 2
            continue
        if c != "\\":
            out.append(c)
            i += 1
            continue
        rest = raw[i + 1 :]
        if rest.startswith("\\"):
            out.append("\\")
            i += 2
        elif rest[:2] in ("S\\", "s\\") and len(rest) >= 3:
            out.append(chr((ord(rest[2]) + 128) & 0xFF))
            i += 4
        elif rest[:2] in ("X\\", "x\\") and len(rest) >= 4:
            try:
                out.append(chr(int(rest[2:4], 16)))
                i += 5
            except ValueError:
                unknown.append(raw[i : i + 5])
                out.append(raw[i])
                i += 1
        elif rest[:3].upper() in ("X2\\", "X4\\"):
            width = 4 if rest[:3].upper() == "X2\\" else 8
            end = raw.find("\\X0\\", i + 4)
            if end < 0:
                unknown.append(raw[i:])
                out.append(raw[i:])
                break
            payload = raw[i + 4 : end]
            try:
                for k in range(0, len(payload), width):
                    out.append(chr(int(payload[k : k + width], 16)))
            except ValueError:
                unknown.append(raw[i : end + 4])
                out.append(raw[i : end + 4])
            i = end + 4
        elif rest[:1] == "P" and rest[2:3] == "\\":
            # code page directive; only the default (A = 8859-1) is honoured
            if rest[1:2] != "A":
                unknown.append(raw[i : i + 4])
            i += 4
        else:
            unknown.append(raw[i : i + 2])
            out.append(c)
            i += 1
    return "".join(out), unknown


def encode_step_string(value: str) -> str:
    """Encode logical text to the form written between quotes."""
    out: list[str] = []
    pending_wide: list[str] = []

    def flush_wide() -> None:
        if pending_wide:
            out.append("\\X2\\" + "".join(pending_wide) + "\\X0\\")
            pending_wide.clear()

    for ch in value:
        code = ord(ch)
        if ch == "'":
            flush_wide()
            out.append("''")
        elif ch == "\\":
            flush_wide()
            out.append("\\\\")
        elif 32 <= code < 127 or ch in "\n\r\t":
            flush_wide()
            out.append(ch)
        elif code <= 0xFFFF:
            pending_wide.append(f"{code:04X}")
        else:
            flush_wide()
            out.append(f"\\X4\\{code:08X}\\X0\\")
    flush_wide()
    return "".join(out)

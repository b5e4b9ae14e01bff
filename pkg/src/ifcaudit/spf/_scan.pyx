# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled record scanner for the DATA section.

Twin of ``_scan_py.scan_records``; one linear pass over the byte buffer that
collects record spans, referenced instance ids and recoverable diagnostics.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_GET_SIZE
from cpython.unicode cimport PyUnicode_DecodeASCII

from ..errors import MalformedFile


cdef inline bint _is_ws(unsigned char c):
    return c == 32 or c == 9 or c == 13 or c == 10

cdef inline bint _is_digit(unsigned char c):
    return 48 <= c <= 57

cdef inline bint _is_kw_start(unsigned char c):
    return (65 <= c <= 90) or (97 <= c <= 122) or c == 95

cdef inline bint _is_kw_body(unsigned char c):
    return _is_kw_start(c) or _is_digit(c)


cdef Py_ssize_t _skip_trivia(const unsigned char* buf, Py_ssize_t i, Py_ssize_t n) except -2:
    while i < n:
        if _is_ws(buf[i]):
            i += 1
        elif buf[i] == 47 and i + 1 < n and buf[i + 1] == 42:  # /*
            i += 2
            while True:
                if i + 1 >= n:
                    raise MalformedFile("unterminated comment", i)
                if buf[i] == 42 and buf[i + 1] == 47:
                    i += 2
                    break
                i += 1
        else:
            break
    return i


cdef Py_ssize_t _skip_string(const unsigned char* buf, Py_ssize_t i, Py_ssize_t n) except -2:
    # i sits on the opening quote; returns position after the closing quote
    cdef Py_ssize_t start = i
    i += 1
    while i < n:
        if buf[i] == 39:  # '
            if i + 1 < n and buf[i + 1] == 39:
                i += 2
            else:
                return i + 1
        else:
            i += 1
    raise MalformedFile("unterminated string", start)


cdef Py_ssize_t _skip_record_tail(const unsigned char* buf, Py_ssize_t i, Py_ssize_t n) except -2:
    # advance past the next top-level ';' (strings and comments honoured)
    while i < n:
        if buf[i] == 59:  # ;
            return i + 1
        elif buf[i] == 39:
            i = _skip_string(buf, i, n)
        elif buf[i] == 47 and i + 1 < n and buf[i + 1] == 42:
            i = _skip_trivia(buf, i, n)
        else:
            i += 1
    raise MalformedFile("missing record terminator ';'", i)


def scan_records(bytes data, Py_ssize_t start):
    """See ``ifcaudit.spf._scan_py.scan_records``."""
    cdef const unsigned char* buf = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef Py_ssize_t i = start
    cdef Py_ssize_t j, kstart, pstart, pend, digits
    cdef unsigned long long acc
    cdef long long ref_id
    cdef object inst_obj
    cdef int depth
    cdef bint lower_seen
    cdef list records = []
    cdef set referenced = set()
    cdef list diagnostics = []
    cdef object name

    while True:
        i = _skip_trivia(buf, i, n)
        if i >= n:
            raise MalformedFile("missing ENDSEC", i)

        if buf[i] == 35:  # '#'
            j = i + 1
            kstart = j
            acc = 0
            digits = 0
            while j < n and _is_digit(buf[j]):
                acc = acc * 10 + (buf[j] - 48)
                digits += 1
                j += 1
            if digits == 0:
                raise MalformedFile("bad instance id", i)
            inst_obj = int(data[kstart:j]) if digits > 18 else <long long> acc
            j = _skip_ws_only(buf, j, n)
            if j >= n or buf[j] != 61:  # '='
                raise MalformedFile("expected '=' after instance id", j)
            j = _skip_ws_only(buf, j + 1, n)
            if j < n and buf[j] == 40:  # '(' -> complex entity instance
                diagnostics.append((
                    "complex-instance",
                    f"unsupported complex entity instance #{inst_obj} skipped",
                ))
                i = _skip_record_tail(buf, j, n)
                continue
            if j >= n or not _is_kw_start(buf[j]):
                raise MalformedFile("expected type keyword", j)
            kstart = j
            lower_seen = False
            while j < n and _is_kw_body(buf[j]):
                if 97 <= buf[j] <= 122:
                    lower_seen = True
                j += 1
            name = PyUnicode_DecodeASCII(<const char*> (buf + kstart), j - kstart, NULL)
            if lower_seen:
                name = name.upper()
            j = _skip_ws_only(buf, j, n)
            if j >= n or buf[j] != 40:
                raise MalformedFile("expected '(' after type keyword", j)
            pstart = j + 1
            j += 1
            depth = 1
            while True:
                if j >= n:
                    raise MalformedFile("unterminated parameter list", pstart)
                if buf[j] == 39:  # string
                    j = _skip_string(buf, j, n)
                elif buf[j] == 34:  # binary
                    j += 1
                    while j < n and buf[j] != 34:
                        j += 1
                    if j >= n:
                        raise MalformedFile("unterminated binary token", pstart)
                    j += 1
                elif buf[j] == 47 and j + 1 < n and buf[j + 1] == 42:
                    j = _skip_trivia(buf, j, n)
                elif buf[j] == 40:
                    depth += 1
                    j += 1
                elif buf[j] == 41:
                    depth -= 1
                    j += 1
                    if depth == 0:
                        pend = j - 1
                        break
                elif buf[j] == 35:
                    j += 1
                    kstart = j
                    acc = 0
                    digits = 0
                    while j < n and _is_digit(buf[j]):
                        acc = acc * 10 + (buf[j] - 48)
                        digits += 1
                        j += 1
                    if 0 < digits <= 18:
                        ref_id = <long long> acc
                        referenced.add(ref_id)
                    elif digits > 18:
                        referenced.add(int(data[kstart:j]))
                elif buf[j] == 59:  # ';' cannot occur at parameter level
                    raise MalformedFile("unexpected ';' in parameters", j)
                else:
                    j += 1
            j = _skip_ws_only(buf, j, n)
            if j >= n or buf[j] != 59:
                raise MalformedFile("missing record terminator ';'", j)
            records.append((inst_obj, name, pstart, pend))
            i = j + 1
            continue

        # not a record: only the section terminator is legitimate here
        if i + 6 <= n and buf[i] == 69 and data[i:i + 6] == b"ENDSEC":
            j = _skip_trivia(buf, i + 6, n)
            if j >= n or buf[j] != 59:
                raise MalformedFile("ENDSEC without ';'", i)
            return records, referenced, diagnostics, j + 1
        raise MalformedFile(
            f"unparseable content in DATA section: {data[i:i + 30]!r}", i
        )


cdef inline Py_ssize_t _skip_ws_only(const unsigned char* buf, Py_ssize_t i, Py_ssize_t n):
    while i < n and _is_ws(buf[i]):
        i += 1
    return i

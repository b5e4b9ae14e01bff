"""Selection of the record-scanner backend.

The compiled scanner is preferred when its extension module imported
successfully; ``IFCAUDIT_PURE=1`` in the environment forces the pure-Python
twin (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os
from typing import Callable

from . import _scan_py

try:
    from . import _scan as _scan_ext
except ImportError:  # extension not built; pure fallback stays active
    _scan_ext = None

ScanFunc = Callable[[bytes, int], tuple]


def available_backends() -> dict[str, ScanFunc]:
    backends: dict[str, ScanFunc] = {"python": _scan_py.scan_records}
    if _scan_ext is not None:
        backends["compiled"] = _scan_ext.scan_records
    return backends


def active_backend() -> tuple[str, ScanFunc]:
    if _scan_ext is not None and os.environ.get("IFCAUDIT_PURE", "") not in ("1", "true"):
        return "compiled", _scan_ext.scan_records
    return "python", _scan_py.scan_records

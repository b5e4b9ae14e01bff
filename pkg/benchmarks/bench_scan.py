"""Benchmark the compiled record scanner against the pure-Python twin.

Builds synthetically repeated suite files of increasing size, runs each
available backend over them and reports throughput plus end-to-end
parse+census timings.

Usage:
    python benchmarks/bench_scan.py [--sizes 10,50,100] [--repeats 3]
"""

from __future__ import annotations

import argparse
import re
import time

from ifcaudit.census import census
from ifcaudit.geomgen import generate_geometry_suite
from ifcaudit.schema import SchemaVersion
from ifcaudit.spf import parse_spf, write_spf
from ifcaudit.spf.backend import available_backends


def build_repeated_file(target_mb: float) -> bytes:
    graph, _ = generate_geometry_suite(
        SchemaVersion.IFC2X3, timestamp="2020-01-01T00:00:00"
    )
    text = write_spf(graph).decode("latin-1")
    head, rest = text.split("DATA;\n", 1)
    body, tail = rest.rsplit("ENDSEC;", 1)
    id_span = len(graph) + 1
    copies = max(1, int(target_mb * 1e6 * 0.84) // len(body))
    chunks = [head, "DATA;\n", body]
    for k in range(1, copies):
        offset = k * id_span
        chunks.append(re.sub(r"#(\d+)", lambda m: f"#{int(m.group(1)) + offset}", body))
    chunks.append("ENDSEC;")
    chunks.append(tail)
    return "".join(chunks).encode("latin-1")


def time_scan(scan, data: bytes, repeats: int) -> float:
    start = data.find(b"DATA;") + 5
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        scan(data, start)
        best = min(best, time.perf_counter() - t0)
    return best


def time_parse_census(data: bytes, backend_env: str | None, repeats: int) -> float:
    import os

    best = float("inf")
    previous = os.environ.get("IFCAUDIT_PURE")
    try:
        if backend_env is None:
            os.environ.pop("IFCAUDIT_PURE", None)
        else:
            os.environ["IFCAUDIT_PURE"] = backend_env
        for _ in range(repeats):
            t0 = time.perf_counter()
            census(parse_spf(data))
            best = min(best, time.perf_counter() - t0)
    finally:
        if previous is None:
            os.environ.pop("IFCAUDIT_PURE", None)
        else:
            os.environ["IFCAUDIT_PURE"] = previous
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10,50,100",
                        help="comma-separated file sizes in MB")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    sizes = [float(s) for s in args.sizes.split(",")]

    header = f"{'size':>8} {'backend':>9} {'scan [s]':>9} {'MB/s':>8} {'parse+census [s]':>17}"
    print(header)
    print("-" * len(header))
    for size_mb in sizes:
        data = build_repeated_file(size_mb)
        actual_mb = len(data) / 1e6
        for name, scan in backends.items():
            scan_time = time_scan(scan, data, args.repeats)
            env = "1" if name == "python" else None
            total_time = time_parse_census(data, env, max(1, args.repeats - 1))
            print(
                f"{actual_mb:7.1f}M {name:>9} {scan_time:9.3f} "
                f"{actual_mb / scan_time:8.1f} {total_time:17.3f}"
            )
    if len(backends) == 2:
        print("\nnote: 'scan' is the record tokenizer alone; parse+census adds "
              "instance construction and counting, which are shared Python code.")


if __name__ == "__main__":
    main()

"""Plain-text point set files.

Format: a header line ``d n`` followed by ``n`` lines of ``d`` whitespace-separated
numbers. Lines starting with ``#`` are comments. Numbers may be decimal or
hexadecimal float literals (``0x1.8p-1``); output uses shortest round-trip
decimals, so write -> read reproduces every coordinate bit for bit.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .geometry import PointSet


class PointFileError(ValueError):
    pass


def _number(tok: str) -> float:
    t = tok.lower().lstrip("+-")
    try:
        if t.startswith("0x"):
            return float.fromhex(tok)
        return float(tok)
    except ValueError:
        raise PointFileError(f"not a number: {tok!r}") from None


def parse_points(text: str) -> PointSet:
    rows = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 2:
                raise PointFileError(f"line {lineno}: header must be 'd n'")
            try:
                header = (int(toks[0]), int(toks[1]))
            except ValueError:
                raise PointFileError(f"line {lineno}: header must be two integers") from None
            if header[0] < 1 or header[1] < 0:
                raise PointFileError(f"line {lineno}: need d >= 1 and n >= 0")
            continue
        if len(toks) != header[0]:
            raise PointFileError(f"line {lineno}: expected {header[0]} numbers, got {len(toks)}")
        row = [_number(t) for t in toks]
        if not all(0.0 <= x <= 1.0 for x in row):
            raise PointFileError(f"line {lineno}: coordinates must lie in [0, 1]")
        rows.append(row)
    if header is None:
        raise PointFileError("missing 'd n' header")
    d, n = header
    if len(rows) != n:
        raise PointFileError(f"header announces {n} points, file has {len(rows)}")
    return PointSet(np.array(rows, dtype=np.float64).reshape(n, d), dim=d)


def read_points(path) -> PointSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from None
    return parse_points(text)


def format_points(T: PointSet, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{T.dim} {T.n}")
    for p in T.points:
        lines.append(" ".join(repr(float(x)) for x in p))
    return "\n".join(lines) + "\n"


def write_points(T: PointSet, path, comments=()) -> None:
    Path(path).write_text(format_points(T, comments))

"""Plain-text point-set files and JSON witness records.

Point-set file::

    #espoints v1
    <N>
    x y
    ...

Coordinates are signed decimal integers of any length.  Lines starting with
``#`` after the header are comments.  The content hash covers the canonical
serialization without comments, so comments never change a set's identity.
"""

from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

from .errors import EspointsError
from .geometry import PointSet
from .oracle import ConvexWitness

HEADER = "#espoints v1"
WITNESS_SCHEMA_VERSION = 1

_INT = re.compile(r"[+-]?\d+\Z")


class FormatError(EspointsError, ValueError):
    """Malformed point-set or witness file."""


def format_pointset(S: PointSet, comments: list[str] | None = None) -> str:
    lines = [HEADER]
    lines += [f"# {c}" for c in comments or []]
    lines.append(str(len(S)))
    lines += [f"{x} {y}" for x, y in S.points]
    return "\n".join(lines) + "\n"


def pointset_hash(S: PointSet) -> str:
    return hashlib.sha256(format_pointset(S).encode("ascii")).hexdigest()


def parse_pointset(text: str, id: str = "") -> PointSet:
    """Parse a point-set file.  General position is not checked here."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise FormatError(f"first line must be {HEADER!r}")
    body = [(no, ln.strip()) for no, ln in enumerate(lines[1:], start=2)
            if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise FormatError("missing point count")
    no, first = body[0]
    if not _INT.match(first) or int(first) < 0:
        raise FormatError(f"line {no}: expected a non-negative point count, got {first!r}")
    n = int(first)
    rows = body[1:]
    if len(rows) != n:
        raise FormatError(f"header says {n} points, file has {len(rows)}")
    pts = []
    for no, ln in rows:
        parts = ln.split()
        if len(parts) != 2 or not all(_INT.match(p) for p in parts):
            raise FormatError(f"line {no}: expected two integers, got {ln!r}")
        pts.append((int(parts[0]), int(parts[1])))
    return PointSet(pts, id=id, check=False)


def read_pointset(path) -> PointSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path}: not an ASCII text file") from exc
    return parse_pointset(text, id=path.stem)


def write_pointset(S: PointSet, path, comments: list[str] | None = None) -> None:
    Path(path).write_text(format_pointset(S, comments), encoding="ascii")


def witness_record(S: PointSet, w: ConvexWitness, params: dict | None = None) -> dict:
    return {
        "schema_version": WITNESS_SCHEMA_VERSION,
        "pointset": {"id": S.id, "sha256": pointset_hash(S), "n": len(S)},
        "indices": list(w.indices),
        "size": w.size,
        "trace": w.trace,
        "params": params or {},
    }


def write_witness(S: PointSet, w: ConvexWitness, path, params: dict | None = None) -> None:
    Path(path).write_text(json.dumps(witness_record(S, w, params), indent=1, default=str) + "\n")


def read_witness(path) -> tuple[ConvexWitness, dict]:
    """The witness and the full record.  Only the shape is validated."""
    try:
        rec = json.loads(Path(path).read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path}: not a JSON witness record ({exc})") from exc
    if not isinstance(rec, dict) or rec.get("schema_version") != WITNESS_SCHEMA_VERSION:
        raise FormatError(f"{path}: unsupported witness schema")
    idx = rec.get("indices")
    size = rec.get("size")
    if not isinstance(idx, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
        raise FormatError(f"{path}: indices must be a list of integers")
    if not isinstance(size, int):
        raise FormatError(f"{path}: size must be an integer")
    return ConvexWitness(tuple(idx), trace=rec.get("trace") or [], size=size), rec

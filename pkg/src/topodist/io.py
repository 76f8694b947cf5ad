"""CSV/JSON file formats.

Diagram files have the header ``dim,birth,death`` and one row per point.
Matrix files start with ``id,<label>,...`` followed by one labelled row each.
Every writer goes through a temporary file so failures leave nothing behind.
"""

from __future__ import annotations

import contextlib
import csv
import math
import os
import tempfile
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .diagrams import ExtendedDiagram, _violations
from .errors import DiagramValidationError, ParseError
from .harness.bench import BENCH_COLUMNS, BenchRow
from .harness.curves import TopologicalCurve
from .harness.matrix import DistanceMatrix

DIAGRAM_HEADER = ("dim", "birth", "death")
CURVE_COLUMNS = ("metric", "dimension", "index", "value")


def fmt(x: float) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(x))


@contextlib.contextmanager
def atomic_write(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _rows(path):
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            yield lineno, [c.strip() for c in row]


def read_diagram(path) -> ExtendedDiagram:
    """Parse a diagram CSV. Repeated rows add multiplicity."""
    points: dict[int, list[tuple[float, float]]] = defaultdict(list)
    lines: dict[int, list[int]] = defaultdict(list)
    rows = _rows(path)
    first = next(rows, None)
    if first is None:
        raise ParseError(f"{path}: empty file, expected header 'dim,birth,death'", 1)
    lineno, header = first
    if tuple(h.lower() for h in header) != DIAGRAM_HEADER:
        raise ParseError(f"{path}: expected header 'dim,birth,death', got {','.join(header)!r}", lineno)
    for lineno, row in rows:
        if len(row) != 3:
            raise ParseError(f"{path}: expected 3 fields, got {len(row)}", lineno)
        try:
            dim = int(row[0])
            birth = float(row[1])
            death = float(row[2])
        except ValueError:
            raise ParseError(f"{path}: malformed row {','.join(row)!r}", lineno) from None
        if dim < 0:
            raise ParseError(f"{path}: negative dimension {dim}", lineno)
        points[dim].append((birth, death))
        lines[dim].append(lineno)
    for dim in sorted(points):
        bad = _violations(np.array(points[dim], dtype=float), dim)
        if bad:
            v = bad[0]
            raise DiagramValidationError(f"{path}: line {lines[dim][v.index]}: {v.reason}", bad)
    return ExtendedDiagram.from_mapping(dict(points))


def write_diagram(diagram: ExtendedDiagram, path) -> None:
    """Write rows sorted by (dim, birth, death)."""
    with atomic_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DIAGRAM_HEADER)
        for dgm in diagram:
            for b, d in dgm.canonical():
                w.writerow((dgm.dimension, fmt(b), fmt(d)))


def write_matrix(matrix: DistanceMatrix, path) -> None:
    with atomic_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("id",) + matrix.labels)
        for label, row in zip(matrix.labels, matrix.values):
            w.writerow((label,) + tuple(fmt(x) for x in row))


def read_matrix(path) -> DistanceMatrix:
    rows = list(_rows(path))
    if not rows:
        raise ParseError(f"{path}: empty matrix file", 1)
    _, header = rows[0]
    labels = tuple(header[1:])
    if len(rows) - 1 != len(labels):
        raise ParseError(f"{path}: {len(labels)} columns but {len(rows) - 1} rows", rows[-1][0])
    values = np.zeros((len(labels), len(labels)))
    for i, (lineno, row) in enumerate(rows[1:]):
        if len(row) != len(labels) + 1 or row[0] != labels[i]:
            raise ParseError(f"{path}: row does not match header", lineno)
        try:
            values[i] = [float(x) for x in row[1:]]
        except ValueError:
            raise ParseError(f"{path}: non-numeric entry", lineno) from None
    if not np.array_equal(values, values.T) or np.any(np.diag(values) != 0):
        raise ParseError(f"{path}: matrix is not symmetric with zero diagonal")
    return DistanceMatrix(labels, values)


def read_labels(path) -> dict[str, str]:
    """Read ``id,label`` rows."""
    rows = _rows(path)
    first = next(rows, None)
    if first is None or tuple(h.lower() for h in first[1]) != ("id", "label"):
        raise ParseError(f"{path}: expected header 'id,label'", 1)
    out = {}
    for lineno, row in rows:
        if len(row) != 2:
            raise ParseError(f"{path}: expected 2 fields", lineno)
        out[row[0]] = row[1]
    return out


def write_labels(labels: Mapping[str, object], path) -> None:
    with atomic_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("id", "label"))
        for key, label in labels.items():
            w.writerow((key, label))


def _fmt_value(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return fmt(x)


def write_curves(curves: Mapping[str, TopologicalCurve], path) -> None:
    with atomic_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for name, curve in curves.items():
            for j, series in enumerate(curve.values):
                for i, v in enumerate(series):
                    w.writerow((name, j, i, _fmt_value(v)))


def write_bench(rows: Iterable[BenchRow], path) -> None:
    with atomic_write(path) as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row.as_dict())

"""Reading and writing distance matrices (CSV and JSON)."""

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .metric import validate_metric


class MatrixParseError(ValueError):
    """Malformed matrix file; carries the 1-based line and column."""

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def parse_csv(text):
    """Parse n rows of n comma-separated reals into a list of lists."""
    rows = []
    for lineno, row in enumerate(csv.reader(_io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        values = []
        for col, cell in enumerate(row, start=1):
            try:
                values.append(float(cell))
            except ValueError:
                raise MatrixParseError(f"not a number: {cell.strip()!r}", lineno, col) from None
        if rows and len(values) != len(rows[0]):
            raise MatrixParseError(
                f"expected {len(rows[0])} entries, got {len(values)}", lineno, len(values))
        rows.append(values)
    if not rows:
        raise MatrixParseError("empty matrix", 1, 1)
    if len(rows) != len(rows[0]):
        raise MatrixParseError(
            f"matrix has {len(rows)} rows but {len(rows[0])} columns", len(rows), 1)
    return rows


def parse_json(text):
    """Parse ``{"n": int, "dist": [[...]], "labels": [...]}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "dist" not in obj:
        raise MatrixParseError('expected an object with a "dist" field', 1, 1)
    dist = obj["dist"]
    n = obj.get("n", len(dist))
    if len(dist) != n or any(len(row) != n for row in dist):
        raise MatrixParseError(f'"dist" is not a {n}x{n} matrix', 1, 1)
    return dist, obj.get("labels"), obj.get("provenance")


def read_matrix(path, tol=None):
    """Load a CSV or JSON matrix file (chosen by suffix) and validate it."""
    path = Path(path)
    text = path.read_text()
    prov = {"source": "loaded", "path": path.name}
    if path.suffix.lower() == ".json":
        dist, labels, _ = parse_json(text)
        return validate_metric(np.array(dist, dtype=float), tol, labels=labels, provenance=prov)
    return validate_metric(np.array(parse_csv(text), dtype=float), tol, provenance=prov)


def dumps_json(space):
    """JSON text for ``space``; floats keep their shortest round-trip repr."""
    obj = {"n": space.n_points, "dist": space.dist.tolist()}
    if space.labels is not None:
        obj["labels"] = list(space.labels)
    return json.dumps(obj)


def write_json(space, path):
    Path(path).write_text(dumps_json(space) + "\n")


def write_csv(space, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in space.dist:
            writer.writerow([repr(float(v)) for v in row])

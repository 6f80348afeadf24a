"""Deterministic text output: JSON with 12 significant digits, CSV, and plot data."""

import csv
import io
import json
import math

import numpy as np

DIGITS = 12


def round_float(x, digits=DIGITS):
    """``x`` rounded to ``digits`` significant digits; non-finite values become strings."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.{digits}g}")


def normalize(obj, digits=DIGITS):
    """Recursively convert numpy types and tuples, rounding every float."""
    if isinstance(obj, dict):
        return {str(k): normalize(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [normalize(v, digits) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_float(obj, digits)
    return obj


def to_json(obj, digits=DIGITS):
    """Stable JSON text: insertion key order, rounded floats, trailing newline."""
    return json.dumps(normalize(obj, digits), indent=2, allow_nan=False) + "\n"


def to_csv(header, rows, digits=DIGITS):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v, digits) for v in row])
    return buf.getvalue()


def _cell(v, digits):
    if isinstance(v, (float, np.floating)):
        return repr(round_float(v, digits))
    return "" if v is None else str(v)


def to_plotdata(series, digits=DIGITS):
    """Two-column text blocks ``q value``, one block per named series."""
    blocks = []
    for name, pairs in series.items():
        lines = [f"# q {name}"]
        lines += [f"{int(q)} {round_float(v, digits)!r}" for q, v in pairs]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"

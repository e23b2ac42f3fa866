"""CSV/JSON serialization of measure and distance matrices."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np

from .distances import DistanceMatrix
from .errors import ParseError
from .linalg import FLOAT, RATIONAL, backend_of
from .measures import KINDS, MeasureMatrix

SCHEMA = "geodist/1"


def scalar_to_text(x):
    """Rationals as ``p/q`` (``p`` when integral), floats with 17 significant digits."""
    if isinstance(x, Fraction):
        return str(x)
    return format(float(x), ".17g")


def scalar_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer, int)) and not isinstance(x, bool):
        return int(x)
    return float(x)


def matrix_to_json(m):
    return [[scalar_to_json(x) for x in row] for row in m]


def matrix_from_json(rows):
    """Strings decode to Fractions (rational backend), numbers to float64."""
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a non-empty list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError("matrix must be square")
    if any(isinstance(x, str) for r in rows for x in r):
        out = np.empty((n, n), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                try:
                    out[i, j] = Fraction(x)
                except (ValueError, TypeError, ZeroDivisionError):
                    raise ParseError(f"invalid matrix entry {x!r} at ({i + 1},{j + 1})") from None
        return out
    try:
        return np.array(rows, dtype=np.float64)
    except (TypeError, ValueError):
        raise ParseError("matrix entries must be numbers or rational strings") from None


def _params_to_json(params):
    out = {}
    for k, v in params.items():
        if isinstance(v, np.ndarray):
            continue
        out[k] = scalar_to_json(v) if isinstance(v, (Fraction, float, int, np.number)) else v
    return out


def measure_to_json(s: MeasureMatrix) -> dict:
    doc = {"kind": s.kind, "normalization": s.normalization, "backend": s.backend,
           "params": _params_to_json(s.params), "matrix": matrix_to_json(s.matrix)}
    if s.stderr is not None:
        doc["stderr"] = matrix_to_json(s.stderr)
    return doc


def measure_from_json(doc) -> MeasureMatrix:
    """Read a measure back, either a full output document or its ``measure`` object."""
    if isinstance(doc, dict) and "measure" in doc:
        doc = doc["measure"]
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise ParseError("expected a measure object with a 'matrix' field")
    kind = doc.get("kind")
    if kind is not None and kind not in KINDS:
        raise ParseError(f"unknown measure kind {kind!r}")
    matrix = matrix_from_json(doc["matrix"])
    params = {}
    for k, v in doc.get("params", {}).items():
        params[k] = Fraction(v) if isinstance(v, str) and backend_of(matrix) == RATIONAL else v
    return MeasureMatrix(matrix, kind, params, doc.get("normalization", "raw"))


def distance_to_json(d: DistanceMatrix) -> dict:
    return {"transform": d.transform, "backend": backend_of(d.matrix),
            "matrix": matrix_to_json(d.matrix)}


def matrix_to_csv(m, title=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if title:
        buf.write(f"# {title}\n")
    n = m.shape[0]
    writer.writerow([""] + [str(i + 1) for i in range(n)])
    for i in range(n):
        writer.writerow([str(i + 1)] + [scalar_to_text(x) for x in m[i]])
    return buf.getvalue()


def report_to_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    buf.write(f"# audit: {report.name} {'pass' if report.ok else 'fail'}\n")
    writer.writerow(["check", "indices", "lhs", "rhs", "verdict", "separated"])
    for c in sorted(report.failures, key=lambda c: (c.indices, c.name)):
        writer.writerow([c.name, " ".join(map(str, c.indices)), scalar_to_text(c.lhs),
                         scalar_to_text(c.rhs), "fail", "" if c.separated is None else c.separated])
    return buf.getvalue()


__all__ = ["SCHEMA", "FLOAT", "RATIONAL", "scalar_to_text", "matrix_to_json", "matrix_from_json",
           "measure_to_json", "measure_from_json", "distance_to_json", "matrix_to_csv",
           "report_to_csv"]

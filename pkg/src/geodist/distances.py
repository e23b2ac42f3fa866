"""Distances built from measure matrices, and the audits that check them."""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError, PreconditionError
from .graph import EITHER, WeightedDigraph, separation_table
from .linalg import FLOAT, RATIONAL, backend_of, zeros
from .measures import MeasureMatrix

LOG = "log"
PLAIN = "plain"
EXTERNAL = "external"

DEFAULT_TOL = 1e-9


@dataclasses.dataclass
class DistanceMatrix:
    matrix: np.ndarray
    kind: Optional[str] = None
    params: dict = dataclasses.field(default_factory=dict)
    transform: str = EXTERNAL
    measure: Optional[MeasureMatrix] = None

    @property
    def n(self):
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m)
        if m.dtype != object:
            m = m.astype(np.float64)
        return cls(m)


@dataclasses.dataclass(frozen=True)
class Check:
    indices: tuple
    name: str
    lhs: object
    rhs: object
    passed: bool
    separated: Optional[bool] = None
    note: str = ""

    def to_dict(self):
        out = {"indices": list(self.indices), "check": self.name,
               "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs),
               "verdict": "pass" if self.passed else "fail"}
        if self.separated is not None:
            out["separated"] = self.separated
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    return x


@dataclasses.dataclass
class AuditReport:
    """Outcome of a family of checks.

    With ``keep_passing=False`` only failing checks are stored; the counts in
    :attr:`summary` still cover every check performed.
    """
    name: str
    tol: float = DEFAULT_TOL
    exact: bool = False
    keep_passing: bool = True
    checks: list = dataclasses.field(default_factory=list)
    counts: dict = dataclasses.field(default_factory=dict)

    def add(self, check: Check):
        total, failed = self.counts.get(check.name, (0, 0))
        self.counts[check.name] = (total + 1, failed + (not check.passed))
        if self.keep_passing or not check.passed:
            self.checks.append(check)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self):
        return all(failed == 0 for _, failed in self.counts.values())

    @property
    def summary(self):
        return {name: {"checks": total, "failed": failed}
                for name, (total, failed) in sorted(self.counts.items())}

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: (c.indices, c.name))

    def merge(self, other: "AuditReport"):
        for c in other.checks:
            self.checks.append(c)
        for name, (t, f) in other.counts.items():
            t0, f0 = self.counts.get(name, (0, 0))
            self.counts[name] = (t0 + t, f0 + f)
        return self

    def to_dict(self, include_passing=False):
        checks = self.sorted_checks() if include_passing else sorted(
            self.failures, key=lambda c: (c.indices, c.name))
        return {"audit": self.name, "ok": self.ok, "tol": 0 if self.exact else self.tol,
                "summary": self.summary, "checks": [c.to_dict() for c in checks]}

    def __str__(self):
        state = "PASS" if self.ok else "FAIL"
        parts = ", ".join(f"{k}: {v['checks'] - v['failed']}/{v['checks']}"
                          for k, v in self.summary.items())
        return f"{self.name} {state} ({parts})"


def approx_equal(a, b, tol, exact):
    if exact:
        return a == b
    scale = max(abs(a), abs(b))
    return abs(a - b) <= tol * scale


# -- transforms ----------------------------------------------------------------

def _ln(x):
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def _require_positive(s: MeasureMatrix):
    m = s.matrix
    for (i, j), x in np.ndenumerate(m):
        if not x > 0:
            raise DomainError(f"logarithmic distance needs positive entries; "
                              f"s[{i + 1},{j + 1}] = {x}", index=(i + 1, j + 1))


def log_matrix(s: MeasureMatrix) -> np.ndarray:
    """Elementwise natural log of the measure (float array)."""
    _require_positive(s)
    return np.array([[_ln(x) for x in row] for row in s.matrix], dtype=np.float64)


def log_distance(s: MeasureMatrix) -> DistanceMatrix:
    """``d_ij = 1/2 ln(s_ii s_jj / (s_ij s_ji))``, logging each pair's product ratio once."""
    _require_positive(s)
    m = s.matrix
    n = m.shape[0]
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            ratio = (m[i, i] * m[j, j]) / (m[i, j] * m[j, i])
            d[i, j] = d[j, i] = 0.5 * _ln(ratio)
    return DistanceMatrix(d, s.kind, dict(s.params), LOG, s)


def plain_conditions_violation(s: MeasureMatrix):
    """First (i, j) with i != j breaking s_jj > min(s_ij, s_ji), s_jj >= max(...), s_jj > 0."""
    m = s.matrix
    n = m.shape[0]
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            lo, hi = sorted((m[i, j], m[j, i]))
            if not (m[j, j] > lo and m[j, j] >= hi and m[j, j] > 0):
                return i + 1, j + 1
    return None


def plain_distance(s: MeasureMatrix) -> DistanceMatrix:
    """``d_ij = (s_ii + s_jj - s_ij - s_ji) / 2`` on the measure itself.

    Only the diagonal conditions are checked here; the transition inequality
    is the caller's responsibility (audit it separately).
    """
    bad = plain_conditions_violation(s)
    if bad is not None:
        i, j = bad
        raise PreconditionError(
            f"plain distance precondition fails at pair ({i},{j}): need s_jj > min(s_ij, s_ji), "
            f"s_jj >= max(s_ij, s_ji) and s_jj > 0")
    m = s.matrix
    n = m.shape[0]
    backend = backend_of(m)
    half = Fraction(1, 2) if backend == RATIONAL else 0.5
    d = zeros(n, backend)
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = half * (m[i, i] + m[j, j] - m[i, j] - m[j, i])
    return DistanceMatrix(d, s.kind, dict(s.params), PLAIN, s)


# -- audits --------------------------------------------------------------------

def metric_report(d: DistanceMatrix, tol=DEFAULT_TOL, keep_passing=True) -> AuditReport:
    """Zero diagonal, positivity off the diagonal, symmetry, and all n^3 triangle inequalities."""
    m = d.matrix
    n = m.shape[0]
    exact = backend_of(m) == RATIONAL
    rep = AuditReport("metric", tol, exact, keep_passing)
    slack = 0 if exact else tol
    for i in range(n):
        rep.add(Check((i + 1,), "zero-diagonal", m[i, i], 0, abs(m[i, i]) <= slack))
    for i in range(n):
        for j in range(n):
            if i != j:
                rep.add(Check((i + 1, j + 1), "positivity", m[i, j], 0, m[i, j] > 0))
            if i < j:
                rep.add(Check((i + 1, j + 1), "symmetry", m[i, j], m[j, i],
                              approx_equal(m[i, j], m[j, i], tol, exact)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = m[i, j] + m[j, k]
                rep.add(Check((i + 1, j + 1, k + 1), "triangle", lhs, m[i, k],
                              lhs - m[i, k] >= -slack))
    return rep


def geodetic_report(d: DistanceMatrix, g: WeightedDigraph, mode=EITHER, tol=DEFAULT_TOL,
                    keep_passing=True) -> AuditReport:
    """For distinct i, j, k: d_ij + d_jk = d_ik must hold exactly when j separates i and k.

    Logarithmic distances are tested through the underlying measure: the sum
    equality is equivalent to ``s_jj^2 s_ik s_ki == s_ij s_jk s_kj s_ji``.
    """
    g = g.directed()
    n = d.n
    if g.n != n:
        raise PreconditionError(f"distance matrix is {n}x{n} but the graph has {g.n} vertices")
    sep = separation_table(g, mode)
    use_products = d.transform == LOG and d.measure is not None
    src = d.measure.matrix if use_products else d.matrix
    exact = backend_of(src) == RATIONAL
    rep = AuditReport(f"geodetic[{mode}]", tol, exact, keep_passing)
    m = d.matrix
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                if use_products:
                    lhs = src[j, j] * src[j, j] * src[i, k] * src[k, i]
                    rhs = src[i, j] * src[j, k] * src[k, j] * src[j, i]
                else:
                    lhs, rhs = m[i, j] + m[j, k], m[i, k]
                equal = approx_equal(lhs, rhs, tol, exact)
                separated = bool(sep[i, j, k])
                note = ""
                if equal and not separated:
                    note = "equality without separation"
                elif separated and not equal:
                    note = "separation without equality"
                rep.add(Check((i + 1, j + 1, k + 1), "geodetic", lhs, rhs,
                              equal == separated, separated, note))
    return rep


def shortest_path_distance(g: WeightedDigraph, backend=FLOAT) -> DistanceMatrix:
    """Symmetrized shortest-path lengths with arc weights as lengths (for comparisons)."""
    g = g.directed()
    n = g.n
    inf = float("inf")
    w = [[inf] * n for _ in range(n)]
    for i in range(n):
        w[i][i] = 0
    for t, h, x in g.arcs:
        x = Fraction(x) if backend == RATIONAL else float(x)
        if x < w[t - 1][h - 1]:
            w[t - 1][h - 1] = x
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if w[i][k] + w[k][j] < w[i][j]:
                    w[i][j] = w[i][k] + w[k][j]
    d = zeros(n, backend)
    for i in range(n):
        for j in range(n):
            d[i, j] = max(w[i][j], w[j][i])
    return DistanceMatrix(d, "shortest-path", {}, EXTERNAL)

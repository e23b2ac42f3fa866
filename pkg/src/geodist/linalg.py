"""Dense square matrices over two scalar backends.

A square matrix is a plain 2-D numpy array.  ``float64`` arrays use the
float backend; ``object`` arrays holding :class:`fractions.Fraction` use the
exact rational backend.  Operations never mix the two.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import PreconditionError, SingularMatrixError

FLOAT = "float"
RATIONAL = "rational"
BACKENDS = (FLOAT, RATIONAL)

# pivots below this fraction of the max-norm count as zero
FLOAT_SINGULAR_RTOL = 1e-13


def check_backend(backend):
    if backend not in BACKENDS:
        raise PreconditionError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return backend


def backend_of(m: np.ndarray) -> str:
    if m.dtype == object:
        return RATIONAL
    if m.dtype == np.float64:
        return FLOAT
    raise PreconditionError(f"unsupported matrix dtype {m.dtype}")


def same_backend(*ms):
    kinds = {backend_of(m) for m in ms}
    if len(kinds) != 1:
        raise PreconditionError("matrices from different backends cannot be combined")
    return kinds.pop()


def convert(x, backend):
    return Fraction(x) if backend == RATIONAL else float(x)


def zeros(n, backend=FLOAT):
    check_backend(backend)
    if backend == FLOAT:
        return np.zeros((n, n))
    out = np.empty((n, n), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n, backend=FLOAT):
    out = zeros(n, backend)
    for i in range(n):
        out[i, i] = convert(1, backend)
    return out


def as_backend(m, backend):
    """Copy of ``m`` converted entrywise to ``backend``."""
    check_backend(backend)
    arr = np.asarray(m, dtype=object if backend == RATIONAL else None)
    if backend == FLOAT:
        return np.array([[float(x) for x in row] for row in arr], dtype=np.float64)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = Fraction(x)
    return out


def _check_square(m):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {m.shape}")


def matmul(a, b):
    same_backend(a, b)
    return a.dot(b)


# -- rational LU ----------------------------------------------------------------

def _lu_rational(m):
    """P·m·Q = L·U with full pivoting on the first exact nonzero.

    Returns (lu, row_perm, col_perm, sign) or None when m is singular.
    """
    n = m.shape[0]
    a = [[Fraction(x) for x in row] for row in m]
    rows = list(range(n))
    cols = list(range(n))
    sign = 1
    for k in range(n):
        pivot = next(((r, c) for c in range(k, n) for r in range(k, n) if a[r][c] != 0), None)
        if pivot is None:
            return None
        r, c = pivot
        if r != k:
            a[k], a[r] = a[r], a[k]
            rows[k], rows[r] = rows[r], rows[k]
            sign = -sign
        if c != k:
            for row in a:
                row[k], row[c] = row[c], row[k]
            cols[k], cols[c] = cols[c], cols[k]
            sign = -sign
        piv = a[k][k]
        for r in range(k + 1, n):
            if a[r][k] == 0:
                continue
            factor = a[r][k] / piv
            a[r][k] = factor
            row, prow = a[r], a[k]
            for c in range(k + 1, n):
                if prow[c]:
                    row[c] -= factor * prow[c]
    return a, rows, cols, sign


def _invert_rational(m):
    n = m.shape[0]
    fact = _lu_rational(m)
    if fact is None:
        raise SingularMatrixError("matrix is singular (no nonzero pivot)")
    lu, rows, cols, _ = fact
    out = zeros(n, RATIONAL)
    for e in range(n):
        # solve L y = P e_col, then U z = y; x = Q z
        y = [Fraction(int(rows[i] == e)) for i in range(n)]
        for i in range(n):
            s = y[i]
            for j in range(i):
                if lu[i][j]:
                    s -= lu[i][j] * y[j]
            y[i] = s
        z = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            s = y[i]
            for j in range(i + 1, n):
                if lu[i][j]:
                    s -= lu[i][j] * z[j]
            z[i] = s / lu[i][i]
        for i in range(n):
            out[cols[i], e] = z[i]
    return out


# -- float LU -------------------------------------------------------------------

def _lu_float(m):
    with warnings.catch_warnings():
        # exact-zero pivots are reported by the callers
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        return scipy.linalg.lu_factor(m, check_finite=True)


def _float_singular(m, lu):
    scale = np.max(np.abs(m)) if m.size else 0.0
    return scale == 0.0 or np.min(np.abs(np.diag(lu))) < FLOAT_SINGULAR_RTOL * scale


def invert(m: np.ndarray) -> np.ndarray:
    """Inverse of a nonsingular square matrix in its own backend."""
    _check_square(m)
    if m.shape[0] == 0:
        return m.copy()
    if backend_of(m) == RATIONAL:
        return _invert_rational(m)
    lu, piv = _lu_float(m)
    if _float_singular(m, lu):
        raise SingularMatrixError("matrix is numerically singular")
    return scipy.linalg.lu_solve((lu, piv), np.eye(m.shape[0]))


def determinant(m: np.ndarray):
    """Determinant from the same LU factorization used by :func:`invert`."""
    _check_square(m)
    n = m.shape[0]
    if backend_of(m) == RATIONAL:
        fact = _lu_rational(m)
        if fact is None:
            return Fraction(0)
        lu, _, _, sign = fact
        det = Fraction(sign)
        for i in range(n):
            det *= lu[i][i]
        return det
    if n == 0:
        return 1.0
    lu, piv = _lu_float(m)
    swaps = int(np.sum(piv != np.arange(n)))
    det = float(np.prod(np.diag(lu)))
    return -det if swaps % 2 else det

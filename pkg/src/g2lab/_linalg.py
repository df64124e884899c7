"""Small mode-aware linear algebra helpers.

Every kernel in this package runs in one of two scalar modes: float64
(default) or exact rationals (``fractions.Fraction`` held in object-dtype
numpy arrays).  numpy's ``dot``/``tensordot`` support object arrays, but
``einsum``, ``matmul`` and most of ``np.linalg`` do not, so the few places
that need an inverse or pseudo-inverse go through the helpers below.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def zeros(shape, exact: bool = False) -> np.ndarray:
    if exact:
        z = np.empty(shape, dtype=object)
        z[...] = Fraction(0)
        return z
    return np.zeros(shape, dtype=float)


def eye(n: int, exact: bool = False) -> np.ndarray:
    if exact:
        m = zeros((n, n), exact=True)
        for i in range(n):
            m[i, i] = Fraction(1)
        return m
    return np.eye(n)


def scalar(x, exact: bool = False):
    return Fraction(x) if exact else float(x)


def as_mode(arr, exact: bool = False) -> np.ndarray:
    """Coerce a nested sequence / array to the requested scalar mode."""
    a = np.asarray(arr)
    if exact:
        out = np.empty(a.shape, dtype=object)
        flat = out.reshape(-1)
        for i, v in enumerate(np.asarray(a, dtype=object).reshape(-1)):
            flat[i] = v if isinstance(v, Fraction) else Fraction(v)
        return out
    return np.asarray(a, dtype=float)


def max_abs(arr) -> float:
    """Largest absolute entry as a plain float (works for Fractions)."""
    a = np.asarray(arr)
    if a.size == 0:
        return 0.0
    return max(abs(float(v)) for v in a.reshape(-1))


def inv_exact(m: np.ndarray) -> np.ndarray:
    """Exact inverse of a square Fraction matrix by Gauss-Jordan."""
    n = m.shape[0]
    a = [[Fraction(m[i, j]) for j in range(n)] for i in range(n)]
    b = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise np.linalg.LinAlgError("exact matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        b[col] = [x / d for x in b[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = b[i][j]
    return out


def pinv(m: np.ndarray) -> np.ndarray:
    """Pseudo-inverse of a full-column-rank matrix, exact when m is exact."""
    if is_exact(m):
        mt = m.T
        return inv_exact(mt.dot(m)).dot(mt)
    return np.linalg.pinv(m)


def lstsq(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if is_exact(m) or is_exact(rhs):
        return pinv(m).dot(rhs)
    sol, *_ = np.linalg.lstsq(m, rhs, rcond=None)
    return sol

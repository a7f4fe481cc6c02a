"""Exact rational linear algebra on numpy object arrays.

Every matrix and vector in the package is an ``np.ndarray`` with
``dtype=object`` holding :class:`fractions.Fraction` entries. Fractions are
always stored in lowest terms with a positive denominator, so two arrays are
equal exactly when their entries are structurally equal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

__all__ = [
    "Fraction",
    "qarray",
    "qzeros",
    "qeye",
    "unit",
    "is_zero",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "invert",
    "format_rational",
    "parse_rational",
]


def parse_rational(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def qarray(data, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Build an object array of Fractions from nested data."""
    if isinstance(data, np.ndarray) and data.dtype != object:
        if data.dtype.kind == "f":
            raise TypeError("floating point arrays are not accepted")
        arr = data.astype(object)
    else:
        arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = parse_rational(v)
    return out


def qzeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def qeye(n: int) -> np.ndarray:
    out = qzeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit(n: int, i: int) -> np.ndarray:
    out = qzeros(n)
    out[i] = Fraction(1)
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in np.asarray(a, dtype=object).flat)


def _rows(m: np.ndarray) -> list[list[Fraction]]:
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    return [[Fraction(v) for v in row] for row in m]


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    # Gauss-Jordan on python lists; skips zero entries since coboundary
    # matrices are very sparse. Pivots are searched in the first ``ncols``
    # columns only, row operations act on whole rows (augmented parts too).
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            pivot_row = [v * inv for v in pivot_row]
            rows[r] = pivot_row
        support = [j for j in range(c, len(pivot_row)) if pivot_row[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            row = rows[i]
            for j in support:
                row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = np.asarray(m, dtype=object)
    rows, pivots = _rref_rows(_rows(m), m.shape[1])
    out = qzeros(m.shape)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out, pivots


def rank(m: np.ndarray) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return len(_rref_rows(_rows(m), m.shape[1])[1])


def kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the null space, one vector per free column of ``rref(m)``."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    rows, pivots = _rref_rows(_rows(m), ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = qzeros(ncols)
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return basis


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Some ``x`` with ``m @ x == b``, or ``None`` if the system is inconsistent."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    if b.ndim != 1 or b.shape[0] != m.shape[0]:
        raise ValueError(f"right-hand side of length {b.shape} does not match {m.shape[0]} rows")
    ncols = m.shape[1]
    aug = [row + [Fraction(bi)] for row, bi in zip(_rows(m), b)]
    rows, pivots = _rref_rows(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = qzeros(ncols)
    for i, p in enumerate(pivots):
        x[p] = rows[i][ncols]
    return x


def invert(m: np.ndarray) -> np.ndarray | None:
    """Exact inverse, or ``None`` when ``m`` is singular."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"cannot invert non-square matrix of shape {m.shape}")
    n = m.shape[0]
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_rows(m))]
    rows, pivots = _rref_rows(aug, n)
    if pivots != list(range(n)):
        return None
    out = qzeros((n, n))
    for i in range(n):
        out[i, :] = rows[i][n:]
    return out


def matrix_power_series(p: np.ndarray, order: int) -> list[np.ndarray]:
    """Coefficients ``[I, P, P^2, ..., P^order]`` of ``(I - tP)^{-1}`` mod ``t^{order+1}``."""
    n = p.shape[0]
    out = [qeye(n)]
    for _ in range(order):
        out.append(out[-1] @ p)
    return out


def stack_columns(vectors: Iterable[np.ndarray], length: int) -> np.ndarray:
    vectors = list(vectors)
    if not vectors:
        return qzeros((length, 0))
    return np.stack(vectors, axis=1)

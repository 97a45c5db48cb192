"""Exact rational matrices.

Matrices are numpy ``object`` arrays whose entries are ``fractions.Fraction``.
Every routine here is exact; nothing is rounded.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


def q(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {x!r} ({type(x).__name__}) as an exact rational")


def qarray(data) -> np.ndarray:
    arr = np.asarray(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = q(x)
    return out


def qzeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def qeye(n: int) -> np.ndarray:
    out = qzeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def is_exact(arr) -> bool:
    arr = np.asarray(arr)
    return arr.dtype == object and all(isinstance(x, Fraction) for x in arr.flat)


def is_zero(arr, tol: float = 0.0) -> bool:
    """True if every entry vanishes; exact entries ignore ``tol``."""
    for x in np.asarray(arr, dtype=object).flat:
        if isinstance(x, Fraction):
            if x != 0:
                return False
        elif abs(x) > tol:
            return False
    return True


def max_abs(arr) -> float:
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return 0.0
    return float(max(abs(x) for x in arr.flat))


def rref(mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = qarray(mat).copy()
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def row_basis(mat) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the row space."""
    mat = np.asarray(mat, dtype=object)
    if mat.size == 0:
        return qzeros(0, mat.shape[-1] if mat.ndim == 2 else 0)
    red, piv = rref(mat)
    return red[: len(piv)]


def rank(mat) -> int:
    mat = np.asarray(mat, dtype=object)
    if mat.size == 0:
        return 0
    return len(rref(mat)[1])


def nullspace(mat, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : mat @ x = 0}, one vector per row.

    The basis is the standard one read off the RREF (free variable set to 1),
    so it is deterministic for a given matrix.
    """
    mat = np.asarray(mat, dtype=object)
    if mat.ndim != 2 or mat.shape[0] == 0:
        n = ncols if ncols is not None else mat.shape[-1]
        return qeye(n)
    n = mat.shape[1]
    red, piv = rref(_drop_zero_rows(mat))
    free = [c for c in range(n) if c not in piv]
    basis = qzeros(len(free), n)
    for k, f in enumerate(free):
        basis[k, f] = ONE
        for r, p in enumerate(piv):
            basis[k, p] = -red[r, f]
    return basis


def _drop_zero_rows(mat: np.ndarray) -> np.ndarray:
    keep = [i for i in range(mat.shape[0]) if any(x != 0 for x in mat[i])]
    if not keep:
        return qzeros(1, mat.shape[1])
    return qarray(mat[keep])


def inv(mat) -> np.ndarray:
    mat = qarray(mat)
    n, m = mat.shape
    if n != m:
        raise ValueError("matrix is not square")
    red, piv = rref(np.hstack([mat, qeye(n)]))
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular")
    return red[:, n:]


def solve(mat, rhs) -> np.ndarray:
    """Solve mat @ x = rhs for square invertible mat (rhs vector or matrix)."""
    return inv(mat) @ qarray(rhs)


def det(mat) -> Fraction:
    m = qarray(mat).copy()
    n = m.shape[0]
    out = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i, c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[[c, piv]] = m[[piv, c]]
            out = -out
        out *= m[c, c]
        for i in range(c + 1, n):
            if m[i, c] != 0:
                m[i] = m[i] - (m[i, c] / m[c, c]) * m[c]
    return out


def to_float(arr) -> np.ndarray:
    return np.asarray(arr, dtype=object).astype(float)


def fmt(x: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" when integral)."""
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_matrix(arr) -> list:
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 1:
        return [fmt(x) for x in arr]
    return [fmt_matrix(row) for row in arr]

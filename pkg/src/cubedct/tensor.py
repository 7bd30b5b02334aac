"""Dense tensor algebra: the mode-i product.

A tensor of order R is a plain float ndarray with R axes, stored row-major
with the last index fastest.  The mode-i product contracts axis i (modes are
numbered 1..R) with the columns of a matrix M of shape (H, N_i):

    out[n_1, ..., h, ..., n_R] = sum_{n_i} t[n_1, ..., n_i, ..., n_R] * M[h, n_i]

Every operation returns a fresh array and never mutates its inputs, so values
can be shared freely between threads.
"""

from __future__ import annotations

import numpy as np


def i_mode_product(t: np.ndarray, m: np.ndarray, mode: int) -> np.ndarray:
    """Contract tensor axis ``mode`` (1-based) with matrix ``m``.

    ``m.shape[1]`` must equal the length of the contracted axis; the result
    replaces that axis length with ``m.shape[0]``.
    """
    t = np.asarray(t, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"mode product needs a 2-D matrix, got ndim={m.ndim}")
    order = t.ndim
    if order < 1:
        raise ValueError("mode product needs a tensor of order >= 1")
    if not 1 <= mode <= order:
        raise ValueError(f"mode {mode} out of range for order-{order} tensor")
    axis = mode - 1
    if m.shape[1] != t.shape[axis]:
        raise ValueError(
            f"matrix has {m.shape[1]} columns but tensor axis {mode} "
            f"has length {t.shape[axis]}"
        )
    moved = np.moveaxis(t, axis, -1)
    out = moved @ m.T
    return np.ascontiguousarray(np.moveaxis(out, -1, axis))


def tensor_equal_within(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """True iff shapes match and no entry differs by more than ``tol``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b)) <= tol)

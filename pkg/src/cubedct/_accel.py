"""Backend dispatch for the batched cube kernels.

The per-cube separable transform and the quantisation rounding are the two
inner loops that dominate codec runtime.  Both exist in a numba-compiled
variant and a pure-numpy variant.  The active backend is chosen once at
import time from the ``CUBEDCT_BACKEND`` environment variable:

* ``auto`` (default): numba when importable, numpy otherwise
* ``numba``: require numba, fail loudly if missing
* ``numpy``: force the vectorised numpy path

Both variants are kept importable so they can be compared directly (see
``benchmarks/bench_backends.py``).
"""

from __future__ import annotations

import math
import os

import numpy as np

_ENV = os.environ.get("CUBEDCT_BACKEND", "auto").strip().lower()
if _ENV not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"CUBEDCT_BACKEND must be one of auto/numba/numpy, got {_ENV!r}"
    )

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

if _ENV == "numba" and not HAVE_NUMBA:
    raise ImportError("CUBEDCT_BACKEND=numba requested but numba is not installed")

ACTIVE_BACKEND = "numba" if (HAVE_NUMBA and _ENV != "numpy") else "numpy"


def separable_3d_batch_numpy(cubes: np.ndarray, m1: np.ndarray,
                             m2: np.ndarray, m3: np.ndarray) -> np.ndarray:
    """Contract axis r of every cube with matrix ``mr`` (r = 1, 2, 3)."""
    out = np.einsum("ri,bijk->brjk", m1, cubes)
    out = np.einsum("rj,bijk->birk", m2, out)
    out = np.einsum("rk,bijk->bijr", m3, out)
    return out


def quantize_batch_numpy(values: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """Divide by the step field and round half away from zero."""
    ratio = values / steps
    return (np.sign(ratio) * np.floor(np.abs(ratio) + 0.5)).astype(np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _separable_3d_batch_jit(cubes, m1, m2, m3):  # pragma: no cover
        nb, n1, n2, n3 = cubes.shape
        p1, p2, p3 = m1.shape[0], m2.shape[0], m3.shape[0]
        out = np.empty((nb, p1, p2, p3))
        t1 = np.empty((p1, n2, n3))
        t2 = np.empty((p1, p2, n3))
        for b in range(nb):
            for r in range(p1):
                for j in range(n2):
                    for k in range(n3):
                        acc = 0.0
                        for i in range(n1):
                            acc += m1[r, i] * cubes[b, i, j, k]
                        t1[r, j, k] = acc
            for i in range(p1):
                for r in range(p2):
                    for k in range(n3):
                        acc = 0.0
                        for j in range(n2):
                            acc += m2[r, j] * t1[i, j, k]
                        t2[i, r, k] = acc
            for i in range(p1):
                for j in range(p2):
                    for r in range(p3):
                        acc = 0.0
                        for k in range(n3):
                            acc += m3[r, k] * t2[i, j, k]
                        out[b, i, j, r] = acc
        return out

    @njit(cache=True)
    def _quantize_batch_jit(values, steps):  # pragma: no cover
        flat_v = values.reshape(-1, steps.size)
        flat_s = steps.reshape(steps.size)
        out = np.empty(flat_v.shape, dtype=np.int64)
        for b in range(flat_v.shape[0]):
            for i in range(flat_s.size):
                r = flat_v[b, i] / flat_s[i]
                if r < 0.0:
                    out[b, i] = np.int64(-math.floor(-r + 0.5))
                else:
                    out[b, i] = np.int64(math.floor(r + 0.5))
        return out.reshape(values.shape)

    def separable_3d_batch_numba(cubes, m1, m2, m3):
        return _separable_3d_batch_jit(
            np.ascontiguousarray(cubes, dtype=np.float64),
            np.ascontiguousarray(m1, dtype=np.float64),
            np.ascontiguousarray(m2, dtype=np.float64),
            np.ascontiguousarray(m3, dtype=np.float64),
        )

    def quantize_batch_numba(values, steps):
        return _quantize_batch_jit(
            np.ascontiguousarray(values, dtype=np.float64),
            np.ascontiguousarray(steps, dtype=np.float64),
        )

else:
    separable_3d_batch_numba = None
    quantize_batch_numba = None


if ACTIVE_BACKEND == "numba":
    separable_3d_batch = separable_3d_batch_numba
    quantize_batch = quantize_batch_numba
else:
    separable_3d_batch = separable_3d_batch_numpy
    quantize_batch = quantize_batch_numpy

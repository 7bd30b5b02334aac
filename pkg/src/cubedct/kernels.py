"""Transform kernels: the exact DCT and eight multiplierless approximations.

Each approximate kernel is the product C = S * T of a low-complexity matrix T
whose entries are restricted to {0, +-1, +-1/2} and a diagonal scaling
S = sqrt(diag(T * T')^-1) that normalises every row of C to unit Euclidean
norm.  T carries all the arithmetic; S can be absorbed into a subsequent
scaling stage (quantisation, for instance) so the transform itself needs no
multiplications.

The T matrices and the declared operation counts of each kernel's published
fast algorithm are embedded verbatim as module data.  The orthogonality flag
is always computed numerically at registration, never hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: Registry order; also the tie-break order used by the trade-off sweep and
#: the byte codes of the coded-stream header.
KERNEL_IDS = (
    "DCT",
    "SDCT",
    "LODCT",
    "RDCT",
    "MRDCT",
    "BAS2008",
    "BAS2009",
    "BAS2013",
    "IADCT",
)

_ORTHOGONALITY_TOL = 1e-10
_INVERSE_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class CostPoint:
    """Arithmetic operation counts (multiplications, additions, bit-shifts)."""

    mult: int
    add: int
    shift: int

    def __post_init__(self) -> None:
        if min(self.mult, self.add, self.shift) < 0:
            raise ValueError("operation counts must be non-negative")

    @property
    def total(self) -> int:
        return self.mult + self.add + self.shift


@dataclass(frozen=True)
class KernelSpec:
    """A named transform kernel C = S * T with its declared 1-D cost."""

    kernel_id: str
    size: int
    t_matrix: np.ndarray
    s_diag: np.ndarray
    orthogonal: bool
    cost_1d: CostPoint

    @property
    def c_hat(self) -> np.ndarray:
        """The full transform matrix S * T (rows have unit norm)."""
        return self.s_diag[:, None] * self.t_matrix


H = 0.5

_T_MATRICES = {
    "SDCT": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, -1, -1, -1, -1],
        [1, 1, -1, -1, -1, -1, 1, 1],
        [1, -1, -1, -1, 1, 1, 1, -1],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [1, -1, 1, 1, -1, -1, 1, -1],
        [1, -1, 1, -1, -1, 1, -1, 1],
        [1, -1, 1, -1, 1, -1, 1, -1],
    ],
    "LODCT": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 0, 0, -1, -1, -1],
        [1, H, -H, -1, -1, -H, H, 1],
        [1, 0, -1, -1, 1, 1, 0, -1],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [1, -1, 0, 1, -1, 0, 1, -1],
        [H, -1, 1, -H, -H, 1, -1, H],
        [0, -1, 1, -1, 1, -1, 1, 0],
    ],
    "RDCT": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 0, 0, -1, -1, -1],
        [1, 0, 0, -1, -1, 0, 0, 1],
        [1, 0, -1, -1, 1, 1, 0, -1],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [1, -1, 0, 1, -1, 0, 1, -1],
        [0, -1, 1, 0, 0, 1, -1, 0],
        [0, -1, 1, -1, 1, -1, 1, 0],
    ],
    "MRDCT": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 0, 0, 0, 0, 0, 0, -1],
        [1, 0, 0, -1, -1, 0, 0, 1],
        [0, 0, -1, 0, 0, 1, 0, 0],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [0, -1, 0, 0, 0, 0, 1, 0],
        [0, -1, 1, 0, 0, 1, -1, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
    ],
    "BAS2008": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 0, 0, 0, 0, -1, -1],
        [1, H, -H, -1, -1, -H, H, 1],
        [0, 0, -1, 0, 0, 1, 0, 0],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [1, -1, 0, 0, 0, 0, 1, -1],
        [H, -1, 1, -H, -H, 1, -1, H],
        [0, 0, 0, -1, 1, 0, 0, 0],
    ],
    "BAS2009": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 0, 0, 0, 0, -1, -1],
        [1, 1, -1, -1, -1, -1, 1, 1],
        [0, 0, -1, 0, 0, 1, 0, 0],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [1, -1, 0, 0, 0, 0, 1, -1],
        [1, -1, 1, -1, -1, 1, -1, 1],
        [0, 0, 0, -1, 1, 0, 0, 0],
    ],
    "BAS2013": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, -1, -1, -1, -1],
        [1, 1, -1, -1, -1, -1, 1, 1],
        [1, 1, -1, -1, 1, 1, -1, -1],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [1, -1, -1, 1, -1, 1, 1, -1],
        [1, -1, 1, -1, -1, 1, -1, 1],
        [1, -1, 1, -1, 1, -1, 1, -1],
    ],
    "IADCT": [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 1, 0, 0, 0, 0, -1, 0],
        [1, 0, 0, -1, -1, 0, 0, 1],
        [1, 0, 0, 0, 0, 0, 0, -1],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, -1, 1, 0, 0, 1, -1, 0],
        [0, 0, 1, 0, 0, -1, 0, 0],
    ],
}

# Declared 1-D operation counts (mult, add, shift) of each kernel's fast
# algorithm.  The exact DCT defaults to the Loeffler algorithm counts; the
# naive definition counts are available through get_kernel(definition_cost=).
_COST_1D = {
    "DCT": (11, 29, 0),
    "SDCT": (0, 24, 0),
    "LODCT": (0, 24, 2),
    "RDCT": (0, 22, 0),
    "MRDCT": (0, 14, 0),
    "BAS2008": (0, 18, 2),
    "BAS2009": (0, 18, 0),
    "BAS2013": (0, 24, 0),
    "IADCT": (0, 14, 0),
}

DCT_DEFINITION_COST_8 = CostPoint(64, 56, 0)


def build_dct_matrix(n: int) -> np.ndarray:
    """Exact orthonormal DCT-II matrix of order ``n``.

    Entry (k, m) is alpha_n[k] * cos(pi * (2m + 1) * k / (2n)) with
    alpha_n[0] = sqrt(1/n) and alpha_n[k>0] = sqrt(2/n).
    """
    if n < 2:
        raise ValueError(f"DCT blocklength must be >= 2, got {n}")
    k = np.arange(n, dtype=np.float64)[:, None]
    m = np.arange(n, dtype=np.float64)[None, :]
    alpha = math.sqrt(1.0 / n) * np.where(k == 0, 1.0, math.sqrt(2.0))
    return alpha * np.cos(np.pi * (2.0 * m + 1.0) * k / (2.0 * n))


def scaling_diag(t_matrix: np.ndarray) -> np.ndarray:
    """Row-normalising diagonal d_k = 1 / sqrt(sum_n t[k, n]^2)."""
    t = np.asarray(t_matrix, dtype=np.float64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("scaling diagonal is defined for square matrices")
    norms2 = (t * t).sum(axis=1)
    if np.any(norms2 == 0.0):
        raise ValueError("matrix has a zero row, scaling diagonal is singular")
    return 1.0 / np.sqrt(norms2)


def kernel_from_matrix(kernel_id: str, t_matrix: np.ndarray,
                       cost_1d: CostPoint) -> KernelSpec:
    """Assemble a KernelSpec, computing S and the orthogonality flag."""
    t = np.array(t_matrix, dtype=np.float64)
    d = scaling_diag(t)
    c = d[:, None] * t
    residual = np.max(np.abs(c @ c.T - np.eye(t.shape[0])))
    t.setflags(write=False)
    d.setflags(write=False)
    return KernelSpec(
        kernel_id=kernel_id,
        size=t.shape[0],
        t_matrix=t,
        s_diag=d,
        orthogonal=bool(residual < _ORTHOGONALITY_TOL),
        cost_1d=cost_1d,
    )


@lru_cache(maxsize=None)
def get_kernel(kernel_id: str, size: int = 8,
               definition_cost: bool = False) -> KernelSpec:
    """Look up a kernel by name.

    Approximations exist only for blocklength 8.  The exact DCT is available
    for any ``size`` >= 2; at size 8 its declared cost is the Loeffler count
    (11, 29, 0) unless ``definition_cost`` requests the direct matrix product
    count (n^2 multiplications, n(n-1) additions).
    """
    if kernel_id not in KERNEL_IDS:
        raise ValueError(f"unknown kernel {kernel_id!r}, expected one of {KERNEL_IDS}")
    if kernel_id == "DCT":
        if size == 8 and not definition_cost:
            cost = CostPoint(*_COST_1D["DCT"])
        else:
            cost = CostPoint(size * size, size * (size - 1), 0)
        return kernel_from_matrix("DCT", build_dct_matrix(size), cost)
    if size != 8:
        raise ValueError(f"{kernel_id} is defined for blocklength 8 only, got {size}")
    return kernel_from_matrix(kernel_id, _T_MATRICES[kernel_id],
                              CostPoint(*_COST_1D[kernel_id]))


def inverse_kernel(kernel: KernelSpec) -> np.ndarray:
    """Inverse transform matrix: T' * S when orthogonal, else T^-1 * S^-1."""
    if kernel.orthogonal:
        inv = kernel.t_matrix.T * kernel.s_diag[None, :]
    else:
        try:
            t_inv = np.linalg.inv(kernel.t_matrix)
        except np.linalg.LinAlgError as exc:
            raise ValueError(f"kernel {kernel.kernel_id} is singular") from exc
        inv = t_inv * (1.0 / kernel.s_diag)[None, :]
    residual = np.max(np.abs(inv @ kernel.c_hat - np.eye(kernel.size)))
    if not residual < _INVERSE_RESIDUAL_TOL:
        raise ValueError(
            f"kernel {kernel.kernel_id} is numerically singular "
            f"(inverse residual {residual:.3e})"
        )
    return inv

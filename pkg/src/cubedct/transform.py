"""Separable R-dimensional transforms built from chained mode products.

The forward transform applies one kernel matrix per axis, in axis order
1..R.  Mode products along distinct axes commute, so the order is a fixed
convention rather than a semantic choice.

A plan may request the split evaluation: only the low-complexity matrices T
are applied (the multiplierless stage) and the per-axis scaling diagonals are
returned alongside, ready to be folded into whatever scaling stage follows.
Multiplying entry (k_1, ..., k_R) of the split result by
d_{k_1} * ... * d_{k_R} reproduces the plain forward output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .kernels import KernelSpec, get_kernel, inverse_kernel
from .tensor import i_mode_product


@dataclass(frozen=True)
class TransformPlan:
    """One kernel per axis plus the split-evaluation switch."""

    kernels: tuple[KernelSpec, ...]
    split_diagonal: bool = False

    def __post_init__(self) -> None:
        if not self.kernels:
            raise ValueError("a transform plan needs at least one kernel")

    @property
    def order(self) -> int:
        return len(self.kernels)


class SplitForward(NamedTuple):
    """Result of a split forward pass: tensor of the T-only stage + diagonals."""

    tensor: np.ndarray
    diagonals: tuple[np.ndarray, ...]


def plan_for(kernel_id: str, dims: Iterable[int],
             split_diagonal: bool = False) -> TransformPlan:
    """Plan using the named kernel on every axis of the given lengths."""
    kernels = tuple(get_kernel(kernel_id, n) for n in dims)
    return TransformPlan(kernels=kernels, split_diagonal=split_diagonal)


def hybrid_plan(approx_id: str, exact_axes: Iterable[int],
                dims: Iterable[int]) -> TransformPlan:
    """Plan mixing the exact DCT (on ``exact_axes``, 1-based) with an
    approximation elsewhere.

    Useful while a buffer fills along one axis: that axis can run the exact
    DCT at its current (possibly short) length while the settled axes keep
    the multiplierless kernel.
    """
    dims = tuple(dims)
    exact = set(exact_axes)
    bad = sorted(a for a in exact if not 1 <= a <= len(dims))
    if bad:
        raise ValueError(f"exact axes {bad} out of range for {len(dims)} dims")
    kernels = tuple(
        get_kernel("DCT" if axis in exact else approx_id, n)
        for axis, n in enumerate(dims, start=1)
    )
    return TransformPlan(kernels=kernels)


def _check_dims(t: np.ndarray, plan: TransformPlan) -> None:
    if t.ndim != plan.order:
        raise ValueError(
            f"plan has {plan.order} axes but tensor has order {t.ndim}"
        )
    for axis, kernel in enumerate(plan.kernels):
        if t.shape[axis] != kernel.size:
            raise ValueError(
                f"axis {axis + 1} has length {t.shape[axis]} but kernel "
                f"{kernel.kernel_id} expects {kernel.size}"
            )


def forward(t: np.ndarray, plan: TransformPlan):
    """Forward transform along every axis.

    Returns the transformed tensor, or a :class:`SplitForward` when the plan
    requests the split evaluation.
    """
    t = np.asarray(t, dtype=np.float64)
    _check_dims(t, plan)
    if plan.split_diagonal:
        out = t
        for axis, kernel in enumerate(plan.kernels, start=1):
            out = i_mode_product(out, kernel.t_matrix, axis)
        return SplitForward(out, tuple(k.s_diag for k in plan.kernels))
    out = t
    for axis, kernel in enumerate(plan.kernels, start=1):
        out = i_mode_product(out, kernel.c_hat, axis)
    return out


def inverse(y: np.ndarray, plan: TransformPlan) -> np.ndarray:
    """Inverse transform along every axis (plans are applied full, never split)."""
    y = np.asarray(y, dtype=np.float64)
    _check_dims(y, plan)
    out = y
    for axis, kernel in enumerate(plan.kernels, start=1):
        out = i_mode_product(out, inverse_kernel(kernel), axis)
    return out


def forward_1d(x: np.ndarray, kernel: KernelSpec) -> np.ndarray:
    """One-dimensional transform C * x."""
    return forward(x, TransformPlan(kernels=(kernel,)))


def forward_2d(a: np.ndarray, kernel: KernelSpec) -> np.ndarray:
    """Two-dimensional transform C * A * C'."""
    return forward(a, TransformPlan(kernels=(kernel, kernel)))


def diagonal_scale_field(diagonals: Iterable[np.ndarray]) -> np.ndarray:
    """Outer product d_{k_1} * ... * d_{k_R} as a full tensor field."""
    diags = [np.asarray(d, dtype=np.float64) for d in diagonals]
    field = diags[0]
    for d in diags[1:]:
        field = field[..., None] * d
    return field

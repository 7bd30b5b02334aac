"""Quality metrics: coding gain, transform efficiency, PSNR, MSSIM, PBM.

Coding gain and transform efficiency are evaluated on a first-order
autoregressive source with covariance r[i, j] = rho^|i - j| (unit variance),
the standard model for strongly correlated media samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from .kernels import KernelSpec, inverse_kernel
from .video import FrameSequence

PEAK = 255.0

# Structural-similarity constants: regularisers (K1*L)^2 / (K2*L)^2 and an
# 11x11 Gaussian weighting window with sigma = 1.5, applied to luma only.
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03
_SSIM_C1 = (_SSIM_K1 * PEAK) ** 2
_SSIM_C2 = (_SSIM_K2 * PEAK) ** 2
_SSIM_WINDOW_SIZE = 11
_SSIM_SIGMA = 1.5


def _gaussian_window(size: int, sigma: float) -> np.ndarray:
    half = (size - 1) / 2.0
    coords = np.arange(size, dtype=np.float64) - half
    g = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    window = np.outer(g, g)
    return window / window.sum()


_SSIM_WINDOW = _gaussian_window(_SSIM_WINDOW_SIZE, _SSIM_SIGMA)


@dataclass(frozen=True)
class Ar1Model:
    """First-order Markov source: correlation rho, blocklength size."""

    rho: float
    size: int

    def __post_init__(self) -> None:
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must be in (0, 1), got {self.rho}")
        if self.size < 1:
            raise ValueError("blocklength must be positive")

    def covariance(self) -> np.ndarray:
        idx = np.arange(self.size)
        return self.rho ** np.abs(idx[:, None] - idx[None, :])


def coding_gain(kernel: KernelSpec, model: Ar1Model) -> float:
    """Coding gain in dB of the kernel over the AR(1) source.

    Generalised to possibly non-orthogonal kernels: each band variance
    (diagonal of C R C') is weighted by the squared norm of the matching row
    of the inverse matrix before taking the geometric mean.  The weights are
    all 1 for orthogonal kernels, where this reduces to
    10 log10(arithmetic mean / geometric mean) of the band variances.
    """
    if kernel.size != model.size:
        raise ValueError(
            f"kernel blocklength {kernel.size} != model blocklength {model.size}"
        )
    c = kernel.c_hat
    v = c @ model.covariance() @ c.T
    variances = np.diag(v)
    if np.any(variances <= 0.0):
        raise ValueError("covariance produced a non-positive band variance")
    weights = (inverse_kernel(kernel) ** 2).sum(axis=1)
    return float(-10.0 / kernel.size * np.sum(np.log10(variances * weights)))


def transform_efficiency(kernel: KernelSpec, model: Ar1Model) -> float:
    """Share (percent) of transformed covariance energy on the diagonal."""
    if kernel.size != model.size:
        raise ValueError(
            f"kernel blocklength {kernel.size} != model blocklength {model.size}"
        )
    c = kernel.c_hat
    v = c @ model.covariance() @ c.T
    return float(100.0 * np.abs(np.diag(v)).sum() / np.abs(v).sum())


def mse_3d(t: np.ndarray, t_hat: np.ndarray) -> float:
    """Mean squared entrywise error between two equally shaped tensors."""
    t = np.asarray(t, dtype=np.float64)
    t_hat = np.asarray(t_hat, dtype=np.float64)
    if t.shape != t_hat.shape:
        raise ValueError(f"shape mismatch {t.shape} vs {t_hat.shape}")
    diff = t - t_hat
    return float(np.mean(diff * diff))


def psnr(mse: float) -> float:
    """Peak signal-to-noise ratio in dB for 8-bit data; +inf when mse == 0."""
    if mse < 0.0:
        raise ValueError("mse must be non-negative")
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def ssim(reference: np.ndarray, test: np.ndarray) -> float:
    """Mean structural similarity of one 8-bit greyscale frame pair.

    Local means/variances use the Gaussian window; the map is evaluated only
    where the window fits entirely inside the frame.
    """
    x = np.asarray(reference, dtype=np.float64)
    y = np.asarray(test, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    if min(x.shape) < _SSIM_WINDOW_SIZE:
        raise ValueError(
            f"frame must be at least {_SSIM_WINDOW_SIZE} pixels on each side"
        )
    w = _SSIM_WINDOW
    mu_x = convolve2d(x, w, mode="valid")
    mu_y = convolve2d(y, w, mode="valid")
    var_x = convolve2d(x * x, w, mode="valid") - mu_x * mu_x
    var_y = convolve2d(y * y, w, mode="valid") - mu_y * mu_y
    cov = convolve2d(x * y, w, mode="valid") - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + _SSIM_C1) * (2.0 * cov + _SSIM_C2)
    den = (mu_x * mu_x + mu_y * mu_y + _SSIM_C1) * (var_x + var_y + _SSIM_C2)
    return float(np.mean(num / den))


def mssim(reference: np.ndarray, test: np.ndarray) -> float:
    """Frame-averaged SSIM over stacks of frames shaped (frames, h, w)."""
    ref = np.asarray(reference)
    tst = np.asarray(test)
    if ref.shape != tst.shape:
        raise ValueError(f"shape mismatch {ref.shape} vs {tst.shape}")
    if ref.ndim != 3:
        raise ValueError("expected a (frames, height, width) stack")
    return float(np.mean([ssim(ref[f], tst[f]) for f in range(ref.shape[0])]))


def video_psnr(reference: FrameSequence, test: FrameSequence,
               luma_only: bool = False) -> float:
    """PSNR of a decoded video; chroma planes pool into the MSE unless
    ``luma_only`` is set."""
    if (reference.width, reference.height, reference.frames) != (
            test.width, test.height, test.frames):
        raise ValueError("geometry mismatch between reference and test video")
    planes = [(reference.y, test.y)]
    if not luma_only:
        planes += [(reference.cb, test.cb), (reference.cr, test.cr)]
    sq_sum = 0.0
    count = 0
    for ref_plane, test_plane in planes:
        diff = ref_plane.astype(np.float64) - test_plane.astype(np.float64)
        sq_sum += float(np.sum(diff * diff))
        count += diff.size
    return psnr(sq_sum / count)


def video_mssim(reference: FrameSequence, test: FrameSequence) -> float:
    """Frame-averaged structural similarity on the luma plane."""
    return mssim(reference.y, test.y)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box in pixel units, anchored at its top-left corner."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError("box width and height must be non-negative")

    @property
    def centroid(self) -> tuple[float, float]:
        return (self.x + self.width / 2.0, self.y + self.height / 2.0)

    def intersects(self, other: "BoundingBox") -> bool:
        return (
            self.x <= other.x + other.width
            and other.x <= self.x + self.width
            and self.y <= other.y + other.height
            and other.y <= self.y + self.height
        )


def pbm(tracked: BoundingBox, truth: BoundingBox) -> float:
    """Position-based tracking score in [0, 1].

    1 means coincident centroids; 0 means the boxes do not overlap at all.
    The centroid distance is normalised by half the summed box extents.
    """
    threshold = (tracked.width + tracked.height + truth.width + truth.height) / 2.0
    if threshold == 0.0:
        raise ValueError("degenerate boxes: combined extent is zero")
    if tracked.intersects(truth):
        tx, ty = tracked.centroid
        gx, gy = truth.centroid
        distance = math.hypot(tx - gx, ty - gy)
    else:
        distance = threshold
    value = 1.0 - distance / threshold
    return min(1.0, max(0.0, value))

"""Independent reference implementations used as test oracles.

Everything here is written as plain nested loops straight from the defining
formulas, deliberately ignoring the vectorised code paths under test.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.ndimage import gaussian_filter

from cubedct.video import FrameSequence


def mode_product_loops(t: np.ndarray, m: np.ndarray, mode: int) -> np.ndarray:
    """Direct evaluation: out[..., h, ...] = sum_n t[..., n, ...] * m[h, n]."""
    t = np.asarray(t, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    axis = mode - 1
    out_shape = list(t.shape)
    out_shape[axis] = m.shape[0]
    out = np.zeros(out_shape)
    for idx in np.ndindex(*out_shape):
        h = idx[axis]
        acc = 0.0
        for n in range(t.shape[axis]):
            src = list(idx)
            src[axis] = n
            acc += t[tuple(src)] * m[h, n]
        out[idx] = acc
    return out


def separable_3d_loops(t: np.ndarray, m1: np.ndarray, m2: np.ndarray,
                       m3: np.ndarray) -> np.ndarray:
    """Sextuple-loop separable transform of one order-3 tensor."""
    n1, n2, n3 = t.shape
    p1, p2, p3 = m1.shape[0], m2.shape[0], m3.shape[0]
    out = np.zeros((p1, p2, p3))
    for k1 in range(p1):
        for k2 in range(p2):
            for k3 in range(p3):
                acc = 0.0
                for a in range(n1):
                    for b in range(n2):
                        for c in range(n3):
                            acc += t[a, b, c] * m1[k1, a] * m2[k2, b] * m3[k3, c]
                out[k1, k2, k3] = acc
    return out


def mse_loops(t: np.ndarray, t_hat: np.ndarray) -> float:
    total = 0.0
    for idx in np.ndindex(*t.shape):
        e = t[idx] - t_hat[idx]
        total += e * e
    return total / t.size


def round_half_away(x: float) -> float:
    return math.copysign(math.floor(abs(x) + 0.5), x) if x else 0.0


def ssim_loops(reference: np.ndarray, test: np.ndarray) -> float:
    """Windowed structural similarity straight from the defining statistics."""
    x = np.asarray(reference, dtype=np.float64)
    y = np.asarray(test, dtype=np.float64)
    size, sigma = 11, 1.5
    half = (size - 1) / 2.0
    coords = np.arange(size) - half
    g = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    w = np.outer(g, g)
    w /= w.sum()
    c1 = (0.01 * 255.0) ** 2
    c2 = (0.03 * 255.0) ** 2
    rows = x.shape[0] - size + 1
    cols = x.shape[1] - size + 1
    total = 0.0
    for r in range(rows):
        for c in range(cols):
            wx = x[r:r + size, c:c + size]
            wy = y[r:r + size, c:c + size]
            mx = float((w * wx).sum())
            my = float((w * wy).sum())
            vx = float((w * wx * wx).sum()) - mx * mx
            vy = float((w * wy * wy).sum()) - my * my
            cov = float((w * wx * wy).sum()) - mx * my
            num = (2 * mx * my + c1) * (2 * cov + c2)
            den = (mx * mx + my * my + c1) * (vx + vy + c2)
            total += num / den
    return total / (rows * cols)


def full_path_quantize(cubes: np.ndarray, c_hat: np.ndarray, q: np.ndarray,
                       quality: float) -> np.ndarray:
    """Quantised integers of the fully scaled transform (no split evaluation)."""
    y = np.einsum("ai,bj,ck,nijk->nabc", c_hat, c_hat, c_hat, cubes)
    ratio = y / (quality * q)
    return (np.sign(ratio) * np.floor(np.abs(ratio) + 0.5)).astype(np.int64)


def correlated_plane(shape: tuple[int, int, int], seed: int) -> np.ndarray:
    """Smooth random field scaled to the full 8-bit range.

    Gaussian smoothing gives the strong spatial and temporal correlation the
    codec comparisons rely on; white noise would not separate the kernels.
    """
    rng = np.random.default_rng(seed)
    field = gaussian_filter(rng.normal(size=shape), sigma=(1.5, 2.5, 2.5),
                            mode="wrap")
    field -= field.min()
    peak = field.max()
    if peak > 0:
        field *= 255.0 / peak
    return np.round(field).astype(np.uint8)


def correlated_clip(width: int, height: int, frames: int,
                    seed: int) -> FrameSequence:
    return FrameSequence(
        width=width, height=height, frames=frames,
        y=correlated_plane((frames, height, width), seed),
        cb=correlated_plane((frames, height // 2, width // 2), seed + 1),
        cr=correlated_plane((frames, height // 2, width // 2), seed + 2),
    )


def noise_clip(width: int, height: int, frames: int, seed: int) -> FrameSequence:
    rng = np.random.default_rng(seed)
    return FrameSequence(
        width=width, height=height, frames=frames,
        y=rng.integers(0, 256, (frames, height, width), dtype=np.uint8),
        cb=rng.integers(0, 256, (frames, height // 2, width // 2), dtype=np.uint8),
        cr=rng.integers(0, 256, (frames, height // 2, width // 2), dtype=np.uint8),
    )

#!/usr/bin/env python3
"""Benchmark the numba and numpy backends on the codec hot path.

Times the batched cube transform, the quantisation rounding, and a full
encode/decode of a synthetic clip, then prints per-stage speedups.
Coded streams from the two backends are checked for bit equality.

Usage:
    python benchmarks/bench_backends.py [--width 352] [--height 288]
                                        [--frames 64] [--repeat 3]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

import cubedct.codec as codec
from cubedct import _accel, default_quant_volume, get_kernel
from cubedct.video import FrameSequence


def synthetic_clip(width: int, height: int, frames: int, seed: int = 1234):
    rng = np.random.default_rng(seed)

    def plane(f, h, w):
        t = np.linspace(0, 4 * np.pi, f)[:, None, None]
        yy = np.linspace(0, 2 * np.pi, h)[None, :, None]
        xx = np.linspace(0, 2 * np.pi, w)[None, None, :]
        wave = 96 * np.sin(xx + 0.5 * t) * np.cos(yy - 0.3 * t) + 128
        noisy = wave + rng.normal(0, 4, (f, h, w))
        return np.clip(np.round(noisy), 0, 255).astype(np.uint8)

    return FrameSequence(
        width=width, height=height, frames=frames,
        y=plane(frames, height, width),
        cb=plane(frames, height // 2, width // 2),
        cr=plane(frames, height // 2, width // 2),
    )


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--width", type=int, default=352)
    parser.add_argument("--height", type=int, default=288)
    parser.add_argument("--frames", type=int, default=64)
    parser.add_argument("--kernel", default="RDCT")
    parser.add_argument("--quality", type=float, default=0.5)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1

    clip = synthetic_clip(args.width, args.height, args.frames)
    kernel = get_kernel(args.kernel)
    t = kernel.t_matrix
    cubes, _ = codec.tile(clip.y.astype(np.float64))
    steps = args.quality * codec.QuantVolume.for_kernel(
        default_quant_volume(), kernel).q_star
    stage = _accel.separable_3d_batch_numpy(cubes, t, t, t)
    print(f"clip {args.width}x{args.height}x{args.frames}, kernel "
          f"{args.kernel}, {cubes.shape[0]} luma cubes")

    # warm up the jit before timing
    _accel.separable_3d_batch_numba(cubes[:8], t, t, t)
    _accel.quantize_batch_numba(stage[:8], steps)

    rows = []
    rows.append((
        "cube transform",
        best_of(lambda: _accel.separable_3d_batch_numpy(cubes, t, t, t), args.repeat),
        best_of(lambda: _accel.separable_3d_batch_numba(cubes, t, t, t), args.repeat),
    ))
    rows.append((
        "quantise",
        best_of(lambda: _accel.quantize_batch_numpy(stage, steps), args.repeat),
        best_of(lambda: _accel.quantize_batch_numba(stage, steps), args.repeat),
    ))

    def full_pass(separable, quantize):
        codec.separable_3d_batch = separable
        codec.quantize_batch = quantize
        try:
            stream = codec.encode(clip, kernel, args.quality)
            codec.decode(stream)
            return stream
        finally:
            codec.separable_3d_batch = _accel.separable_3d_batch
            codec.quantize_batch = _accel.quantize_batch

    stream_numpy = full_pass(_accel.separable_3d_batch_numpy,
                             _accel.quantize_batch_numpy)
    stream_numba = full_pass(_accel.separable_3d_batch_numba,
                             _accel.quantize_batch_numba)
    identical = stream_numpy.to_bytes() == stream_numba.to_bytes()

    rows.append((
        "encode+decode",
        best_of(lambda: full_pass(_accel.separable_3d_batch_numpy,
                                  _accel.quantize_batch_numpy), args.repeat),
        best_of(lambda: full_pass(_accel.separable_3d_batch_numba,
                                  _accel.quantize_batch_numba), args.repeat),
    ))

    print(f"{'stage':<16}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
    for name, t_np, t_nb in rows:
        print(f"{name:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.2f}x")
    print(f"coded streams bit-identical: {identical}")
    return 0 if identical else 1


if __name__ == "__main__":
    sys.exit(main())

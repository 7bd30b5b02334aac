"""Interframe video codec built on 8x8x8 cube transforms.

Pipeline per plane: pad to multiples of 8 by edge replication, tile into
cubes of 8 frames x 8 rows x 8 columns, run the multiplierless T stage of
the chosen kernel on each cube, then quantise with a modified step volume
that absorbs the kernel's scaling diagonals.  Cube axes are
(k1, k2, k3) = (time, row, column).

Quantisation volumes
--------------------
Given a base volume q and a kernel with scaling diagonal d, the encoder
divides by q*(k1,k2,k3) = q / (d_k1 * d_k2 * d_k3), which makes the rounded
integers identical to quantising the fully scaled transform by q.  The
decoder multiplies by q°(k1,k2,k3) = q * (d_k1 * d_k2 * d_k3), which folds
the inverse transform's diagonal stage into the same table, so the decoder's
matrix stage is again free of scaling work (the plain transposed T for
orthogonal kernels).  The two modified volumes always satisfy
q* . q° = q^2 cell by cell.

Coded stream layout (little endian)
-----------------------------------
* magic ``A3DC``, version byte 1, kernel code byte, float64 quality factor
* per plane (luma, Cb, Cr): original and padded extents as six uint32
  (width, height, frames, padded width, padded height, padded frames)
* int16 coefficients per plane, cubes in raster order (column blocks
  fastest, then row blocks, then time blocks), k3 fastest inside a cube

Coefficients saturating int16 are clamped; the count is surfaced on the
returned stream object, never silently dropped.  The quantisation volume is
not embedded: decoding needs the same base volume the encoder used.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._accel import quantize_batch, separable_3d_batch
from .kernels import KERNEL_IDS, KernelSpec, get_kernel, inverse_kernel
from .transform import diagonal_scale_field
from .video import FrameSequence

BLOCK = 8
MAGIC = b"A3DC"
VERSION = 1
_HEADER = struct.Struct("<4sBBd")
_PLANE_GEOM = struct.Struct("<6I")
HEADER_SIZE = _HEADER.size + 3 * _PLANE_GEOM.size

INT16_MIN = -32768
INT16_MAX = 32767


def default_quant_volume() -> np.ndarray:
    """Step volume 16 + 4 * (k1 + k2 + k3): fine at DC, coarser with frequency."""
    k = np.arange(BLOCK, dtype=np.float64)
    total = k[:, None, None] + k[None, :, None] + k[None, None, :]
    return 16.0 + 4.0 * total


def load_quant_volume(path: str | Path) -> np.ndarray:
    """Read a step volume: 512 whitespace-separated positive decimals,
    (k1, k2, k3) order with k3 fastest."""
    tokens = Path(path).read_text().split()
    if len(tokens) != BLOCK ** 3:
        raise ValueError(
            f"{path}: expected {BLOCK ** 3} values, found {len(tokens)}"
        )
    try:
        values = np.array([float(tok) for tok in tokens], dtype=np.float64)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc
    if not np.all(values > 0.0):
        raise ValueError(f"{path}: quantisation steps must be positive")
    return values.reshape(BLOCK, BLOCK, BLOCK)


def build_modified_volumes(q: np.ndarray,
                           kernel: KernelSpec) -> tuple[np.ndarray, np.ndarray]:
    """Modified volumes (q*, q°) absorbing the kernel's scaling diagonals."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (BLOCK, BLOCK, BLOCK):
        raise ValueError(f"quant volume must be {BLOCK}^3, got shape {q.shape}")
    if not np.all(q > 0.0):
        raise ValueError("quantisation steps must be positive")
    if kernel.size != BLOCK:
        raise ValueError(f"cube codec needs blocklength {BLOCK} kernels")
    d = kernel.s_diag
    scale = diagonal_scale_field((d, d, d))
    return q / scale, q * scale


@dataclass(frozen=True)
class QuantVolume:
    """Base step volume plus its kernel-specific modified variants."""

    q: np.ndarray
    q_star: np.ndarray
    q_dag: np.ndarray

    @classmethod
    def for_kernel(cls, q: np.ndarray, kernel: KernelSpec) -> "QuantVolume":
        q = np.asarray(q, dtype=np.float64)
        q_star, q_dag = build_modified_volumes(q, kernel)
        return cls(q=q, q_star=q_star, q_dag=q_dag)


def quantize_cube(a: np.ndarray, q_star: np.ndarray, quality: float) -> np.ndarray:
    """Round a / (quality * q*) half away from zero, as int64.

    ``a`` is the multiplierless-stage output of one cube (or a batch of them
    with the cube axes last).
    """
    if quality <= 0.0:
        raise ValueError(f"quality factor must be positive, got {quality}")
    return quantize_batch(np.asarray(a, dtype=np.float64),
                          quality * np.asarray(q_star, dtype=np.float64))


def dequantize_cube(y_tilde: np.ndarray, q_dag: np.ndarray,
                    quality: float) -> np.ndarray:
    """Scale quantised integers by quality * q°, yielding the input of the
    decoder's matrix stage."""
    if quality <= 0.0:
        raise ValueError(f"quality factor must be positive, got {quality}")
    return np.asarray(y_tilde, dtype=np.float64) * (
        quality * np.asarray(q_dag, dtype=np.float64))


def reconstruction_matrix(kernel: KernelSpec) -> np.ndarray:
    """Per-axis decoder matrix applied after modified dequantisation.

    The modified dequantisation already carries the diagonal part of the
    inverse, so this matrix is the inverse with one scaling divided out:
    exactly T' for orthogonal kernels (multiplierless again).
    """
    if kernel.orthogonal:
        return kernel.t_matrix.T.copy()
    return inverse_kernel(kernel) * (1.0 / kernel.s_diag)[None, :]


def padded_extent(shape: tuple[int, ...]) -> tuple[int, ...]:
    """Each axis rounded up to the next multiple of the cube edge."""
    return tuple(-(-n // BLOCK) * BLOCK for n in shape)


def tile(volume: np.ndarray) -> tuple[np.ndarray, tuple[int, int, int]]:
    """Split a (frames, rows, cols) volume into cubes.

    The volume is edge-replicated up to multiples of 8 first.  Cubes come
    back as an array (count, 8, 8, 8) in raster order: column blocks
    fastest, then row blocks, then time blocks.
    """
    volume = np.asarray(volume, dtype=np.float64)
    if volume.ndim != 3 or volume.size == 0:
        raise ValueError("tile expects a non-empty (frames, rows, cols) volume")
    tp, hp, wp = padded_extent(volume.shape)
    t, h, w = volume.shape
    padded = np.pad(volume, ((0, tp - t), (0, hp - h), (0, wp - w)), mode="edge")
    cubes = (
        padded.reshape(tp // BLOCK, BLOCK, hp // BLOCK, BLOCK, wp // BLOCK, BLOCK)
        .transpose(0, 2, 4, 1, 3, 5)
        .reshape(-1, BLOCK, BLOCK, BLOCK)
    )
    return np.ascontiguousarray(cubes), (tp, hp, wp)


def untile(cubes: np.ndarray, padded_shape: tuple[int, int, int],
           original_shape: tuple[int, int, int]) -> np.ndarray:
    """Inverse of :func:`tile`: reassemble cubes and crop the padding."""
    tp, hp, wp = padded_shape
    t, h, w = original_shape
    volume = (
        np.asarray(cubes)
        .reshape(tp // BLOCK, hp // BLOCK, wp // BLOCK, BLOCK, BLOCK, BLOCK)
        .transpose(0, 3, 1, 4, 2, 5)
        .reshape(tp, hp, wp)
    )
    return np.ascontiguousarray(volume[:t, :h, :w])


@dataclass(frozen=True)
class PlaneGeometry:
    """Original and padded plane extents, stored as (width, height, frames)."""

    original: tuple[int, int, int]
    padded: tuple[int, int, int]


@dataclass(frozen=True)
class CodedStream:
    """In-memory coded video: header fields plus per-plane int16 cubes."""

    kernel_id: str
    quality: float
    planes: tuple[PlaneGeometry, PlaneGeometry, PlaneGeometry]
    coefficients: tuple[np.ndarray, np.ndarray, np.ndarray]
    saturated: int = field(default=0, compare=False)

    def to_bytes(self) -> bytes:
        chunks = [_HEADER.pack(MAGIC, VERSION, KERNEL_IDS.index(self.kernel_id),
                               self.quality)]
        for geom in self.planes:
            chunks.append(_PLANE_GEOM.pack(*geom.original, *geom.padded))
        for coeffs in self.coefficients:
            chunks.append(np.ascontiguousarray(coeffs, dtype="<i2").tobytes())
        return b"".join(chunks)

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def from_bytes(cls, blob: bytes) -> "CodedStream":
        if len(blob) < HEADER_SIZE:
            raise ValueError(
                f"truncated header: need {HEADER_SIZE} bytes, file ends at "
                f"byte {len(blob)}"
            )
        magic, version, kernel_code, quality = _HEADER.unpack_from(blob, 0)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}, expected {MAGIC!r}")
        if version != VERSION:
            raise ValueError(f"unsupported stream version {version}")
        if kernel_code >= len(KERNEL_IDS):
            raise ValueError(f"unknown kernel code {kernel_code}")
        if not quality > 0.0:
            raise ValueError(f"invalid quality factor {quality}")
        planes = []
        offset = _HEADER.size
        for _ in range(3):
            vals = _PLANE_GEOM.unpack_from(blob, offset)
            planes.append(PlaneGeometry(original=vals[:3], padded=vals[3:]))
            offset += _PLANE_GEOM.size
        coefficients = []
        for geom in planes:
            pw, ph, pf = geom.padded
            count = pw * ph * pf
            end = offset + 2 * count
            if len(blob) < end:
                raise ValueError(
                    f"truncated payload: expected data up to byte {end}, "
                    f"file ends at byte {len(blob)}"
                )
            flat = np.frombuffer(blob, dtype="<i2", count=count, offset=offset)
            coefficients.append(
                flat.reshape(-1, BLOCK, BLOCK, BLOCK).astype(np.int16)
            )
            offset = end
        if offset != len(blob):
            raise ValueError(
                f"trailing garbage: payload ends at byte {offset}, "
                f"file has {len(blob)} bytes"
            )
        return cls(
            kernel_id=KERNEL_IDS[kernel_code],
            quality=quality,
            planes=tuple(planes),
            coefficients=tuple(coefficients),
        )

    @classmethod
    def read(cls, path: str | Path) -> "CodedStream":
        return cls.from_bytes(Path(path).read_bytes())


def _geometry(plane_shape_thw: tuple[int, int, int]) -> PlaneGeometry:
    t, h, w = plane_shape_thw
    tp, hp, wp = padded_extent((t, h, w))
    return PlaneGeometry(original=(w, h, t), padded=(wp, hp, tp))


def encode(video: FrameSequence, kernel: KernelSpec, quality: float,
           base_volume: np.ndarray | None = None) -> CodedStream:
    """Encode a video into a coded stream of quantised cube coefficients."""
    if quality <= 0.0:
        raise ValueError(f"quality factor must be positive, got {quality}")
    if base_volume is None:
        base_volume = default_quant_volume()
    volumes = QuantVolume.for_kernel(base_volume, kernel)
    steps = quality * volumes.q_star
    t_mat = kernel.t_matrix
    geoms = []
    planes = []
    saturated = 0
    for plane in (video.y, video.cb, video.cr):
        cubes, _padded = tile(plane.astype(np.float64))
        stage = separable_3d_batch(cubes, t_mat, t_mat, t_mat)
        ints = quantize_batch(stage, steps)
        clipped = np.clip(ints, INT16_MIN, INT16_MAX)
        saturated += int(np.count_nonzero(clipped != ints))
        geoms.append(_geometry(plane.shape))
        planes.append(clipped.astype(np.int16))
    return CodedStream(
        kernel_id=kernel.kernel_id,
        quality=quality,
        planes=tuple(geoms),
        coefficients=tuple(planes),
        saturated=saturated,
    )


def decode(stream: CodedStream,
           base_volume: np.ndarray | None = None) -> FrameSequence:
    """Decode a coded stream back into 8-bit video.

    ``base_volume`` must be the volume used by the encoder (the stream header
    does not carry it).
    """
    kernel = get_kernel(stream.kernel_id, BLOCK)
    if base_volume is None:
        base_volume = default_quant_volume()
    volumes = QuantVolume.for_kernel(base_volume, kernel)
    w_mat = reconstruction_matrix(kernel)
    planes = []
    for geom, coeffs in zip(stream.planes, stream.coefficients):
        scaled = dequantize_cube(coeffs, volumes.q_dag, stream.quality)
        rebuilt = separable_3d_batch(scaled, w_mat, w_mat, w_mat)
        pw, ph, pf = geom.padded
        ow, oh, of = geom.original
        volume = untile(rebuilt, (pf, ph, pw), (of, oh, ow))
        rounded = np.sign(volume) * np.floor(np.abs(volume) + 0.5)
        planes.append(np.clip(rounded, 0, 255).astype(np.uint8))
    ow, oh, of = stream.planes[0].original
    return FrameSequence(width=ow, height=oh, frames=of,
                         y=planes[0], cb=planes[1], cr=planes[2])

"""Planar 4:2:0 (I420) video: in-memory container and raw file I/O.

Frames are stored plane-major per frame on disk: the full-resolution luma
plane, then the two quarter-resolution chroma planes.  There is no container
or header, so geometry always travels out of band.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class FrameSequence:
    """8-bit planar 4:2:0 video: luma (frames, h, w), chroma (frames, h/2, w/2)."""

    width: int
    height: int
    frames: int
    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0 or self.frames <= 0:
            raise ValueError("geometry must be positive")
        if self.width % 2 or self.height % 2:
            raise ValueError("4:2:0 video needs even width and height")
        if self.y.shape != (self.frames, self.height, self.width):
            raise ValueError(f"luma plane shape {self.y.shape} does not match geometry")
        half = (self.frames, self.height // 2, self.width // 2)
        if self.cb.shape != half or self.cr.shape != half:
            raise ValueError("chroma plane shapes do not match geometry")
        for plane in (self.y, self.cb, self.cr):
            if plane.dtype != np.uint8:
                raise ValueError("planes must be 8-bit (uint8)")

    @property
    def sample_count(self) -> int:
        return self.y.size + self.cb.size + self.cr.size


def read_i420(path: str | Path, width: int, height: int, frames: int) -> FrameSequence:
    """Read a raw frame-sequential I420 file with the declared geometry."""
    if width % 2 or height % 2:
        raise ValueError("4:2:0 video needs even width and height")
    data = np.fromfile(str(path), dtype=np.uint8)
    luma = width * height
    chroma = (width // 2) * (height // 2)
    frame_bytes = luma + 2 * chroma
    expected = frames * frame_bytes
    if data.size != expected:
        raise ValueError(
            f"{path}: got {data.size} bytes, expected {expected} "
            f"for {width}x{height}x{frames} I420"
        )
    per_frame = data.reshape(frames, frame_bytes)
    y = per_frame[:, :luma].reshape(frames, height, width)
    cb = per_frame[:, luma:luma + chroma].reshape(frames, height // 2, width // 2)
    cr = per_frame[:, luma + chroma:].reshape(frames, height // 2, width // 2)
    return FrameSequence(width=width, height=height, frames=frames,
                         y=y.copy(), cb=cb.copy(), cr=cr.copy())


def write_i420(video: FrameSequence, path: str | Path) -> None:
    """Write a FrameSequence as a raw frame-sequential I420 file."""
    chunks = []
    for f in range(video.frames):
        chunks.append(video.y[f].tobytes())
        chunks.append(video.cb[f].tobytes())
        chunks.append(video.cr[f].tobytes())
    Path(path).write_bytes(b"".join(chunks))

"""Cube codec: modified volumes, quantisation, tiling, streams, pipelines."""

import math

import numpy as np
import pytest

from cubedct._accel import separable_3d_batch
from cubedct.codec import (
    CodedStream,
    QuantVolume,
    build_modified_volumes,
    decode,
    default_quant_volume,
    dequantize_cube,
    encode,
    load_quant_volume,
    padded_extent,
    quantize_cube,
    reconstruction_matrix,
    tile,
    untile,
)
from cubedct.kernels import KERNEL_IDS, get_kernel, inverse_kernel
from cubedct.metrics import video_psnr
from cubedct.video import FrameSequence

from oracles import correlated_clip, full_path_quantize, noise_clip

APPROX_IDS = tuple(k for k in KERNEL_IDS if k not in ("DCT", "SDCT"))


def test_default_volume_shape_and_growth():
    q = default_quant_volume()
    assert q.shape == (8, 8, 8)
    assert q[0, 0, 0] == 16.0
    assert q[7, 7, 7] == 16.0 + 4.0 * 21.0
    assert np.all(q > 0)


def test_modified_volume_identity():
    q = default_quant_volume()
    for kernel_id in KERNEL_IDS:
        q_star, q_dag = build_modified_volumes(q, get_kernel(kernel_id))
        # steps up to 100 put eps-level products slightly above 1e-12 in
        # absolute terms, so the identity is held relatively
        assert np.max(np.abs(q_star * q_dag / (q * q) - 1.0)) <= 1e-12
        assert np.all(q_star > 0) and np.all(q_dag > 0)


def test_modified_volume_identity_absolute_at_unit_scale():
    rng = np.random.default_rng(7)
    q = rng.uniform(0.1, 2.0, (8, 8, 8))
    for kernel_id in KERNEL_IDS:
        q_star, q_dag = build_modified_volumes(q, get_kernel(kernel_id))
        assert np.max(np.abs(q_star * q_dag - q * q)) <= 1e-12


def test_modified_volume_dc_cell_mrdct():
    q = default_quant_volume()
    q_star, _ = build_modified_volumes(q, get_kernel("MRDCT"))
    assert abs(q_star[0, 0, 0] - q[0, 0, 0] * 8.0 ** 1.5) <= 1e-12


def test_modified_volume_rdct_cell_222():
    q = default_quant_volume()
    q_star, q_dag = build_modified_volumes(q, get_kernel("RDCT"))
    assert abs(q_star[2, 2, 2] - 8.0 * q[2, 2, 2]) <= 1e-12
    assert abs(q_dag[2, 2, 2] - q[2, 2, 2] / 8.0) <= 1e-12


def test_quantize_zero_tensor():
    q = QuantVolume.for_kernel(default_quant_volume(), get_kernel("RDCT"))
    out = quantize_cube(np.zeros((8, 8, 8)), q.q_star, 2.0)
    assert out.dtype == np.int64
    assert np.all(out == 0)


def test_quantize_exact_steps_give_ones():
    q = QuantVolume.for_kernel(default_quant_volume(), get_kernel("LODCT"))
    quality = 0.7
    out = quantize_cube(quality * q.q_star, q.q_star, quality)
    assert np.all(out == 1)


def test_quantize_rounds_half_away_from_zero():
    steps = np.ones((2,))
    got = quantize_cube(np.array([0.5, -0.5]), steps, 1.0)
    assert list(got) == [1, -1]


def test_quantize_rejects_bad_quality():
    q = QuantVolume.for_kernel(default_quant_volume(), get_kernel("RDCT"))
    with pytest.raises(ValueError):
        quantize_cube(np.zeros((8, 8, 8)), q.q_star, 0.0)


@pytest.mark.parametrize("kernel_id", KERNEL_IDS)
def test_modified_path_matches_full_path_integers(kernel_id):
    kernel = get_kernel(kernel_id)
    rng = np.random.default_rng(137)
    cubes = rng.uniform(-255.0, 255.0, (64, 8, 8, 8))
    q = default_quant_volume()
    volumes = QuantVolume.for_kernel(q, kernel)
    t = kernel.t_matrix
    stage = separable_3d_batch(cubes, t, t, t)
    got = quantize_cube(stage, volumes.q_star, 0.5)
    want = full_path_quantize(cubes, kernel.c_hat, q, 0.5)
    assert np.array_equal(got, want)


def test_dequantize_zero_is_zero():
    q = QuantVolume.for_kernel(default_quant_volume(), get_kernel("MRDCT"))
    out = dequantize_cube(np.zeros((8, 8, 8), dtype=np.int64), q.q_dag, 1.0)
    assert np.all(out == 0.0)


def test_near_lossless_cube_round_trip_mrdct():
    kernel = get_kernel("MRDCT")
    rng = np.random.default_rng(41)
    cube = rng.uniform(0.0, 255.0, (8, 8, 8))
    volumes = QuantVolume.for_kernel(np.full((8, 8, 8), 0.001), kernel)
    t = kernel.t_matrix
    stage = separable_3d_batch(cube[None], t, t, t)
    ints = quantize_cube(stage, volumes.q_star, 1.0)
    scaled = dequantize_cube(ints, volumes.q_dag, 1.0)
    w = reconstruction_matrix(kernel)
    rebuilt = separable_3d_batch(scaled, w, w, w)[0]
    assert np.max(np.abs(rebuilt - cube)) < 0.01


@pytest.mark.parametrize("kernel_id", KERNEL_IDS)
def test_cube_error_bounded_by_propagated_quantisation_step(kernel_id):
    kernel = get_kernel(kernel_id)
    rng = np.random.default_rng(43)
    cube = rng.uniform(0.0, 255.0, (8, 8, 8))
    q = default_quant_volume()
    quality = 0.5
    volumes = QuantVolume.for_kernel(q, kernel)
    t = kernel.t_matrix
    stage = separable_3d_batch(cube[None], t, t, t)
    ints = quantize_cube(stage, volumes.q_star, quality)
    scaled = dequantize_cube(ints, volumes.q_dag, quality)
    w = reconstruction_matrix(kernel)
    rebuilt = separable_3d_batch(scaled, w, w, w)[0]
    # the scaled-domain error is at most half a step; push that bound through
    # the absolute inverse matrices
    inv = np.abs(inverse_kernel(kernel))
    half_step = (quality * q / 2.0)[None]
    bound = separable_3d_batch(half_step, inv, inv, inv)[0]
    assert np.all(np.abs(rebuilt - cube) <= bound + 1e-9)


def test_reconstruction_matrix_is_transposed_t_for_orthogonal_kernels():
    for kernel_id in KERNEL_IDS:
        kernel = get_kernel(kernel_id)
        if kernel.orthogonal:
            assert np.array_equal(reconstruction_matrix(kernel), kernel.t_matrix.T)


def test_padded_extent():
    assert padded_extent((8, 8, 8)) == (8, 8, 8)
    assert padded_extent((9, 8, 8)) == (16, 8, 8)
    assert padded_extent((352, 288, 296)) == (352, 288, 296)


def test_cif_geometry_tiles_to_58608_cubes():
    tp, hp, wp = padded_extent((296, 288, 352))
    assert (tp // 8) * (hp // 8) * (wp // 8) == 58608


def test_tile_single_cube_identity():
    rng = np.random.default_rng(47)
    volume = rng.uniform(0, 255, (8, 8, 8))
    cubes, padded = tile(volume)
    assert padded == (8, 8, 8)
    assert cubes.shape == (1, 8, 8, 8)
    assert np.array_equal(cubes[0], volume)


def test_tile_pads_by_edge_replication_and_untiles():
    rng = np.random.default_rng(53)
    volume = rng.uniform(0, 255, (8, 8, 9))
    cubes, padded = tile(volume)
    assert padded == (8, 8, 16)
    assert cubes.shape == (2, 8, 8, 8)
    # replicated final column fills the second cube
    assert np.array_equal(cubes[1][:, :, 1], volume[:, :, 8])
    assert np.array_equal(cubes[1][:, :, 7], volume[:, :, 8])
    restored = untile(cubes, padded, volume.shape)
    assert np.array_equal(restored, volume)


def test_tile_raster_order_is_column_blocks_first():
    volume = np.zeros((8, 8, 16))
    volume[:, :, 8:] = 1.0
    cubes, _ = tile(volume)
    assert np.all(cubes[0] == 0.0)
    assert np.all(cubes[1] == 1.0)


def test_tile_rejects_empty_input():
    with pytest.raises(ValueError):
        tile(np.zeros((0, 8, 8)))


def test_load_quant_volume(tmp_path):
    q = default_quant_volume()
    path = tmp_path / "volume.txt"
    path.write_text(" ".join(f"{v:.6f}" for v in q.reshape(-1)))
    assert np.max(np.abs(load_quant_volume(path) - q)) <= 1e-9
    bad = tmp_path / "bad.txt"
    bad.write_text("1.0 2.0 3.0")
    with pytest.raises(ValueError, match="512"):
        load_quant_volume(bad)
    negative = tmp_path / "negative.txt"
    negative.write_text(" ".join(["1.0"] * 511 + ["-1.0"]))
    with pytest.raises(ValueError, match="positive"):
        load_quant_volume(negative)


def test_encode_decode_preserves_geometry_and_is_deterministic():
    clip = noise_clip(24, 16, 10, seed=61)
    kernel = get_kernel("RDCT")
    stream_a = encode(clip, kernel, 0.5)
    stream_b = encode(clip, kernel, 0.5)
    assert stream_a.to_bytes() == stream_b.to_bytes()
    out = decode(stream_a)
    assert (out.width, out.height, out.frames) == (24, 16, 10)
    again = decode(CodedStream.from_bytes(stream_a.to_bytes()))
    assert np.array_equal(out.y, again.y)
    assert np.array_equal(out.cb, again.cb)
    assert np.array_equal(out.cr, again.cr)


def test_stream_round_trip_through_file(tmp_path):
    clip = noise_clip(16, 16, 8, seed=67)
    stream = encode(clip, get_kernel("MRDCT"), 1.0)
    path = tmp_path / "clip.a3dc"
    stream.write(path)
    loaded = CodedStream.read(path)
    assert loaded.kernel_id == "MRDCT"
    assert loaded.quality == 1.0
    assert loaded.planes == stream.planes
    for a, b in zip(loaded.coefficients, stream.coefficients):
        assert np.array_equal(a, b)


def test_near_lossless_end_to_end():
    clip = correlated_clip(32, 32, 16, seed=20240817)
    ones = np.ones((8, 8, 8))
    stream = encode(clip, get_kernel("DCT"), 0.25, ones)
    assert stream.saturated == 0
    out = decode(stream, ones)
    assert video_psnr(clip, out) > 50.0


def test_unclamped_pipeline_reconstructs_within_one_grey_level():
    rng = np.random.default_rng(71)
    volume = rng.integers(0, 256, (16, 24, 24)).astype(np.float64)
    kernel = get_kernel("DCT")
    quality = 1.0 / 256.0
    volumes = QuantVolume.for_kernel(np.ones((8, 8, 8)), kernel)
    cubes, padded = tile(volume)
    t = kernel.t_matrix
    ints = quantize_cube(separable_3d_batch(cubes, t, t, t), volumes.q_star, quality)
    assert np.abs(ints).max() > 32767  # cannot survive int16 clamping
    scaled = dequantize_cube(ints, volumes.q_dag, quality)
    w = reconstruction_matrix(kernel)
    rebuilt = untile(separable_3d_batch(scaled, w, w, w), padded, volume.shape)
    grey = np.clip(np.sign(rebuilt) * np.floor(np.abs(rebuilt) + 0.5), 0, 255)
    assert np.max(np.abs(grey - volume)) <= 1.0


def test_psnr_not_improved_by_coarser_quality():
    clip = correlated_clip(32, 32, 16, seed=20240817)
    kernel = get_kernel("BAS2009")
    fine = video_psnr(clip, decode(encode(clip, kernel, 0.25)))
    coarse = video_psnr(clip, decode(encode(clip, kernel, 2.0)))
    assert fine >= coarse


def test_exact_dct_wins_and_sdct_trails_on_correlated_clip():
    clip = correlated_clip(32, 32, 16, seed=20240817)
    scores = {}
    for kernel_id in KERNEL_IDS:
        stream = encode(clip, get_kernel(kernel_id), 0.25)
        scores[kernel_id] = video_psnr(clip, decode(stream))
    assert all(scores["DCT"] > scores[k] for k in KERNEL_IDS if k != "DCT")
    assert all(scores["SDCT"] < scores[k] for k in APPROX_IDS)


def test_saturation_is_counted_not_silent():
    bright = FrameSequence(
        width=16, height=16, frames=8,
        y=np.full((8, 16, 16), 255, dtype=np.uint8),
        cb=np.full((8, 8, 8), 255, dtype=np.uint8),
        cr=np.full((8, 8, 8), 255, dtype=np.uint8),
    )
    stream = encode(bright, get_kernel("DCT"), 0.01, np.ones((8, 8, 8)))
    assert stream.saturated > 0
    decode(stream, np.ones((8, 8, 8)))  # stays decodable


def test_from_bytes_rejects_bad_magic():
    clip = noise_clip(16, 16, 8, seed=73)
    blob = bytearray(encode(clip, get_kernel("DCT"), 1.0).to_bytes())
    blob[:4] = b"XXXX"
    with pytest.raises(ValueError, match="magic"):
        CodedStream.from_bytes(bytes(blob))


def test_from_bytes_rejects_unknown_kernel_code():
    clip = noise_clip(16, 16, 8, seed=79)
    blob = bytearray(encode(clip, get_kernel("DCT"), 1.0).to_bytes())
    blob[5] = 200
    with pytest.raises(ValueError, match="kernel code"):
        CodedStream.from_bytes(bytes(blob))


def test_from_bytes_reports_truncation_offset():
    clip = noise_clip(16, 16, 8, seed=83)
    blob = encode(clip, get_kernel("DCT"), 1.0).to_bytes()
    with pytest.raises(ValueError, match=f"file ends at byte {len(blob) - 10}"):
        CodedStream.from_bytes(blob[:-10])
    with pytest.raises(ValueError, match="truncated header"):
        CodedStream.from_bytes(blob[:20])


def test_from_bytes_rejects_trailing_bytes():
    clip = noise_clip(16, 16, 8, seed=89)
    blob = encode(clip, get_kernel("DCT"), 1.0).to_bytes()
    with pytest.raises(ValueError, match="trailing"):
        CodedStream.from_bytes(blob + b"\x00")


def test_encode_rejects_bad_quality():
    clip = noise_clip(16, 16, 8, seed=97)
    with pytest.raises(ValueError):
        encode(clip, get_kernel("DCT"), -1.0)

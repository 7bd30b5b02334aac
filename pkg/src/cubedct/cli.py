"""Command-line surface: transforms, codec runs, metric reports and sweeps.

Every command is deterministic for fixed flags and input bytes.  Data goes
to stdout or the requested output file; diagnostics go to stderr; the exit
code is 0 exactly when no error occurred.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import codec, complexity, metrics, transform, video
from .kernels import KERNEL_IDS, get_kernel


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _parse_dims(spec: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in spec.split(","))
    except ValueError as exc:
        raise ValueError(f"bad --dims {spec!r}: {exc}") from exc
    if not dims or any(n < 1 for n in dims):
        raise ValueError(f"bad --dims {spec!r}: need positive comma-separated sizes")
    return dims


def cmd_transform(args: argparse.Namespace) -> int:
    dims = _parse_dims(args.dims)
    values = np.loadtxt(args.input, dtype=np.float64).reshape(-1)
    expected = int(np.prod(dims))
    if values.size != expected:
        raise ValueError(
            f"{args.input}: got {values.size} values, dims {args.dims} need {expected}"
        )
    tensor = values.reshape(dims)
    plan = transform.plan_for(args.kernel, dims)
    out = transform.inverse(tensor, plan) if args.inverse else transform.forward(tensor, plan)
    lines = "\n".join(f"{v:.17g}" for v in out.reshape(-1)) + "\n"
    _write_text(args.output, lines)
    return 0


def _base_volume(args: argparse.Namespace) -> np.ndarray | None:
    if getattr(args, "volume", None):
        return codec.load_quant_volume(args.volume)
    return None


def cmd_encode(args: argparse.Namespace) -> int:
    clip = video.read_i420(args.input, args.width, args.height, args.frames)
    kernel = get_kernel(args.kernel, 8)
    stream = codec.encode(clip, kernel, args.quality, _base_volume(args))
    stream.write(args.output)
    if stream.saturated:
        print(f"warning: {stream.saturated} coefficients saturated int16",
              file=sys.stderr)
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    stream = codec.CodedStream.read(args.input)
    clip = codec.decode(stream, _base_volume(args))
    video.write_i420(clip, args.output)
    return 0


def cmd_metrics(args: argparse.Namespace) -> int:
    ref = video.read_i420(args.reference, args.width, args.height, args.frames)
    test = video.read_i420(args.test, args.width, args.height, args.frames)
    psnr_db = metrics.video_psnr(ref, test, luma_only=args.luma_only)
    mssim_val = metrics.video_mssim(ref, test)
    text = (
        "method,Q,psnr_db,mssim\n"
        f"{args.method},{args.quality:.6f},{psnr_db:.6f},{mssim_val:.6f}\n"
    )
    _write_text(args.output, text)
    return 0


def cmd_complexity_table(args: argparse.Namespace) -> int:
    table = complexity.method_table(rho=args.rho)
    reference = table[0]
    lines = [
        "method,cg_db,eta_pct,mult_1d,add_1d,shift_1d,mult_3d,add_3d,shift_3d,"
        "cg_red_pct,eta_red_pct,mult_red_pct,add_red_pct,total_red_pct"
    ]
    for entry in table:
        kernel = get_kernel(entry.kernel_id, 8)
        red = complexity.percent_reduction(entry, reference)
        c1, c3 = kernel.cost_1d, entry.cost_3d
        lines.append(
            f"{entry.kernel_id},{entry.cg_db:.6f},{entry.eta_pct:.6f},"
            f"{c1.mult},{c1.add},{c1.shift},{c3.mult},{c3.add},{c3.shift},"
            f"{red.cg_pct:.6f},{red.eta_pct:.6f},{red.mult_pct:.6f},"
            f"{red.add_pct:.6f},{red.total_pct:.6f}"
        )
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_tradeoff(args: argparse.Namespace) -> int:
    population = complexity.method_table(rho=args.rho)
    rows = complexity.tradeoff_sweep(args.grid_steps, population)
    _write_text(args.output, complexity.sweep_to_csv(rows))
    return 0


def _read_boxes(path: str) -> list[tuple[str, metrics.BoundingBox]]:
    boxes = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected frame,x,y,w,h")
        try:
            frame = parts[0].strip()
            x, y, w, h = (float(p) for p in parts[1:])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
        boxes.append((frame, metrics.BoundingBox(x=x, y=y, width=w, height=h)))
    return boxes


def cmd_pbm(args: argparse.Namespace) -> int:
    tracked = _read_boxes(args.tracked)
    truth = _read_boxes(args.truth)
    if len(tracked) != len(truth):
        raise ValueError(
            f"box count mismatch: {len(tracked)} tracked vs {len(truth)} truth"
        )
    lines = ["frame,pbm"]
    values = []
    for (frame_t, box_t), (frame_g, box_g) in zip(tracked, truth):
        if frame_t != frame_g:
            raise ValueError(f"frame mismatch: {frame_t!r} vs {frame_g!r}")
        score = metrics.pbm(box_t, box_g)
        values.append(score)
        lines.append(f"{frame_t},{score:.6f}")
    mean = sum(values) / len(values) if values else 0.0
    lines.append(f"mean,{mean:.6f}")
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubedct",
        description="Multiplierless multidimensional DCT approximations and "
                    "the 8x8x8 cube transform video codec.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="apply a separable transform to a tensor")
    p.add_argument("--input", required=True, help="text file of whitespace-separated values")
    p.add_argument("--dims", required=True, help="comma-separated axis lengths")
    p.add_argument("--kernel", default="DCT", choices=KERNEL_IDS)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("encode", help="encode raw I420 video")
    p.add_argument("--input", required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--kernel", default="DCT", choices=KERNEL_IDS)
    p.add_argument("--quality", "-Q", type=float, default=1.0)
    p.add_argument("--volume", default=None, help="quantisation volume file")
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a coded stream to raw I420")
    p.add_argument("--input", required=True)
    p.add_argument("--volume", default=None, help="quantisation volume file")
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("metrics", help="PSNR and MSSIM between two I420 files")
    p.add_argument("--reference", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--method", default="unknown", help="label for the CSV row")
    p.add_argument("--quality", "-Q", type=float, default=1.0, help="label for the CSV row")
    p.add_argument("--luma-only", action="store_true",
                   help="exclude chroma planes from the PSNR pool")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("complexity-table",
                       help="per-method cost, coding gain, efficiency and reductions")
    p.add_argument("--rho", type=float, default=0.95)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_complexity_table)

    p = sub.add_parser("tradeoff", help="winner grid of the cost/performance sweep")
    p.add_argument("--grid-steps", type=int, default=101)
    p.add_argument("--rho", type=float, default=0.95)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("pbm", help="position-based tracking score per frame")
    p.add_argument("--tracked", required=True, help="CSV lines frame,x,y,w,h")
    p.add_argument("--truth", required=True, help="CSV lines frame,x,y,w,h")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_pbm)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Multiplierless multidimensional DCT approximations and a 3-D cube codec.

The package covers four layers:

* dense tensor algebra (mode products) and the transform kernels
* separable R-dimensional forward/inverse transforms
* arithmetic-cost accounting with a cost/performance trade-off sweep
* an interframe video codec on 8x8x8 cubes with modified quantisation
  volumes, plus PSNR/MSSIM/PBM quality metrics

Set ``CUBEDCT_BACKEND=numpy`` or ``numba`` to pin the batched-kernel backend.
"""

from ._accel import ACTIVE_BACKEND
from .codec import (
    CodedStream,
    QuantVolume,
    build_modified_volumes,
    decode,
    default_quant_volume,
    dequantize_cube,
    encode,
    load_quant_volume,
    quantize_cube,
    tile,
    untile,
)
from .complexity import (
    VR_DIF_COST_3D,
    CostModel,
    MethodEntry,
    complexity_rd,
    complexity_uniform,
    figure_of_merit,
    method_table,
    percent_reduction,
    tradeoff_sweep,
    tradeoff_winner,
)
from .kernels import (
    KERNEL_IDS,
    CostPoint,
    KernelSpec,
    build_dct_matrix,
    get_kernel,
    inverse_kernel,
    kernel_from_matrix,
    scaling_diag,
)
from .metrics import (
    Ar1Model,
    BoundingBox,
    coding_gain,
    mse_3d,
    mssim,
    pbm,
    psnr,
    ssim,
    transform_efficiency,
    video_mssim,
    video_psnr,
)
from .tensor import i_mode_product, tensor_equal_within
from .transform import (
    SplitForward,
    TransformPlan,
    diagonal_scale_field,
    forward,
    forward_1d,
    forward_2d,
    hybrid_plan,
    inverse,
    plan_for,
)
from .video import FrameSequence, read_i420, write_i420

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND",
    "Ar1Model",
    "BoundingBox",
    "CodedStream",
    "CostModel",
    "CostPoint",
    "FrameSequence",
    "KERNEL_IDS",
    "KernelSpec",
    "MethodEntry",
    "QuantVolume",
    "SplitForward",
    "TransformPlan",
    "VR_DIF_COST_3D",
    "build_dct_matrix",
    "build_modified_volumes",
    "coding_gain",
    "complexity_rd",
    "complexity_uniform",
    "decode",
    "default_quant_volume",
    "dequantize_cube",
    "diagonal_scale_field",
    "encode",
    "figure_of_merit",
    "forward",
    "forward_1d",
    "forward_2d",
    "get_kernel",
    "hybrid_plan",
    "i_mode_product",
    "inverse",
    "inverse_kernel",
    "kernel_from_matrix",
    "load_quant_volume",
    "method_table",
    "mse_3d",
    "mssim",
    "pbm",
    "percent_reduction",
    "plan_for",
    "psnr",
    "quantize_cube",
    "read_i420",
    "scaling_diag",
    "ssim",
    "tensor_equal_within",
    "tile",
    "tradeoff_sweep",
    "tradeoff_winner",
    "transform_efficiency",
    "untile",
    "video_mssim",
    "video_psnr",
    "write_i420",
]

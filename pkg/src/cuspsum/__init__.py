"""Exact partial-sum statistics for level-one holomorphic eigenforms.

The package generates exact Fourier coefficient tables (big integers all
the way through), tabulates partial sums and their mean-square statistics
over short intervals, evaluates Gaussian-smoothed second moments, and
numerically verifies the contour-integral decomposition of the associated
Dirichlet series.  Floating point enters only at the statistics layer.
"""

from .cache import (
    CacheFormatError,
    default_cache_path,
    read_table,
    write_table,
)
from .forms import (
    SUPPORTED_WEIGHTS,
    EigenformTable,
    HeckeReport,
    UnsupportedWeight,
    delta_via_eisenstein,
    eigenform,
    eisenstein_e4,
    eisenstein_e6,
    eta_cubed_sparse,
    generate_delta,
    hecke_report,
    series_mul,
    series_square,
)
from .mellin import (
    AbscissaError,
    ContourPoleError,
    DecompositionReport,
    DirichletCoefficients,
    KernelParams,
    LineIntegralSpec,
    TransformCheck,
    TruncationWarning,
    decomposition_check,
    derivative_transform_check,
    dirichlet_eval,
    kernel_closed_form,
    kernel_line_integral,
    kernel_spec,
    w_coefficients,
)
from .ntt import ReconstructionOverflow
from .special import DomainError, PoleError, log_beta, log_gamma, zeta
from .sums import (
    SMOOTHING_CONSTANT,
    ExponentFit,
    PartialSumTable,
    SmoothedComparison,
    WindowRangeError,
    WindowStat,
    exponent_fit,
    log_abs_bigint,
    long_interval_mean,
    partial_sums,
    smoothed_second_moment,
    theorem_window,
    window_mean,
    window_vs_smoothed,
)

__version__ = "0.1.0"

__all__ = [
    "AbscissaError",
    "CacheFormatError",
    "ContourPoleError",
    "DecompositionReport",
    "DirichletCoefficients",
    "DomainError",
    "EigenformTable",
    "ExponentFit",
    "HeckeReport",
    "KernelParams",
    "LineIntegralSpec",
    "PartialSumTable",
    "PoleError",
    "ReconstructionOverflow",
    "SMOOTHING_CONSTANT",
    "SUPPORTED_WEIGHTS",
    "SmoothedComparison",
    "TransformCheck",
    "TruncationWarning",
    "UnsupportedWeight",
    "WindowRangeError",
    "WindowStat",
    "decomposition_check",
    "default_cache_path",
    "delta_via_eisenstein",
    "derivative_transform_check",
    "dirichlet_eval",
    "eigenform",
    "eisenstein_e4",
    "eisenstein_e6",
    "eta_cubed_sparse",
    "exponent_fit",
    "generate_delta",
    "hecke_report",
    "kernel_closed_form",
    "kernel_line_integral",
    "kernel_spec",
    "log_abs_bigint",
    "log_beta",
    "log_gamma",
    "long_interval_mean",
    "partial_sums",
    "read_table",
    "series_mul",
    "series_square",
    "smoothed_second_moment",
    "theorem_window",
    "w_coefficients",
    "window_mean",
    "window_vs_smoothed",
    "write_table",
    "zeta",
    "__version__",
]

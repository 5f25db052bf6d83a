"""Sampling set selection and reconstruction for graph signals in weighted Hilbert spaces."""

from .bench import (
    ResultTable,
    TableRow,
    VARIANTS,
    inner_for_variant,
    realization_rng,
    run_bound_experiment,
    run_mse_experiment,
    sample_sizes,
)
from .geometry import (
    GeoConfig,
    PointCloud,
    add_noise,
    gaussian_kernel_graph,
    sample_points,
    sinewave_signal,
    voronoi_areas,
)
from .graphs import (
    Graph,
    InnerProduct,
    combinatorial_laplacian,
    complement,
    custom_diagonal,
    degree_matrix,
    graph_from_json,
    graph_to_json,
    identity_inner_product,
    q_inner,
    q_norm,
    restrict,
    vertex_set,
)
from .reconstruction import (
    ChebyshevSeries,
    PocsParams,
    ReconstructionReport,
    apply_cheb_filter,
    cheb_lowpass_series,
    consistent_reconstruct,
    error_covariance,
    evaluate_cheb_series,
    lowpass_response,
    pocs_reconstruct,
    verify_error_bound,
)
from .sampling import (
    CutoffEstimate,
    SamplingResult,
    a_opt_metric,
    cutoff_frequency,
    e_opt_metric,
    greedy_select,
    proxy_gram,
    proxy_operator,
    spectral_proxy,
)
from .spectral import (
    SpectralBasis,
    analyze,
    bandlimit_split,
    compute_basis,
    estimate_lambda_max,
    is_bandlimited,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "ChebyshevSeries",
    "CutoffEstimate",
    "GeoConfig",
    "Graph",
    "InnerProduct",
    "PocsParams",
    "PointCloud",
    "ReconstructionReport",
    "ResultTable",
    "SamplingResult",
    "SpectralBasis",
    "TableRow",
    "VARIANTS",
    "a_opt_metric",
    "add_noise",
    "analyze",
    "apply_cheb_filter",
    "bandlimit_split",
    "cheb_lowpass_series",
    "combinatorial_laplacian",
    "complement",
    "compute_basis",
    "consistent_reconstruct",
    "custom_diagonal",
    "cutoff_frequency",
    "degree_matrix",
    "e_opt_metric",
    "error_covariance",
    "estimate_lambda_max",
    "evaluate_cheb_series",
    "gaussian_kernel_graph",
    "graph_from_json",
    "graph_to_json",
    "greedy_select",
    "identity_inner_product",
    "inner_for_variant",
    "is_bandlimited",
    "lowpass_response",
    "pocs_reconstruct",
    "proxy_gram",
    "proxy_operator",
    "q_inner",
    "q_norm",
    "realization_rng",
    "restrict",
    "run_bound_experiment",
    "run_mse_experiment",
    "sample_points",
    "sample_sizes",
    "sinewave_signal",
    "spectral_proxy",
    "synthesize",
    "verify_error_bound",
    "vertex_set",
    "voronoi_areas",
]

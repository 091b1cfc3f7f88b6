"""Wigner matrix / semicircle law numerics laboratory."""

from semicircle_lab._core import (  # noqa: F401
    ErrorDecomposition,
    ExpansionTerm,
    FitResult,
    HermitianMatrix,
    IdentityReport,
    Monomial,
    NumericError,
    ResolventFactor,
    ResolventMatrix,
    SampleRecord,
    SemicircleReport,
    SpectralDecomposition,
    SpectralPoint,
    TailEstimate,
    ValidationError,
    WignerSpec,
    check_msc_bounds,
    classical_location,
    classical_locations,
    control_parameter,
    counting_statistic,
    dump_terms,
    edge_statistic,
    eigendecompose,
    error_terms,
    evaluate_monomial,
    expand,
    fluctuation_scan,
    hanson_wright_tail,
    hanson_wright_tail_kind,
    hermitian_from,
    identity_suite,
    lambda_from_R,
    leaf_count_bound,
    loglog_fit,
    lone_labels,
    matrix_minor,
    msc,
    n_sc_cdf,
    resolvent,
    rho_sc,
    rigidity_statistic,
    sample_wigner,
    spectrum_scan,
    sqrt_upper,
    stieltjes,
    verify_reconstruction,
)

__version__ = "0.1.0"

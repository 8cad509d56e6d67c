"""Jet-bundle metrics, curvatures and identity verification for Hermitian
holomorphic vector bundles over planar domains."""

from ._core import (
    JetcurvError,
    Model,
    __version__,
    builtin_catalog,
    curvature,
    desnanot_jacobi,
    det_bundle_curvature,
    det_bundle_equivalent,
    det_recursion,
    fd_partial,
    gram_quotient,
    jet_curvature,
    jet_metric,
    lift_coefficient,
    line_equivalent,
    load_catalog,
    partial,
    quotient_curvature,
    run_cli,
    sample_grid,
    trace_formula_residual,
    wedge_gram,
)

__all__ = [
    "JetcurvError",
    "Model",
    "__version__",
    "builtin_catalog",
    "curvature",
    "desnanot_jacobi",
    "det_bundle_curvature",
    "det_bundle_equivalent",
    "det_recursion",
    "fd_partial",
    "gram_quotient",
    "jet_curvature",
    "jet_metric",
    "lift_coefficient",
    "line_equivalent",
    "load_catalog",
    "partial",
    "quotient_curvature",
    "run_cli",
    "sample_grid",
    "trace_formula_residual",
    "wedge_gram",
]

"""Regression on network centralities under sparsity and measurement error."""

from ._core import (
    CenregError,
    Graph,
    __version__,
    degree,
    derive_b,
    derive_g,
    diffusion,
    eigenvector,
    reference_b,
    regress,
    regularized_eigenvector,
    sample_graph,
    simulate,
)

__all__ = [
    "CenregError",
    "Graph",
    "degree",
    "derive_b",
    "derive_g",
    "diffusion",
    "eigenvector",
    "reference_b",
    "regress",
    "regularized_eigenvector",
    "sample_graph",
    "simulate",
]

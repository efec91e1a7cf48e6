"""Curvatures supported on k-simplices of finite simplicial complexes."""

from curvekit.complex import (
    CoverStatus,
    FVector,
    SimplicialComplex,
    barycentric_refinement,
    cover_status,
    degree,
    euler_characteristic,
    f_vector,
    generate_closure,
    link_complex,
    open_star,
    whitney_complex,
)
from curvekit.curvature import (
    CurvatureField,
    facet_curvature,
    form_curvature,
    generating_identity_check,
    levitt_curvature,
)
from curvekit.errors import CoverViolation, CurvekitError
from curvekit.graphs import is_2manifold, is_3manifold, unit_sphere
from curvekit.spectral import betti, dirac, hodge_blocks, super_trace

__version__ = "0.1.0"

__all__ = [
    "CoverStatus",
    "CoverViolation",
    "CurvatureField",
    "CurvekitError",
    "FVector",
    "SimplicialComplex",
    "barycentric_refinement",
    "betti",
    "cover_status",
    "degree",
    "dirac",
    "euler_characteristic",
    "f_vector",
    "facet_curvature",
    "form_curvature",
    "generate_closure",
    "generating_identity_check",
    "hodge_blocks",
    "is_2manifold",
    "is_3manifold",
    "levitt_curvature",
    "link_complex",
    "open_star",
    "super_trace",
    "unit_sphere",
    "whitney_complex",
]

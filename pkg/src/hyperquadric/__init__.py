"""Numerical model of the complex hyperbolic quadric and its contact hypersurfaces."""

from .geometry import (
    Conjugation,
    Point,
    SingularDecomposition,
    TangentVector,
    VectorKind,
    classify_vector,
    complex_structure,
    conjugation_apply,
    curvature,
    curvature_oracle,
    geodesic_point,
    metric,
    singular_decompose,
    transport_frame,
    v_space_basis,
)
from .hypersurface import (
    AlmostContact,
    HypersurfaceFrame,
    contact_defect,
    deta_defect,
    hopf_data,
    induced_structure,
    mean_curvature,
)
from .lie import Context, GroupElement, LieElement, bracket, cartan_split, exp, make_context
from .models import (
    ClassificationCase,
    Model,
    PrincipalCurvatureTable,
    build_frame,
    classify,
    normal_jacobi,
    solve_principal_curvatures,
    tube_contact_constant,
    tube_table,
)
from .oracles import OdeConfig, SampleStream, integrate_jacobi, sample_unit_tangent

__version__ = "0.1.0"

__all__ = [
    "AlmostContact",
    "ClassificationCase",
    "Conjugation",
    "Context",
    "GroupElement",
    "HypersurfaceFrame",
    "LieElement",
    "Model",
    "OdeConfig",
    "Point",
    "PrincipalCurvatureTable",
    "SampleStream",
    "SingularDecomposition",
    "TangentVector",
    "VectorKind",
    "bracket",
    "build_frame",
    "cartan_split",
    "classify",
    "classify_vector",
    "complex_structure",
    "conjugation_apply",
    "contact_defect",
    "curvature",
    "curvature_oracle",
    "deta_defect",
    "exp",
    "geodesic_point",
    "hopf_data",
    "induced_structure",
    "integrate_jacobi",
    "make_context",
    "mean_curvature",
    "metric",
    "normal_jacobi",
    "sample_unit_tangent",
    "singular_decompose",
    "solve_principal_curvatures",
    "transport_frame",
    "tube_contact_constant",
    "tube_table",
    "v_space_basis",
]

"""Exact computations around Newton-Okounkov bodies and complexity functions.

Submodules: ``lattice`` (Neron-Severi data and cones), ``zariski``, ``nok``
(surface bodies and slice families), ``cohomology`` (Kunneth tables),
``holonomic`` (guessing and certification), ``cli``.
"""
from .cohomology import (
    CoefficientTable,
    EllipticCurve,
    MultidegreeRay,
    ProjectiveSpace,
    cohomology_elliptic,
    cohomology_projective_space,
    kunneth_table,
)
from .holonomic import (
    HolonomicCertificate,
    OdeOperator,
    RationalFit,
    Verdict,
    certify_complexity,
    fit_eventual_polynomial,
    guess_ode,
    guess_rational,
)
from .io import load_surface
from .lattice import (
    INFINITE,
    ConeKind,
    ConeSpec,
    DivisorClass,
    ForeignClassError,
    IntersectionForm,
    PreconditionError,
    SurfaceData,
    cone_contains,
    cone_exit_time,
    intersect,
    pull_back,
    pullback_embed,
)
from .nok import (
    BoundaryKind,
    BoundaryVerdict,
    FlagOnSurface,
    NokBody,
    SliceRegion,
    assemble_slice_body,
    build_klm_family,
    classify_boundary,
    epsilon_sup,
    nok_surface_body,
    slice_region,
)
from .surd import QuadSurd
from .zariski import ZariskiDecomposition, is_pseudoeffective, zariski_decompose

__version__ = "0.1.0"

"""Representations of bound quiver algebras over QQ and F_p."""

from .algebra import AlgebraMismatch, Arrow, BoundQuiverAlgebra, Quiver, Relation
from .constructions import (
    INF,
    ConditionsViolated,
    DuplicatePoints,
    InfinitePointUnsupported,
    TooFewPoints,
    build_tilting_apr,
    build_tilting_canonical,
    canonical_algebra,
    cd_algebra,
    check_conditions,
    n_module,
    squid_algebra,
    theta0_matrix,
)
from .homological import (
    InjectiveSummand,
    ProjectiveSummand,
    ar_translate,
    ar_translate_inverse,
    dim_vector_matrix,
    end_dims,
    euler_form,
    ext_dim,
    hom_dim,
    hom_space,
    injective_dimension,
    is_cotilting,
    is_indecomposable,
    is_isomorphic,
    is_tilting,
    min_proj_presentation,
    projective_dimension,
    self_ext_vanishes,
    tilting_report,
    syzygy,
)
from .reflection import NotHereditary, WrongVertexType, bgp_reflect, canonical_chain
from .rep import Representation, dual, injective, projective, simple, top

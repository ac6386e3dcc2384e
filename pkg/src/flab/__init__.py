"""Filtered semilinear modules with pairings over finite local rings."""

from __future__ import annotations

from .errors import FlabError
from .feasibility import GroupType, feasibility_report, root_data
from .gf import find_nonvanishing_pair, p_polynomial_value
from .lifting import LiftProblem, lift_small, lift_tower
from .linalg import Matrix
from .modules import (
    FLBlock,
    FLModule,
    base_change,
    dual,
    hom_mf,
    is_morphism,
    reduce,
    tensor,
    validate,
)
from .pairing import (
    LData,
    PairedFLModule,
    normalize_standard,
    reduce_paired,
    standard_gram,
    validate_pairing,
)
from .rings import RingElem, make_field, make_ring, make_small_surjection
from .simples import (
    SimpleSpec,
    all_embeddings,
    build_simple,
    change_of_basis,
    summand_embedding,
    tensor_decompose,
)
from .tangent import deformation_count, tangent_report

__all__ = [
    "FLBlock",
    "FLModule",
    "FlabError",
    "GroupType",
    "LData",
    "LiftProblem",
    "Matrix",
    "PairedFLModule",
    "RingElem",
    "SimpleSpec",
    "all_embeddings",
    "base_change",
    "build_simple",
    "change_of_basis",
    "deformation_count",
    "dual",
    "feasibility_report",
    "find_nonvanishing_pair",
    "hom_mf",
    "is_morphism",
    "lift_small",
    "lift_tower",
    "make_field",
    "make_ring",
    "make_small_surjection",
    "normalize_standard",
    "p_polynomial_value",
    "reduce",
    "reduce_paired",
    "root_data",
    "standard_gram",
    "summand_embedding",
    "tangent_report",
    "tensor",
    "tensor_decompose",
    "validate",
    "validate_pairing",
]

__version__ = "0.1.0"

"""Exact computations with N-complexes: homology, homotopy, cones and suspensions."""

from __future__ import annotations

from .classes import (
    ClassSpec,
    class_membership,
    disc_ext_checks,
    disc_lifting_criterion,
    ext_dw_dim,
    orthogonality_spot_test,
    prop31_criterion,
    lifting_obstruction,
)
from .complexes import (
    AmplitudeHomology,
    ChainMap,
    NComplex,
    boundaries,
    compose_maps,
    cycles,
    direct_sum,
    disc,
    epi_criterion,
    homology,
    homology_table,
    identity_map,
    is_chain_map,
    is_n_exact,
    stalk,
    validate,
    zero_complex,
)
from .errors import NComplexError
from .homotopy import Homotopy, HomKSpace, hom_k, homotopic, is_contractible, null_homotopy, realize
from .linalg import CoefficientDomain, ExactMatrix, kernel_basis, rank, smith_normal_form, solve
from .serialize import dumps, load, loads, save
from .triangles import (
    DegreewiseSplitSES,
    StrictTriangle,
    cone,
    hull,
    inv_suspension,
    lemma41_retraction,
    psi,
    split_test,
    strict_retraction,
    suspension,
)

__all__ = [
    "AmplitudeHomology",
    "annotations",
    "boundaries",
    "ChainMap",
    "class_membership",
    "ClassSpec",
    "CoefficientDomain",
    "compose_maps",
    "cone",
    "cycles",
    "DegreewiseSplitSES",
    "direct_sum",
    "disc",
    "disc_ext_checks",
    "disc_lifting_criterion",
    "dumps",
    "epi_criterion",
    "ExactMatrix",
    "ext_dw_dim",
    "hom_k",
    "HomKSpace",
    "homology",
    "homology_table",
    "homotopic",
    "Homotopy",
    "hull",
    "identity_map",
    "inv_suspension",
    "is_chain_map",
    "is_contractible",
    "is_n_exact",
    "kernel_basis",
    "lemma41_retraction",
    "load",
    "loads",
    "NComplex",
    "NComplexError",
    "null_homotopy",
    "orthogonality_spot_test",
    "prop31_criterion",
    "lifting_obstruction",
    "psi",
    "rank",
    "realize",
    "save",
    "smith_normal_form",
    "solve",
    "split_test",
    "strict_retraction",
    "stalk",
    "StrictTriangle",
    "suspension",
    "validate",
    "zero_complex",
]

__version__ = "0.1.0"

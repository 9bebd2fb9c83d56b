"""Exact computation with N-complexes over prime fields."""

from .exactla import (
    Matrix,
    NoRootError,
    PrimeField,
    kernel_basis,
    multiply,
    primitive_root_of_unity,
    random_invertible,
    rank,
    solve_right,
)
from .ncomplex import (
    ComplexError,
    Indec,
    NComplex,
    SummandMultiset,
    Violation,
    assemble,
    dimension_vector,
    direct_sum,
    indecomposable,
    random_ncomplex,
    shift,
    validate,
)
from .cohomology import AHTable, ah_dim, ah_indec, ah_table, contract, h2_dim, is_acyclic, is_projective
from .decompose import InconsistentTableError, decompose, iso, peel_nonprojectives, stably_equal
from .tensorfusion import RootOfUnity, clebsch_gordan, fusion_check, tensor
from .homext import ext_dim, hom_dim, is_injective_positive, is_positive, projective_cover, projective_resolution

__version__ = "0.1.0"

"""Constructions and exhaustive certification of 1-perfect mixed codes."""

from .galois import FieldTable, make_field
from .grm import GrmSpec, grm_dimension, grm_generate, grm_min_distance, is_rm_like
from .kernels import BACKEND
from .mdsq import Quasigroup, code_from_quasigroup, is_mds2, linear_mds2, quasigroup_from_code
from .partition import Partition, coset_partition_rm, validate_partition
from .space import Code, MixedSpace, are_equivalent, is_perfect, minimum_distance

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Code",
    "FieldTable",
    "GrmSpec",
    "MixedSpace",
    "Partition",
    "Quasigroup",
    "are_equivalent",
    "code_from_quasigroup",
    "coset_partition_rm",
    "grm_dimension",
    "grm_generate",
    "grm_min_distance",
    "is_mds2",
    "is_perfect",
    "is_rm_like",
    "linear_mds2",
    "make_field",
    "minimum_distance",
    "quasigroup_from_code",
    "validate_partition",
]

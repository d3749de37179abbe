"""Exact generalized inverses over the Gaussian rationals and reverse order
laws for matrix products."""

from .exactnum import GaussianRational, format_scalar, parse_scalar
from .ginverse import GInvClass, is_member, membership_profile, pinv, sample_ginverse
from .matrix import Matrix, dumps_matrix, loads_matrix, rank

__version__ = "0.1.0"

__all__ = [
    "GInvClass", "GaussianRational", "Matrix", "dumps_matrix", "format_scalar", "is_member",
    "loads_matrix", "membership_profile", "parse_scalar", "pinv", "rank", "sample_ginverse",
]

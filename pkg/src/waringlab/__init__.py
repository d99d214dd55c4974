"""Exact-arithmetic ranks, decomposition families, and non-uniqueness sets
for binary forms, rational curves, and Veronese embeddings."""

from .binform import BinaryForm, apolar_slice, catalecticant, contract
from .exactlin import LinearSubspace, Matrix, QQ
from .rankengine import RankProfile, non_uniqueness_set, rank_profile
from .veronese import VeroneseMap, detect_configuration, h_values

__all__ = [
    "BinaryForm",
    "LinearSubspace",
    "Matrix",
    "QQ",
    "RankProfile",
    "VeroneseMap",
    "apolar_slice",
    "catalecticant",
    "contract",
    "detect_configuration",
    "h_values",
    "non_uniqueness_set",
    "rank_profile",
]

__version__ = "0.1.0"

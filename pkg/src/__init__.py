"""troprank - exact tropical (min-plus) matrix factorization toolkit."""

__version__ = "1.0.0"
__author__ = "troprank contributors"

from .oracle import factor_rank_exact, factor_rank_le_k
from .rank3 import decide_factor_rank_le3
from .trop_core import INF, Factorization, Scaling, TropMatrix, trop_mat_mul, verify_product

__all__ = [
    "INF",
    "Factorization",
    "Scaling",
    "TropMatrix",
    "decide_factor_rank_le3",
    "factor_rank_exact",
    "factor_rank_le_k",
    "trop_mat_mul",
    "verify_product",
]

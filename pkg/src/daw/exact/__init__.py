from .linalg import SparseMatrix, Subspace, matrix_rank, modular_rank, nullspace, rank_dense, rref
from .rings import RingSpec, Scalar, scalar_arith
from .snf import SNFResult, smith_normal_form

__all__ = [
    "RingSpec",
    "Scalar",
    "scalar_arith",
    "SparseMatrix",
    "Subspace",
    "matrix_rank",
    "modular_rank",
    "nullspace",
    "rank_dense",
    "rref",
    "SNFResult",
    "smith_normal_form",
]

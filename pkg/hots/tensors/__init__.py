from .vectors import StochasticVector
from .dense import DenseTensor3, tensor_one_norm, random_stochastic, convex_combination
from .sparse import SparseTensor3
from .operator import (
    TransitionOperator,
    RankOne,
    LiftedMatrix,
    left_identity,
    right_identity,
    make_identity,
    pagerank_operator,
    shifted_operator,
)
from .checks import validate_stochastic, apply_bilinear, collapse, s_transpose, symmetrize, as_dense
from .io import read_tensor, write_tensor
from .builtins import BUILTINS, get_builtin

__all__ = [
    "StochasticVector",
    "DenseTensor3",
    "SparseTensor3",
    "TransitionOperator",
    "RankOne",
    "LiftedMatrix",
    "left_identity",
    "right_identity",
    "make_identity",
    "pagerank_operator",
    "shifted_operator",
    "tensor_one_norm",
    "random_stochastic",
    "convex_combination",
    "validate_stochastic",
    "apply_bilinear",
    "collapse",
    "s_transpose",
    "symmetrize",
    "as_dense",
    "read_tensor",
    "write_tensor",
    "BUILTINS",
    "get_builtin",
]

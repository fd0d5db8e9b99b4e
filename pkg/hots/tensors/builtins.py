"""Small reference tensors used in examples and experiments"""

from typing import Callable, Dict

from ..core.errors import InvalidInputError
from .dense import DenseTensor3


def example61() -> DenseTensor3:
    """Sparse tensor with T = 1/2 but Birkhoff coefficient 2"""
    return DenseTensor3.from_slices(
        [
            [[0, 1, 1], [1, 0, 0], [1, 1, 1]],
            [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
            [[0, 0, 0], [2, 0, 1], [0, 2, 1]],
        ],
        scale=0.5,
    )


def P1() -> DenseTensor3:
    """Multilinear PageRank test tensor with T > 1

    The (3, 2) entry of the second slice is 1; any other value leaves that
    column without unit mass.
    """
    third = 1.0 / 3.0
    return DenseTensor3.from_slices(
        [
            [[third, third, third], [third, third, third], [third, third, third]],
            [[third, 0, 0], [third, 0, 0.5], [third, 1, 0.5]],
            [[0, 0, 0], [1, 0, 1], [0, 1, 0]],
        ]
    )


def P2() -> DenseTensor3:
    third = 1.0 / 3.0
    return DenseTensor3.from_slices(
        [
            [[0, 0, third], [0, 0, third], [1, 1, third]],
            [[third, 0, 0], [third, 0, 0], [third, 1, 1]],
            [[0.5, 0.5, 0.5], [0, 0, 0.5], [0.5, 0.5, 0]],
        ]
    )


BUILTINS: Dict[str, Callable[[], DenseTensor3]] = {
    "P1": P1,
    "P2": P2,
    "example61": example61,
}


def get_builtin(name: str) -> DenseTensor3:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise InvalidInputError(f"unknown builtin tensor {name!r}; choose from {sorted(BUILTINS)}") from None

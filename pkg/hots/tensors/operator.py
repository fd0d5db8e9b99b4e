"""Weighted combinations of transition tensors

A TransitionOperator applies sum_t w_t * operand_t(x, y) without ever
building a dense tensor, so P_alpha = alpha P + (1 - alpha) V, the shifted
P_sigma = sigma P + (1 - sigma) E and the graph blend beta T + (1 - beta) A
all stay as cheap as their parts.
"""

from dataclasses import dataclass
from typing import Iterable, List, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..core.errors import InvalidInputError
from .dense import DenseTensor3
from .sparse import SparseTensor3
from .vectors import StochasticVector

WEIGHT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RankOne:
    """The tensor V with V_ijk = v_i"""

    v: np.ndarray

    @property
    def n(self) -> int:
        return self.v.size

    def apply(self, x, y) -> np.ndarray:
        return self.v * (np.sum(x) * np.sum(y))

    def to_dense(self) -> DenseTensor3:
        return DenseTensor3.rank_one(self.v)


@dataclass(frozen=True, eq=False)
class LiftedMatrix:
    """A matrix acting on one slot: P_ijk = A_ij ("left") or P_ijk = A_ik ("right")

    With the identity matrix these are E^L and E^R; with the graph transition
    matrix the left lift is the edge tensor.
    """

    matrix: Union[np.ndarray, sp.spmatrix]
    slot: str = "left"

    def __post_init__(self):
        if self.slot not in ("left", "right"):
            raise InvalidInputError(f"slot must be 'left' or 'right', got {self.slot!r}")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x, y) -> np.ndarray:
        if self.slot == "left":
            return np.asarray(self.matrix @ np.asarray(x, dtype=float)).ravel() * np.sum(y)
        return np.asarray(self.matrix @ np.asarray(y, dtype=float)).ravel() * np.sum(x)

    def to_dense(self) -> DenseTensor3:
        return DenseTensor3.lifted(self.matrix, self.slot)


Operand = Union[DenseTensor3, SparseTensor3, RankOne, LiftedMatrix, "TransitionOperator"]


def left_identity(n: int) -> LiftedMatrix:
    """E^L_ijk = delta_ij"""
    return LiftedMatrix(sp.identity(n, format="csr"), "left")


def right_identity(n: int) -> LiftedMatrix:
    """E^R_ijk = delta_ik"""
    return LiftedMatrix(sp.identity(n, format="csr"), "right")


class TransitionOperator:
    """Convex combination of stochastic operands"""

    def __init__(self, terms: Iterable[Tuple[float, Operand]]):
        flat: List[Tuple[float, Operand]] = []
        for weight, operand in terms:
            weight = float(weight)
            if not -WEIGHT_TOL <= weight <= 1.0 + WEIGHT_TOL:
                raise InvalidInputError(f"weight {weight} outside [0, 1]")
            if isinstance(operand, TransitionOperator):
                flat.extend((weight * w, op) for w, op in operand.terms)
            else:
                flat.append((weight, operand))
        if not flat:
            raise InvalidInputError("operator needs at least one term")
        total = sum(w for w, _ in flat)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise InvalidInputError(f"weights sum to {total!r}, not 1")
        sizes = {op.n for _, op in flat}
        if len(sizes) != 1:
            raise InvalidInputError(f"operands have mismatched dimensions {sorted(sizes)}")
        for _, op in flat:
            if isinstance(op, DenseTensor3) and not op.stochastic_checked:
                raise InvalidInputError("dense operands must be stochastic")
        self._n = sizes.pop()
        # zero-weight terms contribute nothing
        self.terms: Tuple[Tuple[float, Operand], ...] = tuple((w, op) for w, op in flat if w > 0.0)

    @classmethod
    def combine(cls, terms: Iterable[Tuple[float, Operand]]) -> "TransitionOperator":
        return cls(terms)

    @property
    def n(self) -> int:
        return self._n

    @property
    def stochastic_checked(self) -> bool:
        return True

    def __repr__(self) -> str:
        parts = ", ".join(f"{w:g}*{type(op).__name__}" for w, op in self.terms)
        return f"TransitionOperator(n={self.n}, {parts})"

    def apply(self, x, y) -> np.ndarray:
        out = None
        for weight, operand in self.terms:
            term = weight * operand.apply(x, y)
            out = term if out is None else out + term
        return out

    def to_dense(self) -> DenseTensor3:
        arr = np.zeros((self._n,) * 3)
        for weight, operand in self.terms:
            arr += weight * operand.to_dense().entries
        return DenseTensor3(arr)


def make_identity(n: int, left_weight: float = 0.5) -> TransitionOperator:
    """E = a E^L + (1 - a) E^R, which satisfies Exx = x on the simplex"""
    if not 0.0 <= left_weight <= 1.0:
        raise InvalidInputError(f"left weight must lie in [0, 1], got {left_weight}")
    return TransitionOperator([(left_weight, left_identity(n)), (1.0 - left_weight, right_identity(n))])


def pagerank_operator(P: Operand, alpha: float, v=None) -> TransitionOperator:
    """P_alpha = alpha P + (1 - alpha) V"""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidInputError(f"alpha must lie in [0, 1], got {alpha}")
    v = StochasticVector.uniform(P.n) if v is None else v
    if not isinstance(v, StochasticVector):
        v = StochasticVector(v)
    return TransitionOperator([(alpha, P), (1.0 - alpha, RankOne(v.values))])


def shifted_operator(P: Operand, sigma: float, left_weight: float = 0.5) -> TransitionOperator:
    """P_sigma = sigma P + (1 - sigma) E"""
    if not 0.0 <= sigma <= 1.0:
        raise InvalidInputError(f"sigma must lie in [0, 1], got {sigma}")
    return TransitionOperator([(sigma, P), (1.0 - sigma, make_identity(P.n, left_weight))])

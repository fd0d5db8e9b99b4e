"""Vertex-reinforced random walks and the spacey random walk

The deterministic walk couples the iterate x_t with a running occupation
vector y_t:

    x_{t+1} = P x_t y_t
    y_{t+1} = c_t x_t + (1 - c_t) y_t

The harmonic schedule c_t = 1/(t+1) is the spacey walk and c_t = 1 is the
alternate power method. The sampled process lives in ``simulate_spacey_mc``.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from ..coefficients.ergodic import tauL, tauR
from ..core.errors import InvalidInputError
from ..core.models import SolveReport, SpaceyWalkResult
from ..tensors.dense import DenseTensor3
from ..tensors.vectors import normalize
from .iteration import (
    DEFAULT_MAXIT,
    DEFAULT_TOL,
    check_simplex,
    dense_or_none,
    log_outcome,
    require_stochastic,
    start_vector,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScheduleC:
    """Reinforcement schedule c_t

    Attributes:
        kind: "constant", "harmonic" or "custom"
        value: the constant c for kind "constant"
        values: c_0, c_1, ... for kind "custom"; the last value repeats
        divergent: custom lists declare whether sum c_t diverges
        allow_nonmonotone: run increasing custom lists (no certificate)
    """

    kind: str = "harmonic"
    value: float = 1.0
    values: Tuple[float, ...] = field(default_factory=tuple)
    divergent: bool = False
    allow_nonmonotone: bool = False

    def __post_init__(self):
        if self.kind == "constant":
            if not 0.0 <= self.value <= 1.0:
                raise InvalidInputError(f"constant schedule needs c in [0, 1], got {self.value}")
        elif self.kind == "custom":
            vals = np.asarray(self.values, dtype=float)
            if vals.size == 0:
                raise InvalidInputError("custom schedule needs at least one value")
            if vals.min() < 0.0 or vals.max() > 1.0:
                raise InvalidInputError("schedule values must lie in [0, 1]")
            if not self.monotone and not self.allow_nonmonotone:
                raise InvalidInputError("schedule must be non-increasing (set allow_nonmonotone to run anyway)")
        elif self.kind != "harmonic":
            raise InvalidInputError(f"unknown schedule kind {self.kind!r}")

    @classmethod
    def constant(cls, c: float) -> "ScheduleC":
        return cls("constant", value=float(c))

    @classmethod
    def harmonic(cls) -> "ScheduleC":
        return cls("harmonic")

    @classmethod
    def custom(cls, values: Sequence[float], divergent: bool = False, allow_nonmonotone: bool = False) -> "ScheduleC":
        return cls("custom", values=tuple(float(v) for v in values), divergent=divergent,
                   allow_nonmonotone=allow_nonmonotone)

    @classmethod
    def parse(cls, text: str) -> "ScheduleC":
        """'harmonic', 'constant:<c>' or 'custom:<c0>,<c1>,...'"""
        name, _, arg = text.partition(":")
        try:
            if name == "harmonic" and not arg:
                return cls.harmonic()
            if name == "constant":
                return cls.constant(float(arg))
            if name == "custom":
                return cls.custom([float(v) for v in arg.split(",")])
        except ValueError as e:
            raise InvalidInputError(f"bad schedule {text!r}: {e}") from e
        raise InvalidInputError(f"bad schedule {text!r}; use harmonic, constant:<c> or custom:<c0>,<c1>,...")

    def __call__(self, t: int) -> float:
        if self.kind == "constant":
            return self.value
        if self.kind == "harmonic":
            return 1.0 / (t + 1)
        return self.values[min(t, len(self.values) - 1)]

    @property
    def monotone(self) -> bool:
        if self.kind != "custom":
            return True
        return bool(np.all(np.diff(self.values) <= 0.0))

    @property
    def certifiable(self) -> bool:
        """Non-increasing with sum c_t = infinity"""
        if self.kind == "constant":
            return self.value > 0.0
        if self.kind == "harmonic":
            return True
        return self.monotone and self.divergent and self.values[-1] > 0.0


def vrrw_iterate(
    P,
    x0=None,
    y0=None,
    schedule: Optional[ScheduleC] = None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    keep_iterates: bool = False,
) -> SolveReport:
    """Generalized vertex-reinforced walk

    The residual is ||x_{t+1} - x_t||_1. y_t is returned as ``final_y`` and
    the final gap ||x - y||_1 is kept in diagnostics under ``x_minus_y``.
    """
    require_stochastic(P)
    schedule = schedule or ScheduleC.harmonic()
    if tol <= 0 or maxit < 1:
        raise InvalidInputError(f"need tol > 0 and maxit >= 1, got tol={tol}, maxit={maxit}")
    x = start_vector(x0, P.n)
    y = start_vector(x if y0 is None else y0, P.n, "y0")
    history = []
    iterates = [x.copy()] if keep_iterates else None
    converged = False
    for t in range(maxit):
        c = schedule(t)
        x_new = normalize(P.apply(x, y))
        y = c * x + (1.0 - c) * y
        check_simplex(x_new, t + 1)
        res = float(np.abs(x_new - x).sum())
        history.append(res)
        x = x_new
        if keep_iterates:
            iterates.append(x.copy())
        if res < tol:
            converged = True
            break

    report = SolveReport(x, len(history), history, converged, tol, final_y=y, iterates=iterates)
    report.diagnostics["x_minus_y"] = float(np.abs(x - y).sum())
    dense = dense_or_none(P)
    if dense is not None:
        s = tauL(dense).value + tauR(dense).value
        report.diagnostics["TL+TR"] = s
        if not schedule.certifiable:
            logger.warning("vrrw: schedule is not non-increasing with divergent sum; certificate withheld")
        elif s < 1.0:
            report.certified_rate = s
            report.certificate_name = "TL(P) + TR(P) < 1 with divergent schedule"
            report.unique = True
    log_outcome("vrrw", converged, report.iterations, report.last_residual)
    return report


def _column_law(P, state: int, y: np.ndarray) -> np.ndarray:
    """Column ``state`` of M(y) with M(y)_ij = sum_k P_ijk y_k"""
    if isinstance(P, DenseTensor3):
        return P.entries[:, state, :] @ y
    e = np.zeros(P.n)
    e[state] = 1.0
    return P.apply(e, y)


def simulate_spacey_mc(P, x0_state: int = 0, steps: int = 100000, seed=None) -> SpaceyWalkResult:
    """Sample the spacey random walk

    From X(t) the next state is drawn from column X(t) of M(y_t), where
    (y_t)_j = (1 + #{1 <= s <= t : X(s) = j}) / (t + n).
    """
    require_stochastic(P)
    n = P.n
    if steps < 1:
        raise InvalidInputError(f"steps must be >= 1, got {steps}")
    if not 0 <= x0_state < n:
        raise InvalidInputError(f"start state {x0_state} out of range for n={n}")
    rng = np.random.default_rng(seed)
    uniforms = rng.random(steps)
    counts = np.zeros(n, dtype=np.int64)
    state = x0_state
    for t in range(steps):
        y = (1.0 + counts) / (t + n)
        cdf = np.cumsum(_column_law(P, state, y))
        state = min(int(np.searchsorted(cdf, uniforms[t] * cdf[-1], side="right")), n - 1)
        counts[state] += 1
    occupation = (1.0 + counts) / (steps + n)
    return SpaceyWalkResult(occupation, counts, steps, state, seed if isinstance(seed, int) else None)

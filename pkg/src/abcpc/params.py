"""Fractional-order parameters and the uniform time grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError


class Normalization(str, Enum):
    UNIT = "unit"
    GAMMA = "gamma"


def ab_gamma_form(alpha: float) -> float:
    """AB(alpha) = 1 - alpha + alpha / Gamma(alpha)."""
    return 1.0 - alpha + alpha / math.gamma(alpha)


@dataclass(frozen=True)
class ABCParams:
    """Order ``alpha`` of the Atangana-Baleanu-Caputo operator and its AB(alpha)."""

    alpha: float
    normalization: Normalization = Normalization.UNIT
    ab_of_alpha: float = field(default=float("nan"))

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not (0.0 < alpha < 1.0) or not math.isfinite(alpha):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        kind = Normalization(self.normalization)
        expected = 1.0 if kind is Normalization.UNIT else ab_gamma_form(alpha)
        ab = self.ab_of_alpha
        if math.isnan(ab):
            ab = expected
        elif abs(ab - expected) > 1e-15 * max(1.0, abs(expected)):
            raise DomainError(
                f"ab_of_alpha={ab!r} inconsistent with {kind.value} normalization ({expected!r})"
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "normalization", kind)
        object.__setattr__(self, "ab_of_alpha", ab)

    @classmethod
    def from_choice(cls, alpha: float, ab: str | Normalization = "unit") -> "ABCParams":
        return cls(alpha=alpha, normalization=Normalization(ab))

    @property
    def local_coeff(self) -> float:
        """(1 - alpha) / AB(alpha), multiplies the pointwise f term."""
        return (1.0 - self.alpha) / self.ab_of_alpha

    @property
    def memory_coeff(self) -> float:
        """alpha / (AB(alpha) Gamma(alpha)), multiplies the power-kernel integral."""
        return self.alpha / (self.ab_of_alpha * math.gamma(self.alpha))


@dataclass(frozen=True)
class Grid:
    t_end: float
    n_steps: int

    def __post_init__(self) -> None:
        if not (self.t_end > 0.0 and math.isfinite(self.t_end)):
            raise DomainError(f"t_end must be positive and finite, got {self.t_end!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise DomainError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def h(self) -> float:
        return self.t_end / self.n_steps

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.h

    def t(self, k: float) -> float:
        """Node time for a (possibly fractional) index, e.g. ``t(0.25)``."""
        return k * self.h

    @property
    def startup_nodes(self) -> tuple[float, float]:
        return (0.25 * self.h, 0.5 * self.h)

"""Convolution weights for the power kernel (t - s)**(alpha - 1).

Every weight is an integral of the kernel against a quadratic Lagrange
basis over one panel of a uniform grid. In h units a panel [t_k, t_{k+1}]
seen from target t_m has local coordinate sigma in [0, 1] and kernel
(d - sigma)**(alpha - 1) with d = m - k, so all weights reduce to the
three panel moments

    M_p(d) = int_0^1 (d - sigma)**(alpha - 1) * sigma**p dsigma,  p = 0, 1, 2

scaled by h**alpha. Weights therefore depend on the target only through d,
and a whole run needs O(N) numbers rather than a triangular table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError
from .params import ABCParams, Grid

# panels with d above this use the 1/d binomial series instead of the
# expanded closed form, whose cancellation grows like d**2
_SERIES_FROM = 2.5
_SERIES_TERMS_CAP = 400


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")


def moment_primitive(alpha: float, p: int, c: float, d: float) -> float:
    """mu_p(c, d) = int_c^d u**(alpha + p - 1) du for 0 <= c < d."""
    e = alpha + p
    if c == 0.0:
        return d**e / e
    # d**e - c**e without cancellation
    return c**e * math.expm1(e * math.log1p((d - c) / c)) / e


def _moments_closed(alpha: float, d: float) -> tuple[float, float, float]:
    # sigma = d - u on u in [d - 1, d]
    c = d - 1.0
    mu = [moment_primitive(alpha, p, c, d) for p in range(3)]
    m0 = mu[0]
    m1 = d * mu[0] - mu[1]
    m2 = d * d * mu[0] - 2.0 * d * mu[1] + mu[2]
    return m0, m1, m2


def _moments_series(alpha: float, d: np.ndarray) -> np.ndarray:
    # (d - s)**(alpha-1) = d**(alpha-1) * sum_m (1-alpha)_m / m! * (s/d)**m, all terms positive
    n_terms = int(min(_SERIES_TERMS_CAP, math.ceil(40.0 / math.log(d.min())) + 2))
    m = np.arange(n_terms)
    coef = np.ones(n_terms)
    for i in range(1, n_terms):
        coef[i] = coef[i - 1] * (i - alpha) / i
    inv_pow = d[None, :] ** (-m[:, None].astype(float))
    out = np.empty((3, d.size))
    for p in range(3):
        out[p] = (coef / (m + p + 1.0)) @ inv_pow
    return out * d ** (alpha - 1.0)


def panel_moments(alpha: float, d) -> np.ndarray:
    """M_p(d) for p = 0, 1, 2; returns shape (3, len(d)). Requires d >= 1."""
    _check_alpha(alpha)
    d = np.atleast_1d(np.asarray(d, dtype=float))
    if np.any(d < 1.0):
        raise DomainError("panel moments need d >= 1")
    out = np.empty((3, d.size))
    far = d > _SERIES_FROM
    if np.any(far):
        out[:, far] = _moments_series(alpha, d[far])
    for i in np.flatnonzero(~far):
        if d[i] == 1.0:
            # Beta integrals B(p + 1, alpha)
            g = math.gamma(alpha)
            out[:, i] = (g / math.gamma(alpha + 1.0),
                         g / math.gamma(alpha + 2.0),
                         2.0 * g / math.gamma(alpha + 3.0))
        else:
            out[:, i] = _moments_closed(alpha, float(d[i]))
    return out


def interior_basis_weights(moments: np.ndarray) -> np.ndarray:
    """Weights for nodes sigma = -1, 0, 1 (i.e. t_{k-1}, t_k, t_{k+1})."""
    m0, m1, m2 = moments
    return np.stack([(m2 - m1) / 2.0, m0 - m2, (m2 + m1) / 2.0])


def first_panel_weights(moments: np.ndarray) -> np.ndarray:
    """Weights for nodes sigma = 0, 1/2, 1 (i.e. t_0, t_{1/2}, t_1)."""
    m0, m1, m2 = moments
    return np.stack([m0 - 3.0 * m1 + 2.0 * m2, 4.0 * (m1 - m2), 2.0 * m2 - m1])


@dataclass(frozen=True)
class IncrementWeights:
    b0: float
    b1: float
    b2: float
    scale_B: float

    @property
    def b(self) -> np.ndarray:
        return np.array([self.b0, self.b1, self.b2])


def increment_weights(params: ABCParams | float, h: float) -> IncrementWeights:
    """Extrapolation weights on [t_n, t_{n+1}] for a quadratic through t_{n-2}, t_{n-1}, t_n.

    The kernel integral over the panel equals ``scale_B * (b0*psi_{n-2} + b1*psi_{n-1}
    + b2*psi_n)`` for every quadratic psi.
    """
    alpha = params.alpha if isinstance(params, ABCParams) else float(params)
    _check_alpha(alpha)
    if not h > 0.0:
        raise DomainError(f"h must be positive, got {h!r}")
    return IncrementWeights(
        b0=(alpha + 4.0) / 2.0,
        b1=-2.0 * (alpha + 3.0),
        b2=(2.0 * alpha * alpha + 9.0 * alpha + 12.0) / 2.0,
        scale_B=h**alpha / (alpha * (alpha + 1.0) * (alpha + 2.0)),
    )


@dataclass(frozen=True)
class LagWeightTable:
    """Weights a^{j,k}_{target} for panels k = 0 .. target-1 (rows j = 0, 1, 2)."""

    target: int
    weights: np.ndarray
    alpha: float


class WeightTable:
    """All panel weights of one run, indexed by target - k.

    ``interior[j, d]`` is a^{j,k}_{m} / h**alpha for k >= 1 and d = m - k;
    ``first[j, m]`` is a^{j,0}_{m} / h**alpha.  Column 0 is unused.
    """

    def __init__(self, params: ABCParams, grid: Grid):
        self.params = params
        self.grid = grid
        self.alpha = params.alpha
        self.h_alpha = grid.h**params.alpha
        d = np.arange(1, grid.n_steps + 1, dtype=float)
        mom = panel_moments(params.alpha, d)
        pad = np.zeros((3, 1))
        interior = np.hstack([pad, interior_basis_weights(mom)])
        first = np.hstack([pad, first_panel_weights(mom)])
        interior.setflags(write=False)
        first.setflags(write=False)
        self.interior = interior
        self.first = first

    @cached_property
    def increment(self) -> IncrementWeights:
        return increment_weights(self.params, self.grid.h)

    def lag_weights(self, target: int) -> LagWeightTable:
        if not 1 <= target <= self.grid.n_steps:
            raise DomainError(f"target must lie in [1, {self.grid.n_steps}], got {target!r}")
        w = np.empty((3, target))
        w[:, 0] = self.first[:, target]
        if target > 1:
            w[:, 1:] = self.interior[:, target - 1:0:-1]
        return LagWeightTable(target=target, weights=w * self.h_alpha, alpha=self.alpha)


def lag_weights(params: ABCParams, grid: Grid, target: int) -> LagWeightTable:
    return WeightTable(params, grid).lag_weights(target)


def kernel_interpolation_weights(alpha: float, nodes, t_star: float) -> np.ndarray:
    """Weights w with int_0^{t*} (t* - s)**(alpha-1) P(s) ds = sum_i w_i P(nodes_i).

    P is the Lagrange interpolant through ``nodes`` (degree len(nodes) - 1);
    nodes may lie anywhere, the interpolant is integrated over [0, t*].
    """
    _check_alpha(alpha)
    x = np.asarray(nodes, dtype=float) / t_star
    deg = x.size
    # int_0^1 (1 - x)**(alpha-1) x**p dx = Gamma(alpha) p! / Gamma(alpha + p + 1)
    ga = math.gamma(alpha)
    beta_moments = np.array([ga * math.factorial(p) / math.gamma(alpha + p + 1.0) for p in range(deg)])
    vander = np.vander(x, deg, increasing=True)
    return t_star**alpha * np.linalg.solve(vander.T, beta_moments)

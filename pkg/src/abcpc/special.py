"""Gamma and Mittag-Leffler functions for real arguments.

The Mittag-Leffler function is evaluated from its defining power series

    E_{a,b}(z) = sum_k z**k / Gamma(a*k + b)

with compensated summation. Alternating series whose largest term would
swamp double precision are summed in extended precision instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import ConvergenceError, DomainError
from .params import ABCParams

Z_MAX = 50.0
MAX_TERMS = 10_000
_REL_STOP = 1e-16
_STOP_RUN = 3


def gamma(x: float) -> float:
    """Gamma function for finite ``x > 0``."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma is defined here for finite x > 0, got {x!r}")
    return math.gamma(x)


@dataclass(frozen=True)
class MLFQuery:
    z: float
    alpha: float
    beta: float = 1.0

    def validate(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be > 0, got {self.alpha!r}")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be > 0, got {self.beta!r}")
        if not math.isfinite(self.z) or abs(self.z) > Z_MAX:
            raise DomainError(f"|z| must not exceed {Z_MAX}, got {self.z!r}")


def _log_abs_term(k: int, logz: float, alpha: float, beta: float) -> float:
    return k * logz - math.lgamma(alpha * k + beta)


def _peak_log_term(z: float, alpha: float, beta: float) -> float:
    """Largest log|term| of the series (terms are log-concave in k)."""
    if z == 0.0:
        return -math.lgamma(beta)
    logz = math.log(abs(z))
    best = -math.inf
    for k in range(MAX_TERMS):
        val = _log_abs_term(k, logz, alpha, beta)
        if val > best:
            best = val
        elif val < best - 40.0:
            break
    return best


def _series_float(z: float, alpha: float, beta: float) -> float:
    total = 0.0
    comp = 0.0
    small = 0
    logz = math.log(abs(z)) if z != 0.0 else -math.inf
    for k in range(MAX_TERMS):
        arg = alpha * k + beta
        if arg < 170.0 and (k == 0 or k * logz < 700.0):
            term = z**k / math.gamma(arg)
        else:
            log_mag = k * logz - math.lgamma(arg)
            if log_mag > 709.0:
                raise ConvergenceError(
                    f"E_{{{alpha},{beta}}}({z}) exceeds the double range")
            mag = math.exp(log_mag)
            term = -mag if (z < 0.0 and k % 2) else mag
        # Kahan-compensated accumulation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if not math.isfinite(total):
            raise ConvergenceError(f"series overflowed for z={z}, alpha={alpha}, beta={beta}")
        if abs(term) < _REL_STOP * abs(total):
            small += 1
            if small >= _STOP_RUN:
                return total
        else:
            small = 0
        if z == 0.0:
            return total
    raise ConvergenceError(
        f"Mittag-Leffler series did not converge in {MAX_TERMS} terms "
        f"(z={z}, alpha={alpha}, beta={beta})"
    )


def _series_mp(z: float, alpha: float, beta: float, digits: int) -> float:
    with mpmath.workdps(digits):
        zz = mpmath.mpf(z)
        a = mpmath.mpf(alpha)
        b = mpmath.mpf(beta)
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        small = 0
        for k in range(MAX_TERMS):
            term = power * mpmath.rgamma(a * k + b)
            total += term
            if abs(term) < mpmath.mpf(10) ** (-digits) * max(abs(total), mpmath.mpf(1e-300)):
                small += 1
                if small >= _STOP_RUN:
                    return float(total)
            else:
                small = 0
            power *= zz
        raise ConvergenceError(
            f"Mittag-Leffler series did not converge in {MAX_TERMS} terms "
            f"(z={z}, alpha={alpha}, beta={beta})"
        )


def mittag_leffler(z: float, alpha: float, beta: float = 1.0) -> float:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real |z| <= 50.

    Accurate to about 1e-12 in absolute terms when |E| <= 1 and in relative
    terms above that.
    """
    q = MLFQuery(float(z), float(alpha), float(beta))
    q.validate()
    if q.z >= 0.0:
        return _series_float(q.z, q.alpha, q.beta)
    peak = _peak_log_term(q.z, q.alpha, q.beta) / math.log(10.0)
    if peak < 2.0:
        return _series_float(q.z, q.alpha, q.beta)
    # alternating with large intermediate terms: carry enough digits to absorb them
    return _series_mp(q.z, q.alpha, q.beta, digits=int(math.ceil(peak)) + 40)


def exact_solution_example2(t: float, params: ABCParams) -> float:
    """Closed-form solution of D^alpha y = t - y, y(0) = 0 on t in [0, 1]."""
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    if t == 0.0:
        return 0.0
    a = params.alpha
    denom = params.ab_of_alpha + 1.0 - a
    arg = -(a / denom) * t**a
    return (
        (1.0 - a) * t * mittag_leffler(arg, a, 2.0)
        + a * t ** (a + 1.0) * mittag_leffler(arg, a, a + 2.0)
    ) / denom

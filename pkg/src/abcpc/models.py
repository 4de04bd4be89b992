"""Test problems with closed-form solutions and the fractional SI epidemic model."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np
from scipy import optimize

from .errors import ValidationError
from .params import ABCParams
from .solver import ProblemSpec
from .special import exact_solution_example2


def example1_problem(n: int, params: ABCParams) -> ProblemSpec:
    """D^alpha y = t**n, y(0) = 1 on [0, 2]."""
    if int(n) != n or not 0 <= n <= 10:
        raise ValidationError(f"power n must be an integer in [0, 10], got {n!r}")
    n = int(n)
    a = params.alpha
    ab = params.ab_of_alpha
    loc = (1.0 - a) / ab
    mem = a * math.gamma(n + 1) / (ab * math.gamma(a + n + 1))

    def rhs(t, y):
        return np.full_like(y, t**n)

    def exact(t):
        return np.array([1.0 + loc * t**n + mem * t ** (a + n)])

    return ProblemSpec(rhs=rhs, y0=np.array([1.0]), t_end=2.0, exact=exact,
                       name=f"example1-n{n}")


def example2_problem(params: ABCParams) -> ProblemSpec:
    """D^alpha y = t - y, y(0) = 0 on [0, 1]; solution in Mittag-Leffler functions."""

    def rhs(t, y):
        return t - y

    def exact(t):
        return np.array([exact_solution_example2(t, params)])

    return ProblemSpec(rhs=rhs, y0=np.array([0.0]), t_end=1.0, exact=exact, name="example2")


class Incidence(str, Enum):
    BILINEAR = "bilinear"
    SATURATED = "saturated"


SATURATION = 0.01


def incidence_fn(kind: Incidence | str):
    kind = Incidence(kind)
    if kind is Incidence.BILINEAR:
        return lambda v: v
    return lambda v: v / (1.0 + SATURATION * v)


def incidence_slope(kind: Incidence | str, v):
    """phi'(v), analytic."""
    if Incidence(kind) is Incidence.BILINEAR:
        return np.ones_like(np.asarray(v, dtype=float))
    return 1.0 / (1.0 + SATURATION * np.asarray(v, dtype=float)) ** 2


@dataclass(frozen=True)
class EpidemicParams:
    lambda_birth: float
    gamma_transmission: float
    mu: float
    sigma_tilde: float
    incidence: Incidence = Incidence.BILINEAR
    sigma: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("lambda_birth", "gamma_transmission", "mu"):
            val = getattr(self, name)
            if not (val > 0.0 and math.isfinite(val)):
                raise ValidationError(f"{name} must be positive, got {val!r}")
        if not (self.sigma_tilde >= 0.0 and math.isfinite(self.sigma_tilde)):
            raise ValidationError(f"sigma_tilde must be >= 0, got {self.sigma_tilde!r}")
        object.__setattr__(self, "incidence", Incidence(self.incidence))
        object.__setattr__(self, "sigma", self.sigma_tilde + self.mu)

    @property
    def phi(self):
        return incidence_fn(self.incidence)

    @property
    def capacity(self) -> float:
        """Lambda / mu, the bound on u + v in the feasible region."""
        return self.lambda_birth / self.mu

    def with_incidence(self, kind: Incidence | str) -> "EpidemicParams":
        return EpidemicParams(self.lambda_birth, self.gamma_transmission, self.mu,
                              self.sigma_tilde, Incidence(kind))

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("sigma")
        d["incidence"] = self.incidence.value
        return d


PRESETS: dict[str, EpidemicParams] = {
    "set1": EpidemicParams(0.3, 0.1, 0.44, 0.38),
    "set2": EpidemicParams(0.03, 0.4, 0.0365, 0.0135),
    "set3": EpidemicParams(0.3, 0.1, 0.32, 0.5),
    "set4": EpidemicParams(0.03, 0.4, 0.032, 0.018),
}

# initial susceptibles used in the published runs; v0 = Lambda/mu - u0
PRESET_U0: dict[str, tuple[float, ...]] = {
    "set1": (0.52,),
    "set2": (0.6,),
    "set3": (0.8, 0.7, 0.6, 0.25),
    "set4": (0.8, 0.7, 0.6, 0.25),
}


def preset(name: str, incidence: Incidence | str = Incidence.BILINEAR) -> EpidemicParams:
    try:
        base = PRESETS[name]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return base.with_incidence(incidence)


def si_rhs(ep: EpidemicParams):
    lam, g, mu, sig = ep.lambda_birth, ep.gamma_transmission, ep.mu, ep.sigma
    phi = ep.phi

    def rhs(t, y):
        u, v = y
        force = g * u * phi(v)
        return np.array([lam - force - mu * u, force - sig * v])

    return rhs


def in_feasible_region(ep: EpidemicParams, u: float, v: float, slack: float = 0.0) -> bool:
    return u >= -slack and v >= -slack and u + v <= ep.capacity + slack


def si_problem(ep: EpidemicParams, y0, params: ABCParams | None = None,
               t_end: float = 200.0) -> ProblemSpec:
    """SI system with state (u, v). ``params`` is accepted for signature parity only."""
    u0, v0 = (float(x) for x in y0)
    if not (u0 > 0.0 and v0 > 0.0):
        raise ValidationError(f"initial data must be strictly positive, got {(u0, v0)}")
    # the published runs start on u + v = Lambda/mu; allow that edge up to rounding
    if u0 + v0 > ep.capacity * (1.0 + 1e-12):
        raise ValidationError(
            f"initial data {(u0, v0)} outside the feasible region u + v <= {ep.capacity}"
        )
    return ProblemSpec(rhs=si_rhs(ep), y0=np.array([u0, v0]), t_end=t_end, name="si")


@dataclass(frozen=True)
class EquilibriumReport:
    r0: float
    disease_free: tuple[float, float]
    endemic: tuple[float, float] | None
    feasible_region_bound: float

    def to_dict(self) -> dict:
        return {
            "r0": self.r0,
            "disease_free": list(self.disease_free),
            "endemic": None if self.endemic is None else list(self.endemic),
            "feasible_region_bound": self.feasible_region_bound,
        }


def reproduction_number(ep: EpidemicParams) -> float:
    slope0 = float(incidence_slope(ep.incidence, 0.0))
    return ep.lambda_birth * ep.gamma_transmission * slope0 / (ep.mu * ep.sigma)


def stationarity_residuals(ep: EpidemicParams, u: float, v: float) -> tuple[float, float]:
    force = ep.gamma_transmission * u * ep.phi(v)
    return ep.lambda_birth - force - ep.mu * u, force - ep.sigma * v


def equilibria(ep: EpidemicParams) -> EquilibriumReport:
    r0 = reproduction_number(ep)
    u0 = ep.capacity
    endemic = None
    if r0 > 1.0:
        if ep.incidence is Incidence.BILINEAR:
            us = ep.sigma / ep.gamma_transmission
            vs = (ep.lambda_birth - ep.mu * us) / ep.sigma
        else:
            phi = ep.phi
            coef = ep.mu * ep.sigma / ep.gamma_transmission

            # eliminate u via u = sigma v / (gamma phi(v))
            def g(v):
                return ep.lambda_birth - ep.sigma * v - coef * v / phi(v)

            lo, hi = 1e-300, u0
            if not g(lo) > 0.0 > g(hi):
                raise ValidationError("endemic root not bracketed; inconsistent with R0 > 1")
            vs = optimize.bisect(g, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=2000)
            us = ep.sigma * vs / (ep.gamma_transmission * phi(vs))
        res = stationarity_residuals(ep, us, vs)
        if max(abs(r) for r in res) > 1e-12:
            raise ValidationError(f"endemic equilibrium residuals too large: {res}")
        endemic = (us, vs)
    return EquilibriumReport(r0=r0, disease_free=(u0, 0.0), endemic=endemic,
                             feasible_region_bound=u0)


def lyapunov_disease_free(ep: EpidemicParams, u, v):
    u0 = ep.capacity
    return (np.asarray(u) - u0) ** 2 / (2.0 * u0) + np.asarray(v)


def lyapunov_endemic(ep: EpidemicParams, eq: tuple[float, float], u, v):
    us, vs = eq

    def F(x):
        return x - 1.0 - np.log(x)

    return us * F(np.asarray(u) / us) + vs * F(np.asarray(v) / vs)


def zero_problem(t_end: float = 1.0, y0: float = 1.0) -> ProblemSpec:
    """f == 0; the solution stays at y0."""

    def rhs(t, y):
        return np.zeros_like(y)

    def exact(t):
        return np.array([y0])

    return ProblemSpec(rhs=rhs, y0=np.array([y0]), t_end=t_end, exact=exact, name="zero")


def problem_from_id(problem_id: str, params: ABCParams) -> ProblemSpec:
    """Build a problem with an exact solution: ``example1-n<k>``, ``example2`` or ``zero``."""
    if problem_id == "example2":
        return example2_problem(params)
    if problem_id == "zero":
        return zero_problem()
    if problem_id.startswith("example1-n"):
        try:
            n = int(problem_id[len("example1-n"):])
        except ValueError:
            raise ValidationError(f"bad problem id {problem_id!r}") from None
        return example1_problem(n, params)
    raise ValidationError(
        f"unknown problem {problem_id!r}; expected example1-n<k>, example2 or zero"
    )


_RUN_KEYS = ("lambda", "gamma", "mu", "sigma_tilde", "incidence", "alpha",
             "ab_normalization", "u0", "v0", "t_end", "n_steps")


@dataclass(frozen=True)
class EpidemicRun:
    """One SI run as stored in a JSON problem file."""

    epidemic: EpidemicParams
    params: ABCParams
    u0: float
    v0: float
    t_end: float = 200.0
    n_steps: int = 2000

    def problem(self) -> ProblemSpec:
        return si_problem(self.epidemic, (self.u0, self.v0), self.params, self.t_end)

    def to_dict(self) -> dict:
        ep = self.epidemic
        return {
            "lambda": ep.lambda_birth,
            "gamma": ep.gamma_transmission,
            "mu": ep.mu,
            "sigma_tilde": ep.sigma_tilde,
            "incidence": ep.incidence.value,
            "alpha": self.params.alpha,
            "ab_normalization": self.params.normalization.value,
            "u0": self.u0,
            "v0": self.v0,
            "t_end": self.t_end,
            "n_steps": self.n_steps,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EpidemicRun":
        missing = [k for k in _RUN_KEYS if k not in data]
        if missing:
            raise ValidationError(f"problem file missing keys: {missing}")
        extra = sorted(set(data) - set(_RUN_KEYS))
        if extra:
            raise ValidationError(f"problem file has unknown keys: {extra}")
        try:
            ep = EpidemicParams(float(data["lambda"]), float(data["gamma"]), float(data["mu"]),
                                float(data["sigma_tilde"]), Incidence(data["incidence"]))
            params = ABCParams.from_choice(float(data["alpha"]), data["ab_normalization"])
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad problem file: {exc}") from None
        n_steps = data["n_steps"]
        if not isinstance(n_steps, int) or isinstance(n_steps, bool):
            raise ValidationError(f"n_steps must be an integer, got {n_steps!r}")
        return cls(ep, params, float(data["u0"]), float(data["v0"]), float(data["t_end"]), n_steps)

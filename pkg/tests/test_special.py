import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abcpc import ABCParams
from abcpc.errors import DomainError
from abcpc.special import exact_solution_example2, gamma, mittag_leffler
from oracles import mlf_oracle


@pytest.mark.parametrize("x", [-1.0, 0.0, math.inf, math.nan])
def test_gamma_rejects_outside_domain(x):
    with pytest.raises(DomainError):
        gamma(x)


@given(st.floats(min_value=1e-3, max_value=160.0))
def test_gamma_recurrence(x):
    assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)


def test_gamma_known_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma(5.0) == 24.0


@given(st.floats(min_value=-50.0, max_value=50.0))
def test_e1_is_exp(z):
    assert mittag_leffler(z, 1.0) == pytest.approx(math.exp(z), rel=1e-11, abs=1e-300)


@given(st.floats(min_value=-50.0, max_value=50.0).filter(lambda z: abs(z) > 1e-6))
def test_e12_is_expm1_over_z(z):
    assert mittag_leffler(z, 1.0, 2.0) == pytest.approx(math.expm1(z) / z, rel=1e-11)


@given(st.floats(min_value=0.0, max_value=50.0))
def test_e2_is_cosh_sqrt(z):
    assert mittag_leffler(z, 2.0) == pytest.approx(math.cosh(math.sqrt(z)), rel=1e-11)


def test_e2_negative_is_cos():
    for z in np.linspace(-50.0, 0.0, 21):
        assert mittag_leffler(z, 2.0) == pytest.approx(math.cos(math.sqrt(-z)), abs=1e-11)


def test_half_order_against_erfc():
    # E_{1/2}(-x) = exp(x^2) erfc(x)
    x = 0.25
    assert mittag_leffler(-x, 0.5) == pytest.approx(math.exp(x * x) * math.erfc(x), rel=1e-14)


@pytest.mark.parametrize("z,alpha,beta", [(-3.7, 0.55, 2.0), (-20.0, 0.75, 2.75),
                                          (12.0, 0.6, 1.0), (40.0, 0.9, 1.5), (-49.0, 0.95, 1.0)])
def test_against_high_precision_series(z, alpha, beta):
    ref = mlf_oracle(z, alpha, beta)
    tol = 1e-12 * max(1.0, abs(ref))
    assert abs(mittag_leffler(z, alpha, beta) - ref) <= tol


def test_overflow_is_reported():
    from abcpc.errors import NumericalError
    with pytest.raises(NumericalError):
        mittag_leffler(12.0, 0.3)


def test_zero_argument():
    assert mittag_leffler(0.0, 0.7, 2.0) == pytest.approx(1.0 / math.gamma(2.0))


@pytest.mark.parametrize("args", [(51.0, 0.5, 1.0), (1.0, 0.0, 1.0), (1.0, 0.5, -1.0),
                                  (math.nan, 0.5, 1.0)])
def test_mlf_domain(args):
    with pytest.raises(DomainError):
        mittag_leffler(*args)


def test_example2_solution_satisfies_small_time_expansion():
    # with AB = 1 the local term dominates: y (2 - a) ~ (1 - a) t, corrections O(t^a)
    p = ABCParams(0.75)
    t = 1e-8
    lead = (1 - p.alpha) * t / (2 - p.alpha)
    assert exact_solution_example2(t, p) == pytest.approx(lead, rel=1e-4)
    assert exact_solution_example2(0.0, p) == 0.0
    with pytest.raises(DomainError):
        exact_solution_example2(1.5, p)

"""Exponential integral, scaled products and quadrature kernels."""

import math
from decimal import Decimal, localcontext

import numpy as np
import pytest
from scipy import integrate, special

from noma_relay.errors import (
    DomainError,
    IntegrandError,
    QuadratureAccuracyError,
    SpecialFunctionOverflow,
)
from noma_relay.special_math import (
    QuadratureControl,
    expint_ei,
    expint_ei_scaled,
    gauss_chebyshev_integrate,
    gauss_chebyshev_nodes,
    integrate_finite,
    integrate_semi_infinite,
)


# Euler-Mascheroni constant to 50 digits
GAMMA_50 = Decimal("0.57721566490153286060651209008240243104215933593992")

# 200-point log grid over |x| in [1e-8, 700]
EI_GRID = np.logspace(-8, math.log10(700.0), 200)


def ei_reference(x: float) -> float:
    """Ei(x) in 60-digit decimal arithmetic.

    Power series C + ln|x| + sum x^k / (k k!) for x >= -20; below that
    -E1(|x|) from the continued fraction e^-z / (z+1 - 1/(z+3 - 4/(z+5 - ...))),
    evaluated from the tail.
    """
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(float(x))
        if x < -20.0:
            z = -d
            tail = Decimal(0)
            for i in range(400, 0, -1):
                tail = Decimal(i * i) / (z + 2 * i + 1 - tail)
            return float(-(-z).exp() / (z + 1 - tail))

        total = Decimal(0)
        term = Decimal(1)
        k = 0
        while True:
            k += 1
            term = term * d / k
            total += term / k
            if k > abs(d) and abs(term) / k <= abs(total) * Decimal("1e-58"):
                break
        return float(GAMMA_50 + abs(d).ln() + total)


def e1_quadrature(z: float) -> float:
    """E1(z) = int_0^1 exp(-z/u)/u du."""
    value, _ = integrate.quad(
        lambda u: math.exp(-z / u) / u, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=500
    )
    return value


def test_known_values():
    assert expint_ei(1.0) == pytest.approx(1.8951178163559368, rel=1e-14)
    assert expint_ei(-1.0) == pytest.approx(-0.21938393439552029, rel=1e-14)


def test_positive_branch_matches_reference_on_grid():
    worst = max(abs(expint_ei(x) / ei_reference(x) - 1.0) for x in EI_GRID)
    assert worst <= 1e-12


def test_negative_branch_matches_reference_on_grid():
    worst = max(abs(expint_ei(-z) / ei_reference(-z) - 1.0) for z in EI_GRID)
    assert worst <= 1e-12


@pytest.mark.parametrize("z", [0.1, 0.5, 2.0, 10.0, 40.0])
def test_negative_branch_matches_quadrature(z):
    assert expint_ei(-z) == pytest.approx(-e1_quadrature(z), rel=1e-9)


def test_ei_domain_and_overflow():
    with pytest.raises(DomainError):
        expint_ei(0.0)
    with pytest.raises(DomainError):
        expint_ei(math.nan)
    with pytest.raises(SpecialFunctionOverflow):
        expint_ei(800.0)


@pytest.mark.parametrize("a, x", [(2.0, -3.0), (-1.0, 4.0), (0.5, 60.0), (0.0, -0.01)])
def test_scaled_matches_plain_product(a, x):
    assert expint_ei_scaled(a, x) == pytest.approx(
        math.exp(a) * float(special.expi(x)), rel=1e-11
    )


def test_scaled_continued_fraction_agrees_with_scipy():
    # z = 60 is past the continued-fraction switch but still representable unscaled
    assert expint_ei_scaled(0.0, -60.0) == pytest.approx(float(special.expi(-60.0)), rel=1e-11)


def test_scaled_far_out():
    z = 1000.0
    asymptotic = -(1.0 / z) * (1.0 - 1.0 / z + 2.0 / z**2 - 6.0 / z**3)
    assert expint_ei_scaled(z, -z) == pytest.approx(asymptotic, rel=1e-9)
    # e^-x Ei(x) ~ 1/x (1 + 1/x + 2/x^2) for large positive x
    x = 2000.0
    assert expint_ei_scaled(-x, x) == pytest.approx(
        (1.0 / x) * (1.0 + 1.0 / x + 2.0 / x**2 + 6.0 / x**3), rel=1e-9
    )


def test_scaled_overflow_and_domain():
    with pytest.raises(SpecialFunctionOverflow):
        expint_ei_scaled(800.0, -1.0)
    with pytest.raises(DomainError):
        expint_ei_scaled(1.0, 0.0)


def test_chebyshev_nodes():
    nodes = gauss_chebyshev_nodes(3)
    half_root3 = math.sqrt(3) / 2
    assert [s for s, _ in nodes] == pytest.approx([half_root3, 0.0, -half_root3], abs=1e-15)
    for s, w in nodes:
        assert w == pytest.approx(math.sqrt(1.0 - s * s), abs=1e-15)
    with pytest.raises(DomainError):
        gauss_chebyshev_nodes(0)


def test_chebyshev_integral_converges():
    assert gauss_chebyshev_integrate(lambda x: x * x, 0.0, 2.0, 200) == pytest.approx(
        8.0 / 3.0, rel=1e-3
    )
    assert gauss_chebyshev_integrate(math.exp, -1.0, 1.0, 400) == pytest.approx(
        math.e - 1.0 / math.e, rel=1e-4
    )


def test_integrate_finite():
    estimate = integrate_finite(math.exp, 0.0, 1.0)
    assert estimate.value == pytest.approx(math.e - 1.0, rel=1e-12)
    assert estimate.error_bound >= 0.0
    assert integrate_finite(math.exp, 1.0, 1.0).value == 0.0


def test_integrate_semi_infinite():
    assert integrate_semi_infinite(lambda x: math.exp(-x), 0.0).value == pytest.approx(
        1.0, rel=1e-8
    )
    assert integrate_semi_infinite(lambda x: 1.0 / (1.0 + x) ** 2, 1.0).value == pytest.approx(
        0.5, rel=1e-8
    )


def test_integrand_error_carries_abscissa():
    with pytest.raises(IntegrandError) as info:
        integrate_finite(lambda x: math.inf if x > 0.5 else 1.0, 0.0, 1.0)
    assert info.value.abscissa > 0.5


def test_quadrature_accuracy_error():
    ctl = QuadratureControl(max_subdivisions=1)
    with pytest.raises(QuadratureAccuracyError) as info:
        integrate_finite(lambda x: math.sin(50.0 * x), 0.0, 100.0, ctl)
    assert info.value.error_bound > 0.0

"""Special functions and quadrature kernels used by the closed forms.

The exponential integral is taken from ``scipy.special`` (a series for small
arguments and a continued fraction / asymptotic regime beyond). Products of the
form ``e^a * Ei(x)`` that appear in the ergodic-rate expressions overflow long
before the product itself does, so :func:`expint_ei_scaled` evaluates them in a
scaled form.
"""

import logging
import math
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.polynomial import chebyshev
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, special

from .errors import (
    DomainError,
    IntegrandError,
    QuadratureAccuracyError,
    SpecialFunctionOverflow,
)

logger = logging.getLogger("noma-relay.special_math")

EULER_GAMMA: float = float(np.euler_gamma)

# Largest t with exp(t) finite in double precision
_EXP_MAX = 709.782712893384

# Above this argument e^z * E1(z) comes from the continued fraction
_E1_CF_SWITCH = 50.0

Integrand = Callable[[float], float]


class SeriesControl(BaseModel):
    """Truncation of the outer series of the direct-link outage closed form."""

    model_config = ConfigDict(frozen=True)

    max_outer_terms: int = Field(default=60, ge=1)
    rel_tail_tol: float = Field(default=1e-12, gt=0.0, lt=1.0)


class QuadratureControl(BaseModel):
    """Tolerances for adaptive quadrature and the Gauss-Chebyshev order."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=1e-10, gt=0.0)
    rel_tol: float = Field(default=1e-8, gt=0.0)
    max_subdivisions: int = Field(default=2000, ge=1)
    gc_points: int = Field(default=50, ge=1)


class QuadratureEstimate(NamedTuple):
    value: float
    error_bound: float


def expint_ei(x: float) -> float:
    """Exponential integral Ei(x), principal value for x > 0.

    Raises:
        DomainError: x is zero or not finite
        SpecialFunctionOverflow: Ei(x) exceeds the double range
    """
    if x == 0.0 or not math.isfinite(x):
        raise DomainError(f"Ei is undefined at x = {x!r}")

    value = float(special.expi(x))
    if math.isinf(value):
        raise SpecialFunctionOverflow(
            f"Ei({x!r}) is not representable; use expint_ei_scaled(a, x) instead"
        )
    return value


def _scaled_exp(t: float) -> float:
    if t > _EXP_MAX:
        raise SpecialFunctionOverflow(f"e^{t!r} is not representable")
    return math.exp(t)


def _exp_e1(z: float) -> float:
    """e^z * E1(z) for z > 0."""
    if z <= _E1_CF_SWITCH:
        return math.exp(z) * float(special.exp1(z))

    # Modified Lentz evaluation of 1/(z+1- 1/(z+3- 4/(z+5- ...)))
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 200):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h


def _exp_neg_ei(x: float) -> float:
    """e^-x * Ei(x) for x > 0."""
    if x <= 700.0:
        return math.exp(-x) * float(special.expi(x))

    # Asymptotic series sum k!/x^(k+1), cut at its smallest term
    term = 1.0 / x
    total = term
    k = 1
    while True:
        next_term = term * k / x
        if next_term >= term or next_term < 1e-17 * total:
            break
        total += next_term
        term = next_term
        k += 1
    return total


def expint_ei_scaled(a: float, x: float) -> float:
    """Return e^a * Ei(x) without forming e^a or Ei(x) on their own.

    Valid for any real ``a`` and ``x != 0``; the ergodic-rate formulas need
    both negative ``x`` with large positive ``a`` and, when the loop
    interference is weaker than the near-user signal, positive ``x`` with
    negative ``a``.
    """
    if x == 0.0 or not (math.isfinite(x) and math.isfinite(a)):
        raise DomainError(f"e^a Ei(x) is undefined at a = {a!r}, x = {x!r}")

    if x < 0.0:
        z = -x
        return -_scaled_exp(a - z) * _exp_e1(z)
    return _scaled_exp(a + x) * _exp_neg_ei(x)


def gauss_chebyshev_nodes(n: int) -> List[Tuple[float, float]]:
    """Chebyshev-Gauss nodes s_k = cos((2k-1)pi/(2n)) with their sqrt(1 - s_k^2) factors."""
    if n < 1:
        raise DomainError(f"Gauss-Chebyshev order must be >= 1, got {n}")

    nodes, _ = chebyshev.chebgauss(n)
    # sin of the node angle avoids the cancellation in 1 - s^2 near +-1
    factors = np.sin(np.pi * np.arange(1, 2 * n, 2) / (2.0 * n))
    return [(float(s), float(w)) for s, w in zip(nodes, factors)]


def gauss_chebyshev_integrate(f: Integrand, a: float, b: float, n: int) -> float:
    """Approximate the integral of f over [a, b] with n Chebyshev-Gauss nodes."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    total = math.fsum(float(f(half * s + mid)) * w for s, w in gauss_chebyshev_nodes(n))
    return half * math.pi / n * total


def _checked(f: Integrand) -> Integrand:
    def sample(x: float) -> float:
        value = float(f(x))
        if not math.isfinite(value):
            raise IntegrandError(x, value)
        return value

    return sample


def _adaptive(f: Integrand, a: float, b: float, ctl: QuadratureControl) -> QuadratureEstimate:
    result = integrate.quad(
        f,
        a,
        b,
        epsabs=ctl.abs_tol,
        epsrel=ctl.rel_tol,
        limit=ctl.max_subdivisions,
        full_output=1,
    )
    value, error = float(result[0]), float(result[1])

    # A fourth element is the QUADPACK warning message
    if len(result) > 3:
        target = max(ctl.abs_tol, ctl.rel_tol * abs(value))
        if error > target:
            raise QuadratureAccuracyError(value, error, str(result[3]).strip())
        logger.debug(f"quad warning tolerated, error {error:.3e} <= {target:.3e}")

    return QuadratureEstimate(value, error)


def integrate_finite(
    f: Integrand, a: float, b: float, ctl: Optional[QuadratureControl] = None
) -> QuadratureEstimate:
    """Adaptive Gauss-Kronrod integral of f over [a, b].

    Endpoints are never sampled, so integrands that are singular only at the
    ends of the interval are fine.

    Raises:
        IntegrandError: f returned inf or nan
        QuadratureAccuracyError: tolerance not reached within max_subdivisions
    """
    ctl = ctl or QuadratureControl()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integrate_finite needs finite limits; use integrate_semi_infinite")
    if a == b:
        return QuadratureEstimate(0.0, 0.0)
    return _adaptive(_checked(f), a, b, ctl)


def integrate_semi_infinite(
    f: Integrand, a: float, ctl: Optional[QuadratureControl] = None
) -> QuadratureEstimate:
    """Integral of f over [a, inf) through x = a + t/(1-t), t in (0, 1)."""
    ctl = ctl or QuadratureControl()
    if not math.isfinite(a):
        raise DomainError(f"lower limit must be finite, got {a!r}")

    checked = _checked(f)

    def mapped(t: float) -> float:
        s = 1.0 - t
        value = checked(a + t / s)
        if value == 0.0:
            return 0.0
        return value / (s * s)

    return _adaptive(mapped, 0.0, 1.0, ctl)

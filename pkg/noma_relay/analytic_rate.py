"""Ergodic rates of D1 and D2, their high-SNR forms and the high-SNR slope.

All rates are in bits per channel use. Half-duplex rates carry the 1/2 of the
two-slot schedule. In full-duplex mode the quantity xi = Omega_LI - a1 Omega1
appears in denominators; both xi = 0 and a2 Omega1 = xi are removable
singularities, evaluated by averaging two symmetric perturbations of Omega_LI.
"""

import logging
import math
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .errors import DomainError
from .montecarlo import McControl, RateKind, estimate_ergodic
from .special_math import (
    EULER_GAMMA,
    QuadratureControl,
    expint_ei_scaled,
    integrate_finite,
)
from .system_model import Duplex, SystemConfig

logger = logging.getLogger("noma-relay.analytic_rate")

LN2 = math.log(2.0)

# Relative distance to a singular Omega_LI below which the limit form is used
SINGULAR_GAP = 1e-7
SINGULAR_STEP = 1e-6


class RateMethod(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    ASYMPTOTIC = "asymptotic"
    MONTE_CARLO = "monte_carlo"


class Scenario(str, Enum):
    NODIR = "nodir"
    DIR = "dir"


class RateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    rate: float
    method: RateMethod
    error_bound: float = Field(default=0.0, ge=0.0)


def _log2_prefactor(cfg: SystemConfig) -> float:
    return 1.0 / LN2 if cfg.duplex is Duplex.FD else 0.5 / LN2


def _xi(cfg: SystemConfig) -> float:
    return cfg.omega_li - cfg.a1 * cfg.omega1


def _regularized(
    evaluate: Callable[[SystemConfig], float],
    cfg: SystemConfig,
    singular_li: Sequence[float],
) -> float:
    """Evaluate, or average across a removable singularity in Omega_LI."""
    for singular in singular_li:
        if abs(cfg.omega_li - singular) < SINGULAR_GAP * singular:
            below = evaluate(cfg.replace(omega_li=singular * (1.0 - SINGULAR_STEP)))
            above = evaluate(cfg.replace(omega_li=singular * (1.0 + SINGULAR_STEP)))
            return 0.5 * (below + above)
    return evaluate(cfg)


def _exp_ei_neg(z: float) -> float:
    """e^z Ei(-z) for z > 0."""
    return expint_ei_scaled(z, -z)


def rate_d1(cfg: SystemConfig, rho: float) -> RateResult:
    """Ergodic rate of D1 after SIC, exact."""
    _check_rho(rho)
    z1 = 1.0 / (cfg.a1 * rho * cfg.omega1)

    if cfg.duplex is Duplex.HD or cfg.omega_li == 0.0:
        rate = -_log2_prefactor(cfg) * _exp_ei_neg(z1)
        return RateResult(rate=max(rate, 0.0), method=RateMethod.CLOSED_FORM)

    def fd(c: SystemConfig) -> float:
        z2 = 1.0 / (rho * c.omega_li)
        return c.a1 * c.omega1 / (LN2 * _xi(c)) * (_exp_ei_neg(z1) - _exp_ei_neg(z2))

    rate = _regularized(fd, cfg, [cfg.a1 * cfg.omega1])
    return RateResult(rate=max(rate, 0.0), method=RateMethod.CLOSED_FORM)


def rate_d1_asym(cfg: SystemConfig, rho: float) -> RateResult:
    """High-SNR form of the D1 rate (e^z Ei(-z) ~ (1 + z)(ln z + C))."""
    _check_rho(rho)
    z1 = 1.0 / (cfg.a1 * rho * cfg.omega1)

    def expansion(z: float) -> float:
        return (1.0 + z) * (math.log(z) + EULER_GAMMA)

    if cfg.duplex is Duplex.HD or cfg.omega_li == 0.0:
        return RateResult(
            rate=-_log2_prefactor(cfg) * expansion(z1), method=RateMethod.ASYMPTOTIC
        )

    def fd(c: SystemConfig) -> float:
        z2 = 1.0 / (rho * c.omega_li)
        return c.a1 * c.omega1 / (LN2 * _xi(c)) * (expansion(z1) - expansion(z2))

    return RateResult(
        rate=_regularized(fd, cfg, [cfg.a1 * cfg.omega1]), method=RateMethod.ASYMPTOTIC
    )


def rate_d2_nodir(
    cfg: SystemConfig, rho: float, ctl: Optional[QuadratureControl] = None
) -> RateResult:
    """Ergodic rate of D2 through the relay, by quadrature of its CCDF.

    The end-to-end SINR is min(gamma_{D2->D1}, gamma_{2,D2}); the two are
    independent, so the CCDF is the product of the two link CCDFs and vanishes
    at x = a2/a1.
    """
    _check_rho(rho)
    upper = cfg.a2 / cfg.a1

    def integrand(x: float) -> float:
        margin = cfg.a2 - cfg.a1 * x
        if margin <= 0.0:
            return 0.0
        t = x / (rho * margin)
        li = cfg.varpi * rho * t * cfg.omega_li
        decay = math.exp(-t / cfg.omega1 - x / (rho * cfg.omega2))
        return cfg.omega1 / (cfg.omega1 + li) * decay / (1.0 + x)

    estimate = integrate_finite(integrand, 0.0, upper, ctl)
    prefactor = _log2_prefactor(cfg)
    return RateResult(
        rate=max(prefactor * estimate.value, 0.0),
        method=RateMethod.QUADRATURE,
        error_bound=prefactor * estimate.error_bound,
    )


def _nodir_ceiling_fd(c: SystemConfig, rho: float) -> float:
    s = 1.0 / (rho * c.omega2)
    xi = _xi(c)
    denom = c.a2 * c.omega1 - xi

    first = (expint_ei_scaled(s, -s / c.a1) - expint_ei_scaled(s, -s)) * c.omega1 / denom
    if c.omega_li == 0.0:
        return first / LN2

    sq = c.a2 * c.omega1 / (rho * c.omega2 * xi)
    far = -(c.a2 * xi + c.a1 * c.a2 * c.omega1) / (rho * c.a1 * xi * c.omega2)
    weight = (c.a1 * c.a2 * c.omega1**2 + c.a2 * c.omega1 * xi) / denom
    second = (expint_ei_scaled(sq, far) - expint_ei_scaled(sq, -sq)) / xi * weight
    return (first - second) / LN2


def rate_d2_nodir_asym(cfg: SystemConfig, rho: float) -> RateResult:
    """High-SNR rate of D2 without the direct link."""
    _check_rho(rho)
    if cfg.duplex is Duplex.HD:
        s = 1.0 / (rho * cfg.omega2)
        rate = (expint_ei_scaled(s, -s / cfg.a1) - expint_ei_scaled(s, -s)) / (2.0 * LN2)
    else:
        rate = _regularized(
            lambda c: _nodir_ceiling_fd(c, rho), cfg, [cfg.a1 * cfg.omega1, cfg.omega1]
        )
    return RateResult(rate=rate, method=RateMethod.ASYMPTOTIC)


def _dir_ceiling_fd(c: SystemConfig) -> float:
    xi = _xi(c)
    denom = c.a2 * c.omega1 - xi
    first = math.log(1.0 + c.a2 / c.a1) * c.omega1 / denom
    if c.omega_li == 0.0:
        return first / LN2
    weight = (c.a2 * c.omega1 * xi + c.a1 * c.a2 * c.omega1**2) / denom
    second = math.log1p(xi / (c.a1 * c.omega1)) / xi * weight
    return (first - second) / LN2


def rate_d2_dir_asym(cfg: SystemConfig, rho: float) -> RateResult:
    """High-SNR rate of D2 with the direct link; independent of rho in both modes."""
    _check_rho(rho)
    if cfg.duplex is Duplex.HD:
        rate = 0.5 * math.log2(1.0 + cfg.a2 / cfg.a1)
    else:
        rate = _regularized(_dir_ceiling_fd, cfg, [cfg.a1 * cfg.omega1, cfg.omega1])
    return RateResult(rate=rate, method=RateMethod.ASYMPTOTIC)


def _rate_d2_dir_hd(cfg: SystemConfig, rho: float, ctl: Optional[QuadratureControl]) -> RateResult:
    """Half-duplex D2 rate with MRC, as a nested integral over the CCDF.

    P(min(gamma_{D2->D1}, gamma_MRC) > y) = exp(-t/Omega1) * [exp(-t/Omega0) + I(y)/Omega0]
    with t = y/(rho(a2 - a1 y)) and I(y) the probability mass where the direct
    link alone falls short of y but MRC reaches it.
    """
    upper = cfg.a2 / cfg.a1

    def shortfall(y: float, t: float) -> float:
        def inner(x: float) -> float:
            residual = y / rho - x * cfg.a2 / (x * cfg.a1 * rho + 1.0)
            return math.exp(-x / cfg.omega0 - residual / cfg.omega2)

        return integrate_finite(inner, 0.0, t, ctl).value

    def outer(y: float) -> float:
        margin = cfg.a2 - cfg.a1 * y
        if margin <= 0.0:
            return 0.0
        t = y / (rho * margin)
        relay = math.exp(-t / cfg.omega1)
        if relay == 0.0:
            return 0.0
        mrc = math.exp(-t / cfg.omega0) + shortfall(y, t) / cfg.omega0
        return relay * mrc / (1.0 + y)

    estimate = integrate_finite(outer, 0.0, upper, ctl)
    prefactor = 0.5 / LN2
    return RateResult(
        rate=max(prefactor * estimate.value, 0.0),
        method=RateMethod.QUADRATURE,
        error_bound=prefactor * estimate.error_bound,
    )


def rate_d2_dir(
    cfg: SystemConfig,
    rho: float,
    ctl: Optional[QuadratureControl] = None,
    mc: Optional[McControl] = None,
) -> RateResult:
    """Ergodic rate of D2 with the direct link.

    HD is a nested quadrature. In FD mode the MRC sum sits inside the min() with
    a loop-interfered first hop, and the rate is estimated by Monte Carlo.
    """
    _check_rho(rho)
    if cfg.duplex is Duplex.HD:
        return _rate_d2_dir_hd(cfg, rho, ctl)

    estimate = estimate_ergodic(cfg, rho, RateKind.D2_DIR_UB, mc or McControl())
    return RateResult(
        rate=estimate.mean, method=RateMethod.MONTE_CARLO, error_bound=estimate.std_error
    )


def sum_rate_asym(cfg: SystemConfig, rho: float, scenario: Scenario) -> RateResult:
    """High-SNR sum rate: D1 form plus the D2 form of the scenario."""
    d1 = rate_d1_asym(cfg, rho).rate
    if Scenario(scenario) is Scenario.NODIR:
        d2 = rate_d2_nodir_asym(cfg, rho).rate
    else:
        d2 = rate_d2_dir_asym(cfg, rho).rate
    return RateResult(rate=d1 + d2, method=RateMethod.ASYMPTOTIC)


def snr_slope_estimate(curve: Iterable[Tuple[float, float]]) -> float:
    """Rate gained per doubling of the SNR, over the last two points."""
    points = list(curve)
    if len(points) < 2:
        raise DomainError("slope needs at least two (rho, rate) points")
    (rho1, r1), (rho2, r2) = points[-2], points[-1]
    if not 0.0 < rho1 < rho2:
        raise DomainError("SNR points must be positive and increasing")
    return (r2 - r1) / (math.log2(rho2) - math.log2(rho1))


def _check_rho(rho: float) -> None:
    if not rho > 0.0:
        raise DomainError(f"transmit SNR must be positive, got {rho!r}")


"""System throughput in delay-limited and delay-tolerant modes, and energy efficiency.

The transmit SNR rho that drives the outage and rate formulas and the wattages
Ps, Pr of the power budget are independent inputs: the energy efficiency divides
a throughput computed at rho by the energy of the budget, whatever rho is.
"""

import logging
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, PositiveFloat

from .analytic_outage import outage_d1, outage_d2_dir, outage_d2_nodir
from .analytic_rate import (
    RateMethod,
    RateResult,
    Scenario,
    rate_d1,
    rate_d2_dir,
    rate_d2_nodir,
    sum_rate_asym,
)
from .montecarlo import McControl, OutageKind, estimate_outage
from .special_math import QuadratureControl
from .system_model import Duplex, SystemConfig

logger = logging.getLogger("noma-relay.throughput_ee")


class PowerBudget(BaseModel):
    """BS power ps and relay power pr in watts, transmission time t in seconds."""

    model_config = ConfigDict(frozen=True)

    ps: PositiveFloat = 10.0
    pr: PositiveFloat = 10.0
    t: PositiveFloat = 1.0

    @property
    def energy(self) -> float:
        return self.t * (self.ps + self.pr)


class ThroughputMode(str, Enum):
    LIMITED = "limited"
    TOLERANT = "tolerant"
    TOLERANT_ASYMPTOTIC = "tolerant_asymptotic"


def _scenario(cfg: SystemConfig) -> Scenario:
    return Scenario.DIR if cfg.direct_link else Scenario.NODIR


def throughput_delay_limited(
    cfg: SystemConfig, rho: float, mc: Optional[McControl] = None
) -> RateResult:
    """(1 - P_D1) R1 + (1 - P_D2) R2 with the outage of the configured scenario.

    The half-duplex far user with a direct link has no closed form; its outage
    is estimated by Monte Carlo and the result carries R2 times its standard error.
    """
    p1 = outage_d1(cfg, rho).probability
    error_bound = 0.0
    method = RateMethod.CLOSED_FORM

    if not cfg.direct_link:
        p2 = outage_d2_nodir(cfg, rho).probability
    elif cfg.duplex is Duplex.FD:
        p2 = outage_d2_dir(cfg, rho).probability
    else:
        estimate = estimate_outage(cfg, rho, OutageKind.D2_DIR_HD, mc)
        p2 = estimate.mean
        error_bound = cfg.r2 * estimate.std_error
        method = RateMethod.MONTE_CARLO

    throughput = (1.0 - p1) * cfg.r1 + (1.0 - p2) * cfg.r2
    return RateResult(rate=throughput, method=method, error_bound=error_bound)


def throughput_delay_tolerant(
    cfg: SystemConfig,
    rho: float,
    ctl: Optional[QuadratureControl] = None,
    mc: Optional[McControl] = None,
) -> RateResult:
    """Ergodic sum rate R_D1 + R_D2 of the configured scenario."""
    d1 = rate_d1(cfg, rho)
    if cfg.direct_link:
        d2 = rate_d2_dir(cfg, rho, ctl, mc)
    else:
        d2 = rate_d2_nodir(cfg, rho, ctl)
    return RateResult(
        rate=d1.rate + d2.rate, method=d2.method, error_bound=d1.error_bound + d2.error_bound
    )


def throughput(
    cfg: SystemConfig,
    rho: float,
    mode: ThroughputMode,
    ctl: Optional[QuadratureControl] = None,
    mc: Optional[McControl] = None,
) -> RateResult:
    mode = ThroughputMode(mode)
    if mode is ThroughputMode.LIMITED:
        return throughput_delay_limited(cfg, rho, mc)
    if mode is ThroughputMode.TOLERANT:
        return throughput_delay_tolerant(cfg, rho, ctl, mc)
    return sum_rate_asym(cfg, rho, _scenario(cfg))


def efficiency_factor(cfg: SystemConfig, budget: PowerBudget) -> float:
    """Joules-to-bits scale turning a throughput into an energy efficiency."""
    factor = 1.0 if cfg.duplex is Duplex.FD else 2.0
    return factor / budget.energy


def energy_efficiency(
    cfg: SystemConfig,
    rho: float,
    budget: Optional[PowerBudget] = None,
    mode: ThroughputMode = ThroughputMode.LIMITED,
    ctl: Optional[QuadratureControl] = None,
    mc: Optional[McControl] = None,
) -> float:
    """Bits per joule: R / (T (Ps + Pr)) in FD mode, 2 R / (T (Ps + Pr)) in HD mode.

    The half-duplex factor 2 is applied as defined, on top of the 1/2 already
    inside the half-duplex throughput.
    """
    delivered = throughput(cfg, rho, mode, ctl, mc).rate
    return efficiency_factor(cfg, budget or PowerBudget()) * delivered

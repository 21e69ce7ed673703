"""Two-user cooperative NOMA network with a full/half-duplex decode-and-forward relay.

BS serves a near user D1 and a far user D2 with power split a1 < a2. D1 runs SIC
on x2, decodes its own x1 and forwards x2 to D2. In full-duplex (FD) mode D1
receives and relays at once and suffers residual loop interference (LI); with
the direct link on, the relayed and direct copies interfere at D2 with residual
level kappa (RI), or are combined by MRC in the interference-free upper bound.

The SINR maps accept scalars or numpy arrays so the same code serves the
analytic examples and the vectorized Monte Carlo draws.
"""

import math
from enum import Enum
from typing import Any, NamedTuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat, model_validator

from .errors import DomainError

Gain = Union[float, np.ndarray]


class Duplex(str, Enum):
    FD = "FD"
    HD = "HD"


class ThresholdConvention(str, Enum):
    """Target-SNR rule for half-duplex links.

    STANDARD is 2^(2R) - 1 (rate R over two slots). LITERAL reads the
    half-duplex target as 2^(2R-1), kept selectable to reproduce figures drawn
    with that definition.
    """

    STANDARD = "standard"
    LITERAL = "literal"


def db_to_linear(value_db: float) -> float:
    return float(10.0 ** (value_db / 10.0))


class SystemConfig(BaseModel):
    """Power split, channel statistics, interference levels and targets."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a1: float = Field(gt=0.0, lt=1.0)
    a2: float = Field(gt=0.0, lt=1.0)
    omega0: PositiveFloat = 1.0
    omega1: PositiveFloat
    omega2: PositiveFloat
    omega_li: NonNegativeFloat
    kappa: NonNegativeFloat = 0.0
    r1: PositiveFloat
    r2: PositiveFloat
    duplex: Duplex = Duplex.FD
    direct_link: bool = False
    hd_threshold_convention: ThresholdConvention = ThresholdConvention.STANDARD

    @model_validator(mode="after")
    def _check_power_split(self) -> "SystemConfig":
        if abs(self.a1 + self.a2 - 1.0) > 1e-9:
            raise ValueError(f"a1 + a2 must equal 1, got {self.a1 + self.a2!r}")
        if not self.a1 < self.a2:
            raise ValueError("the far user needs the larger share: a1 < a2")
        return self

    @classmethod
    def from_geometry(
        cls,
        distance: float = 0.3,
        pathloss_exponent: float = 2.0,
        omega_li_db: float = -15.0,
        **fields: Any,
    ) -> "SystemConfig":
        """Build a config from the normalized BS-D1 distance.

        BS-D2 is normalized to 1, so Omega0 = 1, Omega1 = d^-alpha and
        Omega2 = (1 - d)^-alpha. Unspecified power split defaults to 0.2/0.8.
        """
        if not 0.0 < distance < 1.0:
            raise DomainError(f"distance must lie in (0, 1), got {distance!r}")
        fields.setdefault("a1", 0.2)
        fields.setdefault("a2", 0.8)
        return cls(
            omega0=1.0,
            omega1=distance ** (-pathloss_exponent),
            omega2=(1.0 - distance) ** (-pathloss_exponent),
            omega_li=db_to_linear(omega_li_db),
            **fields,
        )

    @property
    def varpi(self) -> float:
        """Loop-interference switch: 1 in FD mode, 0 in HD mode."""
        return 1.0 if self.duplex is Duplex.FD else 0.0

    def replace(self, **updates: Any) -> "SystemConfig":
        """Validated copy with some fields changed."""
        return SystemConfig.model_validate({**self.model_dump(), **updates})


class Thresholds(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_th1: float
    gamma_th2: float
    tau: float
    beta: float
    theta: float
    feasible: bool


class ChannelDraw(NamedTuple):
    """Channel power gains |h0|^2, |h1|^2, |h2|^2 and |h_LI|^2."""

    g0: Gain
    g1: Gain
    g2: Gain
    gli: Gain


def target_sinr(rate: float, duplex: Duplex, convention: ThresholdConvention) -> float:
    if duplex is Duplex.FD:
        return 2.0**rate - 1.0
    if convention is ThresholdConvention.LITERAL:
        return 2.0 ** (2.0 * rate - 1.0)
    return 2.0 ** (2.0 * rate) - 1.0


def derive_thresholds(cfg: SystemConfig, rho: float) -> Thresholds:
    """Target SINRs and the tau, beta, theta of the active duplex mode.

    An infeasible split (a2 <= a1 * gamma_th2) yields ``feasible=False`` with
    infinite tau and theta; every outage downstream is then 1.
    """
    if not rho > 0.0:
        raise DomainError(f"transmit SNR must be positive, got {rho!r}")

    gamma_th1 = target_sinr(cfg.r1, cfg.duplex, cfg.hd_threshold_convention)
    gamma_th2 = target_sinr(cfg.r2, cfg.duplex, cfg.hd_threshold_convention)

    margin = cfg.a2 - cfg.a1 * gamma_th2
    feasible = margin > 0.0
    tau = gamma_th2 / (rho * margin) if feasible else math.inf
    beta = gamma_th1 / (cfg.a1 * rho)

    return Thresholds(
        gamma_th1=gamma_th1,
        gamma_th2=gamma_th2,
        tau=tau,
        beta=beta,
        theta=max(tau, beta),
        feasible=feasible,
    )


def sinr_d1_detect_x2(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    """SINR at D1 for the far user's message x2."""
    return draw.g1 * cfg.a2 * rho / (draw.g1 * cfg.a1 * rho + cfg.varpi * draw.gli * rho + 1.0)


def sinr_d1_own(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    """SINR at D1 for x1 after x2 is cancelled."""
    return draw.g1 * cfg.a1 * rho / (cfg.varpi * draw.gli * rho + 1.0)


def sinr_d2_direct_ri(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    """Direct BS-D2 SINR with the relayed signal as residual interference."""
    return draw.g0 * cfg.a2 * rho / (draw.g0 * cfg.a1 * rho + cfg.kappa * draw.g2 * rho + 1.0)


def sinr_d2_relay_ri(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    """Relayed D1-D2 SINR with the direct signal as residual interference."""
    return draw.g2 * rho / (cfg.kappa * draw.g0 * rho + 1.0)


def sinr_d2_direct_ub(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    return draw.g0 * cfg.a2 * rho / (draw.g0 * cfg.a1 * rho + 1.0)


def sinr_d2_relay_ub(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    return draw.g2 * rho


def sinr_d2_mrc(draw: ChannelDraw, cfg: SystemConfig, rho: float) -> Gain:
    """MRC of the relayed and direct copies at D2."""
    return sinr_d2_relay_ub(draw, cfg, rho) + sinr_d2_direct_ub(draw, cfg, rho)

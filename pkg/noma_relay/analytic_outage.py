"""Closed-form and asymptotic outage probabilities of D1 and D2.

With Rayleigh fading every gain is exponential, so the outage of D1 and of D2
without the direct link have exact closed forms. With the direct link, D2's
full-duplex outage splits into J11 * J12 + J13, where J12 is the probability
that D1 decodes x2, J13 the probability that neither D1 nor the direct link
delivers x2, and J11 the MRC outage

    J11 = 1 - exp(-tau/Omega0) - Theta1,
    Theta1 = int_0^tau exp(-y/Omega0)/Omega0 * exp(-(gamma2/rho - y a2/(y a1 rho + 1))/Omega2) dy.

Theta1 is evaluated either by the convergent double series (closed form with
Ei terms) or by adaptive quadrature; each is a check on the other.
"""

import logging
import math
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .errors import DomainError, FormulaInvariantError, SeriesConvergenceError
from .special_math import (
    QuadratureControl,
    SeriesControl,
    expint_ei,
    gauss_chebyshev_nodes,
    integrate_finite,
)
from .system_model import Duplex, SystemConfig, Thresholds, derive_thresholds

logger = logging.getLogger("noma-relay.analytic_outage")

# Allowed excursion outside [0, 1] before a value counts as a formula bug
ROUND_OFF = 1e-9

# Outer terms may not exceed the series value by more than this factor
_MAX_CANCELLATION = 1e6

# e^-u is negligible past this point of the scaled direct-link integral
_DIRECT_DECAY = 60.0


class OutageMethod(str, Enum):
    EXACT_CLOSED_FORM = "exact_closed_form"
    SERIES_TRUNCATED = "series_truncated"
    GAUSS_CHEBYSHEV = "gauss_chebyshev"
    QUADRATURE = "quadrature"
    ASYMPTOTIC = "asymptotic"


class AsymptoticOutage(str, Enum):
    D1_FD = "d1_fd"
    D1_HD = "d1_hd"
    D2_NODIR_FD = "d2_nodir_fd"
    D2_NODIR_HD = "d2_nodir_hd"


class OutageResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    probability: float
    method: OutageMethod
    terms_used: int = 0


def _probability(raw: float, method: OutageMethod, terms_used: int = 0) -> OutageResult:
    """Clamp round-off; larger excursions are formula bugs.

    High-SNR expansions are reported raw.
    """
    if method in (OutageMethod.ASYMPTOTIC, OutageMethod.GAUSS_CHEBYSHEV):
        return OutageResult(probability=raw, method=method, terms_used=terms_used)
    if not (-ROUND_OFF <= raw <= 1.0 + ROUND_OFF):
        raise FormulaInvariantError(f"{method.value} outage evaluated to {raw!r}")
    return OutageResult(
        probability=min(1.0, max(0.0, raw)), method=method, terms_used=terms_used
    )


def _one_minus_exp(x: float) -> float:
    """1 - e^-x without cancellation for small x."""
    return -math.expm1(-x)


def _relay_decodes(cfg: SystemConfig, rho: float, threshold: float) -> float:
    """P(g1 > threshold * (varpi rho gli + 1)): D1 clears a tau/theta-type threshold under LI."""
    li = cfg.varpi * rho * threshold * cfg.omega_li
    return cfg.omega1 / (cfg.omega1 + li) * math.exp(-threshold / cfg.omega1)


def outage_d1(cfg: SystemConfig, rho: float) -> OutageResult:
    """Outage of the near user D1 (SIC of x2, then x1)."""
    th = derive_thresholds(cfg, rho)
    if not th.feasible:
        return OutageResult(probability=1.0, method=OutageMethod.EXACT_CLOSED_FORM)
    return _probability(1.0 - _relay_decodes(cfg, rho, th.theta), OutageMethod.EXACT_CLOSED_FORM)


def outage_d2_nodir(cfg: SystemConfig, rho: float) -> OutageResult:
    """Outage of the far user D2 served only through the relay."""
    th = derive_thresholds(cfg, rho)
    if not th.feasible:
        return OutageResult(probability=1.0, method=OutageMethod.EXACT_CLOSED_FORM)
    success = _relay_decodes(cfg, rho, th.tau) * math.exp(-th.gamma_th2 / (rho * cfg.omega2))
    return _probability(1.0 - success, OutageMethod.EXACT_CLOSED_FORM)


def _require_fd_direct(cfg: SystemConfig) -> None:
    if cfg.duplex is not Duplex.FD:
        raise DomainError(
            "the half-duplex direct-link outage has no closed form here; "
            "estimate it with montecarlo.estimate_outage(kind='d2_dir_hd')"
        )
    if not cfg.direct_link:
        raise DomainError("config has direct_link=False; use outage_d2_nodir")


def _combine_direct(cfg: SystemConfig, rho: float, th: Thresholds, theta1: float) -> float:
    """J11 * J12 + J13 for a given Theta1."""
    direct_fails = _one_minus_exp(th.tau / cfg.omega0)
    j11 = direct_fails - theta1
    j12 = _relay_decodes(cfg, rho, th.tau)
    j13 = direct_fails * (1.0 - j12)
    return j11 * j12 + j13


def mrc_success_integral(
    cfg: SystemConfig, rho: float, th: Thresholds, ctl: Optional[QuadratureControl] = None
) -> Tuple[float, float]:
    """Theta1 by adaptive quadrature; returns (value, error bound).

    Integrated in u = y / Omega0, so a weak direct link (mass packed near y = 0)
    is still resolved. The u range stops at _DIRECT_DECAY, where e^-u is below
    double round-off of the result; the dropped tail is added to the bound.
    """
    gamma2 = th.gamma_th2
    o0 = cfg.omega0

    def integrand(u: float) -> float:
        y = o0 * u
        residual = gamma2 / rho - y * cfg.a2 / (y * cfg.a1 * rho + 1.0)
        return math.exp(-u - residual / cfg.omega2)

    upper = th.tau / o0
    tail = 0.0
    if upper > _DIRECT_DECAY:
        upper, tail = _DIRECT_DECAY, math.exp(-_DIRECT_DECAY)

    estimate = integrate_finite(integrand, 0.0, upper, ctl)
    return estimate.value, estimate.error_bound + tail


def power_moment_integral(n: int, phi1: float, psi: float, upper: float) -> float:
    """Closed form of int_1^upper x^n exp(phi1/x) dx, with psi = phi1/upper.

    Repeated integration by parts of z^-(n+2) e^(phi1 z) over [1/upper, 1]; the
    k-th coefficient is the falling factorial (n+1)n...(n+1-k) = (n+1)!/(n-k)!.
    """
    m = n + 1
    ei_part = phi1**m / math.factorial(m) * (expint_ei(phi1) - expint_ei(psi))

    scale = upper**m
    e_psi = math.exp(psi)
    e_phi1 = math.exp(phi1)
    terms = []
    falling = 1.0
    for k in range(n + 1):
        falling *= m - k
        terms.append((scale * e_psi * psi**k - e_phi1 * phi1**k) / falling)

    return ei_part + math.fsum(terms)


def mrc_success_series(
    cfg: SystemConfig, rho: float, th: Thresholds, ctl: Optional[SeriesControl] = None
) -> Tuple[float, int]:
    """Theta1 by the double series; returns (value, outer terms used).

    Raises:
        SeriesConvergenceError: the tail test never passed within max_outer_terms,
            or the alternating terms cancel too heavily to trust (low SNR)
    """
    ctl = ctl or SeriesControl()

    phi1 = -cfg.a2 / (cfg.a1 * rho * cfg.omega2)
    phi2 = cfg.a1 * rho * cfg.omega0
    phi = 1.0 / phi2 - th.gamma_th2 / (rho * cfg.omega2) - phi1
    upper = 1.0 + cfg.a1 * rho * th.tau
    psi = phi1 / upper

    terms: List[float] = []
    largest = 0.0
    for n in range(ctl.max_outer_terms):
        try:
            coefficient = (-1.0) ** n / (math.factorial(n) * phi2 ** (n + 1))
            term = math.exp(phi) * coefficient * power_moment_integral(n, phi1, psi, upper)
        except (OverflowError, ZeroDivisionError):
            raise SeriesConvergenceError(math.fsum(terms), n, "term out of range")
        if not math.isfinite(term):
            raise SeriesConvergenceError(math.fsum(terms), n, "non-finite term")
        terms.append(term)
        largest = max(largest, abs(term))
        total = math.fsum(terms)

        if abs(term) < ctl.rel_tail_tol * abs(total):
            if largest > _MAX_CANCELLATION * abs(total):
                raise SeriesConvergenceError(
                    total, n + 1, f"terms up to {largest:.3e} cancel to {total:.3e}"
                )
            return total, n + 1

    raise SeriesConvergenceError(math.fsum(terms), ctl.max_outer_terms)


def outage_d2_dir_fd(
    cfg: SystemConfig, rho: float, ctl: Optional[SeriesControl] = None
) -> OutageResult:
    """FD outage of D2 with the direct link (MRC upper bound), series closed form."""
    _require_fd_direct(cfg)
    th = derive_thresholds(cfg, rho)
    if not th.feasible:
        return OutageResult(probability=1.0, method=OutageMethod.SERIES_TRUNCATED)

    theta1, used = mrc_success_series(cfg, rho, th, ctl)
    return _probability(
        _combine_direct(cfg, rho, th, theta1), OutageMethod.SERIES_TRUNCATED, used
    )


def outage_d2_dir_fd_quadrature(
    cfg: SystemConfig, rho: float, ctl: Optional[QuadratureControl] = None
) -> OutageResult:
    """Same probability as :func:`outage_d2_dir_fd` with Theta1 integrated numerically."""
    _require_fd_direct(cfg)
    th = derive_thresholds(cfg, rho)
    if not th.feasible:
        return OutageResult(probability=1.0, method=OutageMethod.QUADRATURE)

    theta1, _ = mrc_success_integral(cfg, rho, th, ctl)
    return _probability(_combine_direct(cfg, rho, th, theta1), OutageMethod.QUADRATURE)


def outage_d2_dir(
    cfg: SystemConfig,
    rho: float,
    series: Optional[SeriesControl] = None,
    quad: Optional[QuadratureControl] = None,
) -> OutageResult:
    """Series closed form, falling back to quadrature where the series cancels out."""
    try:
        return outage_d2_dir_fd(cfg, rho, series)
    except SeriesConvergenceError as e:
        logger.debug(f"series unusable at rho={rho:.4g} ({e}); integrating Theta1")
        return outage_d2_dir_fd_quadrature(cfg, rho, quad)


def outage_d2_dir_fd_gc(
    cfg: SystemConfig, rho: float, ctl: Optional[QuadratureControl] = None
) -> OutageResult:
    """High-SNR Gauss-Chebyshev approximation of the FD direct-link outage of D2."""
    _require_fd_direct(cfg)
    ctl = ctl or QuadratureControl()
    th = derive_thresholds(cfg, rho)
    n = ctl.gc_points
    if not th.feasible:
        return OutageResult(probability=1.0, method=OutageMethod.GAUSS_CHEBYSHEV, terms_used=n)

    tau, o0, o2 = th.tau, cfg.omega0, cfg.omega2
    gamma2 = th.gamma_th2

    nodes = gauss_chebyshev_nodes(n)
    node_sum = math.fsum(
        (
            1.0
            + (s + 1.0) * tau * cfg.a2 / (o2 * ((s + 1.0) * tau * cfg.a1 * rho + 2.0))
            - s * tau / (2.0 * o0)
        )
        * w
        for s, w in nodes
    )
    shape = 1.0 - (o2 * tau + 2.0 * o0 * tau * (cfg.a2 - cfg.a1 * gamma2)) / (2.0 * o0 * o2)
    mrc_outage = tau / o0 - shape * tau * math.pi / (2.0 * n * o0) * node_sum

    chi = cfg.omega1 / (cfg.omega1 + tau * rho * cfg.omega_li)
    raw = mrc_outage * chi + (1.0 - chi) * tau / o0
    return _probability(raw, OutageMethod.GAUSS_CHEBYSHEV, n)


def asymptotic_outage(cfg: SystemConfig, rho: float, which: AsymptoticOutage) -> OutageResult:
    """High-SNR outage expressions, evaluated as written.

    The duplex mode is taken from ``which``, not from ``cfg``.
    """
    which = AsymptoticOutage(which)
    fd_forms = (AsymptoticOutage.D1_FD, AsymptoticOutage.D2_NODIR_FD)
    duplex = Duplex.FD if which in fd_forms else Duplex.HD
    mode_cfg = cfg if cfg.duplex is duplex else cfg.replace(duplex=duplex)
    th = derive_thresholds(mode_cfg, rho)
    if not th.feasible:
        return OutageResult(probability=1.0, method=OutageMethod.ASYMPTOTIC)

    o1, o2, oli = cfg.omega1, cfg.omega2, cfg.omega_li
    if which is AsymptoticOutage.D1_FD:
        raw = 1.0 - o1 / (o1 + rho * th.theta * oli)
    elif which is AsymptoticOutage.D1_HD:
        raw = th.theta / o1
    elif which is AsymptoticOutage.D2_NODIR_FD:
        raw = 1.0 - (o1 * o2 * rho - o1 * th.gamma_th2 - th.tau * rho * o2) / (
            o2 * rho * (o1 + th.tau * rho * oli)
        )
    else:
        raw = th.gamma_th2 / (rho * o2) + th.tau / o1
    return _probability(raw, OutageMethod.ASYMPTOTIC)


def diversity_order_estimate(curve: Iterable[Tuple[float, float]]) -> float:
    """Negative log-log slope of outage against SNR over the last two points."""
    points = list(curve)
    if len(points) < 2:
        raise DomainError("diversity order needs at least two (rho, probability) points")
    (rho1, p1), (rho2, p2) = points[-2], points[-1]
    if p1 <= 0.0 or p2 <= 0.0:
        raise DomainError("outage probabilities must be positive on a log scale")
    if not 0.0 < rho1 < rho2:
        raise DomainError("SNR points must be positive and increasing")
    return -(math.log(p2) - math.log(p1)) / (math.log(rho2) - math.log(rho1))

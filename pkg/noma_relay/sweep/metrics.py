"""Registry of sweepable metrics.

Each metric evaluates to an analytic value (when a closed form, quadrature or
high-SNR expression exists for the configuration) and a Monte Carlo estimate.
The estimate is produced when the caller asks for one, and always for metrics
that have no analytic value under the given configuration.
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional

from pydantic import BaseModel, ConfigDict

from ..analytic_outage import (
    AsymptoticOutage,
    OutageResult,
    asymptotic_outage,
    outage_d1,
    outage_d2_dir,
    outage_d2_dir_fd_gc,
    outage_d2_nodir,
)
from ..analytic_rate import (
    RateMethod,
    RateResult,
    Scenario,
    rate_d1,
    rate_d1_asym,
    rate_d2_dir,
    rate_d2_dir_asym,
    rate_d2_nodir,
    rate_d2_nodir_asym,
    sum_rate_asym,
)
from ..errors import DomainError
from ..montecarlo import (
    McControl,
    McEstimate,
    OutageKind,
    RateKind,
    ThroughputScheme,
    estimate_ergodic,
    estimate_outage,
    estimate_throughput,
)
from ..special_math import QuadratureControl
from ..system_model import Duplex, SystemConfig
from ..throughput_ee import (
    PowerBudget,
    ThroughputMode,
    efficiency_factor,
    energy_efficiency,
    throughput_delay_limited,
    throughput_delay_tolerant,
)

logger = logging.getLogger("noma-relay.sweep.metrics")

MONTE_CARLO = RateMethod.MONTE_CARLO.value


class EvalContext(BaseModel):
    """Per-run settings shared by every metric evaluation."""

    model_config = ConfigDict(frozen=True)

    mc: Optional[McControl] = None
    budget: PowerBudget = PowerBudget()
    quad: QuadratureControl = QuadratureControl()

    @property
    def forced_mc(self) -> McControl:
        return self.mc or McControl()


class MetricValue(NamedTuple):
    analytic: Optional[float]
    method: Optional[str]
    mc: Optional[McEstimate]


Evaluator = Callable[[SystemConfig, float, EvalContext], MetricValue]


class Metric(NamedTuple):
    id: str
    description: str
    # "outage" metrics are probabilities; validation uses the binomial error for them
    kind: str
    evaluate: Evaluator


def _from_outage(result: OutageResult, mc: Optional[McEstimate]) -> MetricValue:
    return MetricValue(result.probability, result.method.value, mc)


def _from_rate(result: RateResult, mc: Optional[McEstimate]) -> MetricValue:
    if result.method is RateMethod.MONTE_CARLO:
        return MetricValue(None, MONTE_CARLO, mc)
    return MetricValue(result.rate, result.method.value, mc)


def _simulated(estimate: McEstimate) -> MetricValue:
    return MetricValue(None, MONTE_CARLO, estimate)


def _with_direct_link(cfg: SystemConfig) -> SystemConfig:
    return cfg if cfg.direct_link else cfg.replace(direct_link=True)


def _scenario(cfg: SystemConfig) -> Scenario:
    return Scenario.DIR if cfg.direct_link else Scenario.NODIR


def _scaled(estimate: Optional[McEstimate], factor: float) -> Optional[McEstimate]:
    if estimate is None:
        return None
    return McEstimate(
        mean=factor * estimate.mean,
        std_error=factor * estimate.std_error,
        samples=estimate.samples,
    )


# Outage


def _outage_d1(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    mc = estimate_outage(cfg, rho, OutageKind.D1, ctx.mc) if ctx.mc else None
    return _from_outage(outage_d1(cfg, rho), mc)


def _outage_d2_nodir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    mc = estimate_outage(cfg, rho, OutageKind.D2_NODIR, ctx.mc) if ctx.mc else None
    return _from_outage(outage_d2_nodir(cfg, rho), mc)


def _outage_d2_dir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    cfg = _with_direct_link(cfg)
    if cfg.duplex is Duplex.HD:
        return _simulated(estimate_outage(cfg, rho, OutageKind.D2_DIR_HD, ctx.forced_mc))
    mc = estimate_outage(cfg, rho, OutageKind.D2_DIR_UB, ctx.mc) if ctx.mc else None
    return _from_outage(outage_d2_dir(cfg, rho, quad=ctx.quad), mc)


def _outage_d2_dir_gc(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _from_outage(outage_d2_dir_fd_gc(_with_direct_link(cfg), rho, ctx.quad), None)


def _outage_d2_dir_ri(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _simulated(estimate_outage(cfg, rho, OutageKind.D2_DIR_RI, ctx.forced_mc))


def _asym_outage_d1(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    which = AsymptoticOutage.D1_FD if cfg.duplex is Duplex.FD else AsymptoticOutage.D1_HD
    return _from_outage(asymptotic_outage(cfg, rho, which), None)


def _asym_outage_d2_nodir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    if cfg.duplex is Duplex.FD:
        which = AsymptoticOutage.D2_NODIR_FD
    else:
        which = AsymptoticOutage.D2_NODIR_HD
    return _from_outage(asymptotic_outage(cfg, rho, which), None)


def _oma_outage_d1(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _simulated(estimate_outage(cfg, rho, OutageKind.OMA_D1, ctx.forced_mc))


def _oma_outage_d2(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    kind = OutageKind.OMA_D2_DIR if cfg.direct_link else OutageKind.OMA_D2_NODIR
    return _simulated(estimate_outage(cfg, rho, kind, ctx.forced_mc))


# Ergodic rates


def _rate_d1(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    mc = estimate_ergodic(cfg, rho, RateKind.D1, ctx.mc) if ctx.mc else None
    return _from_rate(rate_d1(cfg, rho), mc)


def _rate_d2_nodir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    mc = estimate_ergodic(cfg, rho, RateKind.D2_NODIR, ctx.mc) if ctx.mc else None
    return _from_rate(rate_d2_nodir(cfg, rho, ctx.quad), mc)


def _rate_d2_dir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    if cfg.duplex is Duplex.FD:
        return _simulated(estimate_ergodic(cfg, rho, RateKind.D2_DIR_UB, ctx.forced_mc))
    mc = estimate_ergodic(cfg, rho, RateKind.D2_DIR_UB, ctx.mc) if ctx.mc else None
    return _from_rate(rate_d2_dir(cfg, rho, ctx.quad), mc)


def _rate_d2_dir_ri(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _simulated(estimate_ergodic(cfg, rho, RateKind.D2_DIR_RI, ctx.forced_mc))


def _asym_rate_d1(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _from_rate(rate_d1_asym(cfg, rho), None)


def _asym_rate_d2_nodir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _from_rate(rate_d2_nodir_asym(cfg, rho), None)


def _asym_rate_d2_dir(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _from_rate(rate_d2_dir_asym(cfg, rho), None)


def _sum_rate(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    kind = RateKind.SUM_DIR if cfg.direct_link else RateKind.SUM_NODIR
    if cfg.direct_link and cfg.duplex is Duplex.FD:
        return _simulated(estimate_ergodic(cfg, rho, kind, ctx.forced_mc))
    mc = estimate_ergodic(cfg, rho, kind, ctx.mc) if ctx.mc else None
    return _from_rate(throughput_delay_tolerant(cfg, rho, ctx.quad), mc)


def _sum_rate_asym(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    return _from_rate(sum_rate_asym(cfg, rho, _scenario(cfg)), None)


# Throughput and energy efficiency


def _throughput_limited(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    scheme = ThroughputScheme.DIR if cfg.direct_link else ThroughputScheme.NODIR
    if cfg.direct_link and cfg.duplex is Duplex.HD:
        return _simulated(estimate_throughput(cfg, rho, scheme, ctx.forced_mc))
    mc = estimate_throughput(cfg, rho, scheme, ctx.mc) if ctx.mc else None
    return _from_rate(throughput_delay_limited(cfg, rho), mc)


def _oma_throughput(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
    scheme = ThroughputScheme.OMA_DIR if cfg.direct_link else ThroughputScheme.OMA_NODIR
    return _simulated(estimate_throughput(cfg, rho, scheme, ctx.forced_mc))


def _efficiency(base: Evaluator, mode: ThroughputMode) -> Evaluator:
    """Energy efficiency built on the throughput metric ``base``."""

    def evaluate(cfg: SystemConfig, rho: float, ctx: EvalContext) -> MetricValue:
        factor = efficiency_factor(cfg, ctx.budget)
        if mode is ThroughputMode.TOLERANT_ASYMPTOTIC:
            value = energy_efficiency(cfg, rho, ctx.budget, mode)
            return MetricValue(value, RateMethod.ASYMPTOTIC.value, None)

        inner = base(cfg, rho, ctx)
        analytic = None if inner.analytic is None else factor * inner.analytic
        return MetricValue(analytic, inner.method, _scaled(inner.mc, factor))

    return evaluate


_METRICS: List[Metric] = [
    Metric("outage_d1", "Outage probability of the near user D1", "outage", _outage_d1),
    Metric(
        "outage_d2_nodir",
        "Outage probability of D2 served only through the relay",
        "outage",
        _outage_d2_nodir,
    ),
    Metric(
        "outage_d2_dir",
        "Outage probability of D2 with the direct link (FD closed form, HD Monte Carlo)",
        "outage",
        _outage_d2_dir,
    ),
    Metric(
        "outage_d2_dir_gc",
        "Gauss-Chebyshev high-SNR approximation of the FD direct-link outage of D2",
        "outage",
        _outage_d2_dir_gc,
    ),
    Metric(
        "outage_d2_dir_ri",
        "Outage of D2 with the direct link under residual interference kappa (Monte Carlo)",
        "outage",
        _outage_d2_dir_ri,
    ),
    Metric("asym_outage_d1", "High-SNR outage of D1", "outage", _asym_outage_d1),
    Metric(
        "asym_outage_d2_nodir",
        "High-SNR outage of D2 without the direct link",
        "outage",
        _asym_outage_d2_nodir,
    ),
    Metric("oma_outage_d1", "OMA baseline outage of D1 (Monte Carlo)", "outage", _oma_outage_d1),
    Metric("oma_outage_d2", "OMA baseline outage of D2 (Monte Carlo)", "outage", _oma_outage_d2),
    Metric("rate_d1", "Ergodic rate of D1", "rate", _rate_d1),
    Metric("rate_d2_nodir", "Ergodic rate of D2 without the direct link", "rate", _rate_d2_nodir),
    Metric(
        "rate_d2_dir",
        "Ergodic rate of D2 with MRC of the direct link (HD quadrature, FD Monte Carlo)",
        "rate",
        _rate_d2_dir,
    ),
    Metric(
        "rate_d2_dir_ri",
        "Ergodic rate of D2 with the direct link under residual interference (Monte Carlo)",
        "rate",
        _rate_d2_dir_ri,
    ),
    Metric("asym_rate_d1", "High-SNR ergodic rate of D1", "rate", _asym_rate_d1),
    Metric(
        "asym_rate_d2_nodir",
        "High-SNR ergodic rate of D2 without the direct link",
        "rate",
        _asym_rate_d2_nodir,
    ),
    Metric(
        "asym_rate_d2_dir",
        "High-SNR ergodic rate of D2 with the direct link",
        "rate",
        _asym_rate_d2_dir,
    ),
    Metric(
        "sum_rate",
        "Ergodic sum rate, i.e. delay-tolerant throughput, of the configured scenario",
        "rate",
        _sum_rate,
    ),
    Metric("sum_rate_asym", "High-SNR ergodic sum rate", "rate", _sum_rate_asym),
    Metric(
        "throughput_limited",
        "Delay-limited system throughput (1 - P1) R1 + (1 - P2) R2",
        "rate",
        _throughput_limited,
    ),
    Metric(
        "oma_throughput",
        "Delay-limited throughput of the OMA baseline (Monte Carlo)",
        "rate",
        _oma_throughput,
    ),
    Metric(
        "ee_limited",
        "Energy efficiency in delay-limited mode (bits/J)",
        "ee",
        _efficiency(_throughput_limited, ThroughputMode.LIMITED),
    ),
    Metric(
        "ee_tolerant",
        "Energy efficiency in delay-tolerant mode (bits/J)",
        "ee",
        _efficiency(_sum_rate, ThroughputMode.TOLERANT),
    ),
    Metric(
        "ee_tolerant_asym",
        "Energy efficiency in delay-tolerant mode from the high-SNR sum rate (bits/J)",
        "ee",
        _efficiency(_sum_rate_asym, ThroughputMode.TOLERANT_ASYMPTOTIC),
    ),
]

METRICS: Dict[str, Metric] = {metric.id: metric for metric in _METRICS}


def get_metric(metric_id: str) -> Metric:
    try:
        return METRICS[metric_id]
    except KeyError:
        known = ", ".join(METRICS)
        raise DomainError(f"unknown metric '{metric_id}'; known metrics: {known}") from None


def evaluate_metric(
    metric_id: str, cfg: SystemConfig, rho: float, ctx: Optional[EvalContext] = None
) -> MetricValue:
    return get_metric(metric_id).evaluate(cfg, rho, ctx or EvalContext())

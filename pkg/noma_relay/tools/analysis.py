"""Metric evaluation tools."""

import asyncio
import logging
from typing import Optional

from .. import sweep
from ..montecarlo import McControl
from ..server import mcp
from ..sweep.figures import preset_config
from ..system_model import Duplex, SystemConfig, db_to_linear, derive_thresholds

logger = logging.getLogger("noma-relay.tools.analysis")

_SCENARIOS = {"nodir": False, "dir": True}


def _preset(scenario: str, duplex: str, omega_li_db: float, kappa: float = 0.0) -> SystemConfig:
    if scenario not in _SCENARIOS:
        raise ValueError(f"scenario must be 'nodir' or 'dir', got '{scenario}'")
    return preset_config(Duplex(duplex.upper()), _SCENARIOS[scenario], omega_li_db, kappa)


@mcp.tool()
async def list_metrics() -> str:
    """List every metric that sweeps and figures can evaluate.

    Returns:
        Metric ids with a one-line description each
    """
    response = [f"📐 {len(sweep.METRICS)} metrics"]
    response.append("=" * 30)
    for metric in sweep.METRICS.values():
        response.append(f"• {metric.id} [{metric.kind}]: {metric.description}")
    return "\n".join(response)


@mcp.tool()
async def describe_thresholds(
    scenario: str = "nodir",
    snr_db: float = 20.0,
    duplex: str = "FD",
    omega_li_db: float = -15.0,
) -> str:
    """Show the target SINRs and the tau/beta/theta thresholds of a standard configuration.

    Args:
        scenario: 'nodir' (R1=3, R2=0.5) or 'dir' (R1=2, R2=1, direct link on)
        snr_db: Transmit SNR in dB
        duplex: 'FD' or 'HD'
        omega_li_db: Average loop-interference power in dB

    Returns:
        Formatted thresholds
    """
    try:
        cfg = _preset(scenario, duplex, omega_li_db)
        th = derive_thresholds(cfg, db_to_linear(snr_db))

        response = [f"🎯 Thresholds ({cfg.duplex.value}, {scenario}, {snr_db:g} dB)"]
        response.append(f"   gamma_th1: {th.gamma_th1:.6g}")
        response.append(f"   gamma_th2: {th.gamma_th2:.6g}")
        response.append(f"   tau: {th.tau:.6g}")
        response.append(f"   beta: {th.beta:.6g}")
        response.append(f"   theta: {th.theta:.6g}")
        if not th.feasible:
            response.append("⚠️ a2 <= a1 * gamma_th2: every outage is 1 at these rates")
        return "\n".join(response)

    except Exception as e:
        logger.error(f"Threshold derivation failed: {str(e)}")
        return f"❌ Failed to derive thresholds: {str(e)}"


@mcp.tool()
async def evaluate_metric(
    metric: str,
    snr_db: float,
    scenario: str = "nodir",
    duplex: str = "FD",
    omega_li_db: float = -15.0,
    kappa: float = 0.0,
    mc_samples: int = 0,
    seed: Optional[int] = None,
) -> str:
    """Evaluate one metric at one SNR point for a standard configuration.

    Args:
        metric: Metric id (see list_metrics)
        snr_db: Transmit SNR in dB
        scenario: 'nodir' or 'dir'
        duplex: 'FD' or 'HD'
        omega_li_db: Average loop-interference power in dB
        kappa: Residual interference level between relayed and direct links
        mc_samples: Monte Carlo samples; 0 skips simulation where an analytic value exists
        seed: Optional RNG seed

    Returns:
        Analytic value and Monte Carlo estimate, where available
    """
    try:
        cfg = _preset(scenario, duplex, omega_li_db, kappa)
        mc = None
        if mc_samples > 0:
            if seed is None:
                mc = McControl(samples=mc_samples)
            else:
                mc = McControl(samples=mc_samples, seed=seed)
        ctx = sweep.EvalContext(mc=mc)
        value = await asyncio.to_thread(
            sweep.evaluate_metric, metric, cfg, db_to_linear(snr_db), ctx
        )

        response = [f"📈 {metric} at {snr_db:g} dB ({cfg.duplex.value}, {scenario})"]
        if value.analytic is not None:
            response.append(f"   analytic: {value.analytic:.8g} ({value.method})")
        if value.mc is not None:
            response.append(
                f"   monte carlo: {value.mc.mean:.8g} +/- {value.mc.std_error:.3g} "
                f"({value.mc.samples} samples)"
            )
        return "\n".join(response)

    except Exception as e:
        logger.error(f"Metric evaluation failed: {str(e)}")
        return f"❌ Failed to evaluate '{metric}': {str(e)}"

"""Figure reproduction and validation tools."""

import asyncio
import logging
from typing import Optional

from .. import sweep
from ..montecarlo import McControl
from ..server import mcp

logger = logging.getLogger("noma-relay.tools.experiments")


def _control(samples: int, seed: Optional[int]) -> McControl:
    if seed is None:
        return McControl(samples=samples)
    return McControl(samples=samples, seed=seed)


@mcp.tool()
async def list_figures() -> str:
    """List the figure presets.

    Returns:
        Figure ids with their titles and curve counts
    """
    response = [f"🖼️ {len(sweep.FIGURE_IDS)} figure presets"]
    response.append("=" * 30)
    for figure_id in sweep.FIGURE_IDS:
        preset = sweep.figure_preset(figure_id)
        response.append(f"\n{figure_id}: {preset.title}")
        response.append(f"   Curves: {len(preset.curves)}")
        labels = sorted({f"{curve.metric}@{curve.label}" for curve in preset.curves})
        response.append(f"   {', '.join(labels)}")
    return "\n".join(response)


@mcp.tool()
async def reproduce_figure(
    figure_id: str,
    mc_samples: int = 100000,
    seed: Optional[int] = None,
) -> str:
    """Evaluate every curve of a figure preset on its SNR grid.

    Args:
        figure_id: One of fig2..fig10
        mc_samples: Monte Carlo samples per point
        seed: Optional RNG seed

    Returns:
        The figure table as CSV text
    """
    try:
        result = await asyncio.to_thread(
            sweep.figure_rows, figure_id, _control(mc_samples, seed)
        )
        return sweep.to_csv(result)

    except Exception as e:
        logger.error(f"Figure reproduction failed: {str(e)}")
        return f"❌ Failed to reproduce '{figure_id}': {str(e)}"


@mcp.tool()
async def validate_formulas(
    samples: int = 100000,
    seed: Optional[int] = None,
    grid: str = "0:10:40",
    sigma: float = 3.0,
) -> str:
    """Compare every analytic formula with its Monte Carlo estimate.

    Args:
        samples: Monte Carlo samples per check
        seed: Optional RNG seed
        grid: SNR grid in dB, start:step:stop or a comma-separated list
        sigma: Tolerance in standard errors

    Returns:
        Pass/fail summary with the failing checks
    """
    try:
        report = await asyncio.to_thread(
            sweep.run_validate, sweep.parse_snr_grid(grid), samples, seed, sigma
        )
        failures = report.failures
        emoji = "✅" if report.passed else "❌"
        response = [
            f"{emoji} {len(report.checks) - len(failures)}/{len(report.checks)} checks passed "
            f"({report.samples} samples, seed {report.seed}, {report.sigma:g} SE)"
        ]
        for check in failures:
            response.append(
                f"   • {check.name} @ {check.snr_db:g} dB: analytic {check.analytic:.6g}, "
                f"MC {check.mc_mean:.6g} +/- {check.std_error:.3g}"
            )
        return "\n".join(response)

    except Exception as e:
        logger.error(f"Validation failed: {str(e)}")
        return f"❌ Validation failed: {str(e)}"

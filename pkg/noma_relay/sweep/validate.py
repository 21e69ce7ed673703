"""Analytic-versus-Monte-Carlo validation suite.

Every check evaluates one metric both ways on the standard configurations and
passes when |analytic - mc| <= sigma * SE. For outage probabilities SE is the
larger of the sample standard error and the binomial one at the analytic value,
so cells where the simulation saw no events at all still carry a meaningful
tolerance.
"""

import logging
import math
from pathlib import Path
from typing import Callable, List, NamedTuple, Optional, Sequence

from ..errors import DomainError
from ..montecarlo import McControl
from ..system_model import Duplex, SystemConfig, db_to_linear
from .figures import preset_config
from .metrics import EvalContext, get_metric
from .models import ValidationCheck, ValidationReport

logger = logging.getLogger("noma-relay.validate")

DEFAULT_GRID: List[float] = [0.0, 10.0, 20.0, 30.0, 40.0]
DEFAULT_SIGMA = 3.0

ConfigHook = Callable[[SystemConfig], SystemConfig]


class SuiteEntry(NamedTuple):
    label: str
    metric: str
    config: SystemConfig


def standard_suite() -> List[SuiteEntry]:
    """Metrics with both an analytic and a simulated path, on the standard configurations."""
    entries: List[SuiteEntry] = []
    for duplex in (Duplex.FD, Duplex.HD):
        nodir = preset_config(duplex, direct_link=False, omega_li_db=-15.0)
        for metric in (
            "outage_d1",
            "outage_d2_nodir",
            "rate_d1",
            "rate_d2_nodir",
            "throughput_limited",
        ):
            entries.append(SuiteEntry(f"{duplex.value} nodir", metric, nodir))

    fd_dir = preset_config(Duplex.FD, direct_link=True, omega_li_db=-15.0)
    entries.append(SuiteEntry("FD dir", "outage_d1", fd_dir))
    entries.append(SuiteEntry("FD dir", "outage_d2_dir", fd_dir))
    hd_dir = preset_config(Duplex.HD, direct_link=True, omega_li_db=-10.0)
    entries.append(SuiteEntry("HD dir", "rate_d2_dir", hd_dir))
    return entries


def _check(
    entry: SuiteEntry,
    snr_db: float,
    ctx: EvalContext,
    sigma: float,
    perturb: Optional[ConfigHook],
) -> ValidationCheck:
    metric = get_metric(entry.metric)
    rho = db_to_linear(snr_db)

    value = metric.evaluate(entry.config, rho, ctx)
    analytic = value.analytic
    if perturb is not None:
        analytic = metric.evaluate(perturb(entry.config), rho, EvalContext()).analytic
    if analytic is None or value.mc is None:
        raise DomainError(f"{entry.metric} under '{entry.label}' has no analytic/MC pair")

    mc = value.mc
    std_error = mc.std_error
    if metric.kind == "outage":
        p = min(1.0, max(0.0, analytic))
        std_error = max(std_error, math.sqrt(p * (1.0 - p) / mc.samples))

    margin = sigma * std_error - abs(analytic - mc.mean)
    return ValidationCheck(
        name=f"{entry.metric}@{entry.label}",
        snr_db=snr_db,
        analytic=analytic,
        mc_mean=mc.mean,
        std_error=std_error,
        margin=margin,
        passed=margin >= 0.0,
    )


def run_validate(
    grid: Optional[Sequence[float]] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    sigma: float = DEFAULT_SIGMA,
    out: Optional[Path] = None,
    perturb: Optional[ConfigHook] = None,
) -> ValidationReport:
    """Run the suite over ``grid`` and optionally write the JSON report.

    ``perturb`` rewrites the configuration seen by the analytic path only; it
    exists to show that a corrupted formula input is caught.
    """
    defaults = McControl()
    mc = McControl(
        samples=samples if samples is not None else defaults.samples,
        seed=seed if seed is not None else defaults.seed,
        chunk_size=defaults.chunk_size,
    )
    snr_grid = list(grid) if grid is not None else DEFAULT_GRID
    ctx = EvalContext(mc=mc)

    checks: List[ValidationCheck] = []
    for entry in standard_suite():
        for snr_db in snr_grid:
            check = _check(entry, snr_db, ctx, sigma, perturb)
            if not check.passed:
                logger.warning(
                    f"{check.name} at {snr_db:g} dB: analytic {check.analytic:.6g}, "
                    f"MC {check.mc_mean:.6g} +/- {check.std_error:.3g}"
                )
            checks.append(check)

    report = ValidationReport(
        sigma=sigma, samples=mc.samples, seed=mc.seed, snr_db=snr_grid, checks=checks
    )
    logger.info(
        f"validation: {len(checks) - len(report.failures)}/{len(checks)} checks passed"
    )
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return report

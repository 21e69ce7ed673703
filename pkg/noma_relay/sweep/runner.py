"""SNR sweeps and figure reproduction, with CSV and JSON output."""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import List, Optional, Union

from pydantic import TypeAdapter

from ..errors import DomainError
from ..montecarlo import McControl
from ..system_model import SystemConfig, db_to_linear, derive_thresholds
from ..throughput_ee import PowerBudget
from .figures import figure_preset
from .metrics import EvalContext, get_metric
from .models import CSV_COLUMNS, OutputFormat, SweepResult, SweepRow, SweepSpec

logger = logging.getLogger("noma-relay.sweep")

_ROWS = TypeAdapter(List[SweepRow])


def parse_snr_grid(text: str) -> List[float]:
    """Parse ``start:step:stop`` (stop included) or a comma-separated list, in dB."""
    text = text.strip()
    try:
        if ":" in text:
            start, step, stop = (float(part) for part in text.split(":"))
            if step <= 0.0 or stop < start:
                raise DomainError(f"grid '{text}' needs step > 0 and stop >= start")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 10) for i in range(count)]
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise DomainError(f"cannot parse SNR grid '{text}'") from None


def evaluate_row(
    metric_id: str,
    cfg: SystemConfig,
    snr_db: float,
    ctx: EvalContext,
    label: Optional[str] = None,
) -> SweepRow:
    """Evaluate one metric at one SNR point."""
    metric = get_metric(metric_id)
    rho = db_to_linear(snr_db)

    if metric.kind == "outage" and not derive_thresholds(cfg, rho).feasible:
        logger.warning(
            f"{metric_id}: a2 <= a1 * gamma_th2 at the configured rates, outage is 1"
        )

    value = metric.evaluate(cfg, rho, ctx)
    mc = value.mc
    return SweepRow(
        snr_db=snr_db,
        metric=f"{metric_id}@{label}" if label else metric_id,
        analytic=value.analytic,
        mc_mean=mc.mean if mc else None,
        mc_se=mc.std_error if mc else None,
        method=value.method,
        samples=mc.samples if mc else None,
    )


def sweep_rows(spec: SweepSpec) -> SweepResult:
    ctx = EvalContext(mc=spec.mc, budget=spec.budget)
    # Unknown ids fail before any work is done
    for metric_id in spec.metrics:
        get_metric(metric_id)
    rows = [
        evaluate_row(metric_id, spec.config, snr_db, ctx)
        for snr_db in spec.snr_db
        for metric_id in spec.metrics
    ]
    return SweepResult(rows=rows)


def figure_rows(
    figure_id: str, mc: Optional[McControl] = None, budget: Optional[PowerBudget] = None
) -> SweepResult:
    preset = figure_preset(figure_id)
    ctx = EvalContext(mc=mc, budget=budget or preset.budget)
    rows: List[SweepRow] = []
    for curve in preset.curves:
        logger.info(f"{figure_id}: {curve.metric}@{curve.label}")
        rows += [
            evaluate_row(curve.metric, curve.config, snr_db, ctx, curve.label)
            for snr_db in curve.snr_db or preset.snr_db
        ]
    return SweepResult(rows=rows)


def _cell(value: Union[float, int, str, None]) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(result: SweepResult) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in result.rows:
        writer.writerow({column: _cell(getattr(row, column)) for column in CSV_COLUMNS})
    return buffer.getvalue()


def to_json(result: SweepResult) -> str:
    return json.dumps([row.model_dump(mode="json") for row in result.rows], indent=2) + "\n"


def from_csv(text: str) -> SweepResult:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_COLUMNS:
        raise DomainError(f"unexpected CSV header {reader.fieldnames}")
    rows = [
        {key: (value if value != "" else None) for key, value in raw.items()} for raw in reader
    ]
    return SweepResult(rows=_ROWS.validate_python(rows))


def from_json(text: str) -> SweepResult:
    return SweepResult(rows=_ROWS.validate_json(text))


def write_result(result: SweepResult, path: Path, fmt: OutputFormat) -> Path:
    text = to_json(result) if OutputFormat(fmt) is OutputFormat.JSON else to_csv(result)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def read_result(path: Path) -> SweepResult:
    text = Path(path).read_text(encoding="utf-8")
    return from_json(text) if text.lstrip().startswith("[") else from_csv(text)


def run_sweep(spec: SweepSpec) -> Path:
    """Evaluate every (snr, metric) pair of ``spec`` and write the result file."""
    result = sweep_rows(spec)
    logger.info(f"sweep: {len(result.rows)} rows -> {spec.output_path}")
    return write_result(result, spec.output_path, spec.format)


def run_figure(
    figure_id: str,
    output_path: Path,
    mc: Optional[McControl] = None,
    fmt: OutputFormat = OutputFormat.CSV,
) -> Path:
    """Write every curve of a figure preset over its SNR grid."""
    result = figure_rows(figure_id, mc)
    logger.info(f"{figure_id}: {len(result.rows)} rows -> {output_path}")
    return write_result(result, output_path, fmt)


"""SNR sweeps, figure presets and the analytic-versus-simulation validation suite."""

from .config_file import config_from_mapping, load_config_file
from .figures import FIGURE_IDS, figure_preset
from .metrics import METRICS, EvalContext, evaluate_metric, get_metric
from .models import (
    CSV_COLUMNS,
    Curve,
    FigurePreset,
    OutputFormat,
    SweepResult,
    SweepRow,
    SweepSpec,
    ValidationCheck,
    ValidationReport,
)
from .runner import (
    figure_rows,
    parse_snr_grid,
    read_result,
    run_figure,
    run_sweep,
    sweep_rows,
    to_csv,
)
from .validate import run_validate

__all__ = [
    "CSV_COLUMNS",
    "Curve",
    "EvalContext",
    "FIGURE_IDS",
    "FigurePreset",
    "METRICS",
    "OutputFormat",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "ValidationCheck",
    "ValidationReport",
    "config_from_mapping",
    "evaluate_metric",
    "figure_preset",
    "figure_rows",
    "get_metric",
    "load_config_file",
    "parse_snr_grid",
    "read_result",
    "run_figure",
    "run_sweep",
    "run_validate",
    "sweep_rows",
    "to_csv",
]

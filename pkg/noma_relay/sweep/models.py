"""Records exchanged by the sweep runner, the figure presets and the validation suite."""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from ..montecarlo import McControl
from ..system_model import SystemConfig
from ..throughput_ee import PowerBudget

CSV_COLUMNS = ["snr_db", "metric", "analytic", "mc_mean", "mc_se", "method", "samples"]


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


def _check_grid(grid: List[float]) -> List[float]:
    if not grid:
        raise ValueError("SNR grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("SNR grid must be strictly increasing")
    return grid


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    snr_db: List[float]
    metrics: List[str] = Field(min_length=1)
    config: SystemConfig
    mc: Optional[McControl] = None
    output_path: Path
    format: OutputFormat = OutputFormat.CSV
    budget: PowerBudget = PowerBudget()

    @field_validator("snr_db")
    @classmethod
    def check_increasing(cls, grid: List[float]) -> List[float]:
        return _check_grid(grid)


class SweepRow(BaseModel):
    """One (snr, metric) cell; absent values stay None and print as empty CSV fields."""

    model_config = ConfigDict(frozen=True)

    snr_db: float
    metric: str
    analytic: Optional[float] = None
    mc_mean: Optional[float] = None
    mc_se: Optional[float] = None
    method: Optional[str] = None
    samples: Optional[int] = None


class SweepResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: List[SweepRow]


class Curve(BaseModel):
    """A labelled metric evaluated under its own configuration.

    ``snr_db`` narrows the figure grid for curves that are only meaningful on
    part of it (high-SNR approximations).
    """

    model_config = ConfigDict(frozen=True)

    label: str
    metric: str
    config: SystemConfig
    snr_db: Optional[List[float]] = None

    @field_validator("snr_db")
    @classmethod
    def check_increasing(cls, grid: Optional[List[float]]) -> Optional[List[float]]:
        return None if grid is None else _check_grid(grid)


class FigurePreset(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    title: str
    curves: List[Curve] = Field(min_length=1)
    snr_db: List[float]
    budget: PowerBudget = PowerBudget()

    @field_validator("snr_db")
    @classmethod
    def check_increasing(cls, grid: List[float]) -> List[float]:
        return _check_grid(grid)


class ValidationCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    snr_db: float
    analytic: float
    mc_mean: float
    std_error: float
    margin: float
    passed: bool


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    sigma: float
    samples: int
    seed: int
    snr_db: List[float]
    checks: List[ValidationCheck]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[ValidationCheck]:
        return [check for check in self.checks if not check.passed]

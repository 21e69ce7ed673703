"""Presets reproducing the numerical-results figures as labelled curves.

Geometry: BS-D2 distance normalized to 1, D1 at distance 0.3, path-loss exponent
2, power split a1 = 0.2 / a2 = 0.8. Target rates are R1 = 3, R2 = 0.5 without
the direct link and R1 = 2, R2 = 1 with it.
"""

from typing import Dict, List, Tuple

from ..errors import DomainError
from ..system_model import Duplex, SystemConfig
from ..throughput_ee import PowerBudget
from .models import Curve, FigurePreset

DEFAULT_GRID: List[float] = [float(snr) for snr in range(0, 45, 5)]

NODIR_RATES: Tuple[float, float] = (3.0, 0.5)
DIR_RATES: Tuple[float, float] = (2.0, 1.0)
LI_SWEEP_DB: Tuple[float, ...] = (-20.0, -15.0, -10.0)
RI_LEVELS: Tuple[float, ...] = (0.5, 1.0)

# The Gauss-Chebyshev outage is a high-SNR form and leaves [0, 1] at low SNR
HIGH_SNR_GRID: List[float] = [snr for snr in DEFAULT_GRID if snr >= 25.0]


def preset_config(
    duplex: Duplex,
    direct_link: bool,
    omega_li_db: float = -15.0,
    kappa: float = 0.0,
) -> SystemConfig:
    r1, r2 = DIR_RATES if direct_link else NODIR_RATES
    return SystemConfig.from_geometry(
        distance=0.3,
        pathloss_exponent=2.0,
        omega_li_db=omega_li_db,
        a1=0.2,
        a2=0.8,
        r1=r1,
        r2=r2,
        duplex=duplex,
        direct_link=direct_link,
        kappa=kappa,
    )


def _both_modes(metric: str, direct_link: bool, omega_li_db: float) -> List[Curve]:
    return [
        Curve(
            label=duplex.value,
            metric=metric,
            config=preset_config(duplex, direct_link, omega_li_db),
        )
        for duplex in (Duplex.FD, Duplex.HD)
    ]


def _li_sweep(metric: str, direct_link: bool) -> List[Curve]:
    curves = [
        Curve(
            label=f"FD LI={li:g}dB",
            metric=metric,
            config=preset_config(Duplex.FD, direct_link, li),
        )
        for li in LI_SWEEP_DB
    ]
    # HD does not see the loop interference
    curves.append(Curve(label="HD", metric=metric, config=preset_config(Duplex.HD, direct_link)))
    return curves


def _ri_curves(metric: str, omega_li_db: float) -> List[Curve]:
    return [
        Curve(
            label=f"FD kappa={kappa:g}",
            metric=metric,
            config=preset_config(Duplex.FD, True, omega_li_db, kappa),
        )
        for kappa in RI_LEVELS
    ]


def _oma(metric: str, direct_link: bool) -> Curve:
    return Curve(label="OMA", metric=metric, config=preset_config(Duplex.HD, direct_link))


def _fig2() -> FigurePreset:
    curves: List[Curve] = []
    for metric in ("outage_d1", "outage_d2_nodir", "asym_outage_d1", "asym_outage_d2_nodir"):
        curves += _both_modes(metric, False, -15.0)
    curves += [_oma("oma_outage_d1", False), _oma("oma_outage_d2", False)]
    return FigurePreset(
        id="fig2",
        title="Outage probability versus transmit SNR without direct link",
        curves=curves,
        snr_db=DEFAULT_GRID,
    )


def _fig3() -> FigurePreset:
    return FigurePreset(
        id="fig3",
        title="Delay-limited throughput versus SNR for several LI levels without direct link",
        curves=_li_sweep("throughput_limited", False) + [_oma("oma_throughput", False)],
        snr_db=DEFAULT_GRID,
    )


def _fig4() -> FigurePreset:
    curves: List[Curve] = []
    for metric in ("rate_d1", "rate_d2_nodir", "sum_rate", "sum_rate_asym"):
        curves += _both_modes(metric, False, -10.0)
    return FigurePreset(
        id="fig4",
        title="Ergodic rates versus transmit SNR without direct link",
        curves=curves,
        snr_db=DEFAULT_GRID,
    )


def _fig5() -> FigurePreset:
    curves = _both_modes("outage_d1", True, -15.0) + _both_modes("outage_d2_dir", True, -15.0)
    curves.append(
        Curve(
            label="FD",
            metric="outage_d2_dir_gc",
            config=preset_config(Duplex.FD, True, -15.0),
            snr_db=HIGH_SNR_GRID,
        )
    )
    curves += _ri_curves("outage_d2_dir_ri", -15.0)
    curves.append(_oma("oma_outage_d2", True))
    return FigurePreset(
        id="fig5",
        title="Outage probability versus transmit SNR with direct link",
        curves=curves,
        snr_db=DEFAULT_GRID,
    )


def _fig6() -> FigurePreset:
    return FigurePreset(
        id="fig6",
        title="Outage probability versus transmit SNR for several LI levels with direct link",
        curves=_li_sweep("outage_d1", True) + _li_sweep("outage_d2_dir", True),
        snr_db=DEFAULT_GRID,
    )


def _fig7() -> FigurePreset:
    return FigurePreset(
        id="fig7",
        title="Delay-limited throughput versus SNR for several LI levels with direct link",
        curves=_li_sweep("throughput_limited", True),
        snr_db=DEFAULT_GRID,
    )


def _fig8() -> FigurePreset:
    curves = _both_modes("rate_d1", True, -10.0) + _both_modes("rate_d2_dir", True, -10.0)
    curves += _ri_curves("rate_d2_dir_ri", -10.0)
    curves += _both_modes("sum_rate_asym", True, -10.0)
    return FigurePreset(
        id="fig8",
        title="Ergodic rates versus transmit SNR with direct link",
        curves=curves,
        snr_db=DEFAULT_GRID,
    )


def _energy_curves(metric: str, omega_li_db: float) -> List[Curve]:
    curves = []
    for direct_link, scenario in ((False, "nodir"), (True, "dir")):
        for curve in _both_modes(metric, direct_link, omega_li_db):
            curves.append(curve.model_copy(update={"label": f"{curve.label} {scenario}"}))
    return curves


def _fig9() -> FigurePreset:
    return FigurePreset(
        id="fig9",
        title="Energy efficiency in delay-limited mode, Ps = Pr = 10 W, T = 1",
        curves=_energy_curves("ee_limited", -15.0),
        snr_db=DEFAULT_GRID,
        budget=PowerBudget(ps=10.0, pr=10.0, t=1.0),
    )


def _fig10() -> FigurePreset:
    return FigurePreset(
        id="fig10",
        title="Energy efficiency in delay-tolerant mode, Ps = Pr = 10 W, T = 1",
        curves=_energy_curves("ee_tolerant", -10.0) + _energy_curves("ee_tolerant_asym", -10.0),
        snr_db=DEFAULT_GRID,
        budget=PowerBudget(ps=10.0, pr=10.0, t=1.0),
    )


_BUILDERS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
    "fig8": _fig8,
    "fig9": _fig9,
    "fig10": _fig10,
}

FIGURE_IDS: List[str] = list(_BUILDERS)


def figure_preset(figure_id: str) -> FigurePreset:
    """Build the preset for ``figure_id``; a fresh, identical object on every call."""
    try:
        return _BUILDERS[figure_id]()
    except KeyError:
        raise DomainError(
            f"unknown figure '{figure_id}'; choose one of {', '.join(FIGURE_IDS)}"
        ) from None


def all_presets() -> Dict[str, FigurePreset]:
    return {figure_id: figure_preset(figure_id) for figure_id in FIGURE_IDS}

"""Monte Carlo oracle over exponential channel draws.

Samples are split into fixed-size chunks. Chunk ``i`` draws from a Philox
generator keyed by ``SeedSequence(seed, spawn_key=(i,))``, so every chunk is
reproducible on its own and the draws do not depend on how many workers run
them. Chunk statistics (count, mean, M2) are merged in chunk order, which keeps
both the mean and the standard error bit-identical for any worker count.

Draws depend only on (seed, chunk), never on rho or on the channel means, so a
sweep over SNR or configuration reuses common random numbers.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from . import config
from .system_model import (
    ChannelDraw,
    Duplex,
    SystemConfig,
    derive_thresholds,
    sinr_d1_detect_x2,
    sinr_d1_own,
    sinr_d2_direct_ri,
    sinr_d2_direct_ub,
    sinr_d2_mrc,
    sinr_d2_relay_ri,
    sinr_d2_relay_ub,
)

logger = logging.getLogger("noma-relay.montecarlo")


class McControl(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples: int = Field(default_factory=lambda: config.DEFAULT_MC_SAMPLES, ge=1)
    seed: int = Field(default_factory=lambda: config.DEFAULT_SEED, ge=0, lt=2**64)
    chunk_size: int = Field(default_factory=lambda: config.DEFAULT_CHUNK_SIZE, ge=1)


class McEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    std_error: float = Field(ge=0.0)
    samples: int


class OutageKind(str, Enum):
    D1 = "d1"
    D2_NODIR = "d2_nodir"
    D2_DIR_UB = "d2_dir_ub"
    D2_DIR_RI = "d2_dir_ri"
    D2_DIR_HD = "d2_dir_hd"
    OMA_D1 = "oma_d1"
    OMA_D2_NODIR = "oma_d2_nodir"
    OMA_D2_DIR = "oma_d2_dir"


class RateKind(str, Enum):
    D1 = "d1"
    D2_NODIR = "d2_nodir"
    D2_DIR_UB = "d2_dir_ub"
    D2_DIR_RI = "d2_dir_ri"
    SUM_NODIR = "sum_nodir"
    SUM_DIR = "sum_dir"


class ThroughputScheme(str, Enum):
    NODIR = "nodir"
    DIR = "dir"
    OMA_NODIR = "oma_nodir"
    OMA_DIR = "oma_dir"


class _Moments(NamedTuple):
    count: int
    mean: float
    m2: float


def draw_channels(cfg: SystemConfig, rng: np.random.Generator, size: int) -> ChannelDraw:
    """Independent exponential gains by inverse CDF, -Omega ln U with U in (0, 1]."""

    def exponential(mean: float) -> np.ndarray:
        return -mean * np.log1p(-rng.random(size))

    g0 = exponential(cfg.omega0)
    g1 = exponential(cfg.omega1)
    g2 = exponential(cfg.omega2)
    gli = exponential(cfg.omega_li)
    return ChannelDraw(g0=g0, g1=g1, g2=g2, gli=gli)


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunk_sizes(ctl: McControl) -> List[int]:
    full, rest = divmod(ctl.samples, ctl.chunk_size)
    return [ctl.chunk_size] * full + ([rest] if rest else [])


def _merge(a: _Moments, b: _Moments) -> _Moments:
    count = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * b.count / count
    m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / count
    return _Moments(count, mean, m2)


def run_chunks(
    cfg: SystemConfig,
    sample: Callable[[ChannelDraw], np.ndarray],
    ctl: McControl,
    workers: Optional[int] = None,
) -> McEstimate:
    """Evaluate ``sample`` on every chunk of draws and reduce in chunk order."""
    sizes = _chunk_sizes(ctl)

    def run(index: int) -> _Moments:
        draw = draw_channels(cfg, chunk_generator(ctl.seed, index), sizes[index])
        values = np.asarray(sample(draw), dtype=np.float64)
        mean = float(values.mean())
        return _Moments(values.size, mean, float(np.sum((values - mean) ** 2)))

    max_workers = max(1, min(workers or config.NOMA_THREADS, len(sizes)))
    if max_workers == 1:
        moments = [run(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            moments = list(pool.map(run, range(len(sizes))))

    total = moments[0]
    for part in moments[1:]:
        total = _merge(total, part)

    n = total.count
    variance = total.m2 / (n - 1) if n > 1 else 0.0
    return McEstimate(mean=total.mean, std_error=math.sqrt(variance / n), samples=n)


def _oma_target(rate: float, slots: int) -> float:
    return 2.0 ** (slots * rate) - 1.0


def outage_events(kind: OutageKind, draw: ChannelDraw, cfg: SystemConfig, rho: float) -> np.ndarray:
    """Boolean outage indicator per draw."""
    kind = OutageKind(kind)

    if kind is OutageKind.OMA_D1:
        # slot 1 carries x1 to D1 at full power; three slots per frame
        return draw.g1 * rho < _oma_target(cfg.r1, 3)
    if kind is OutageKind.OMA_D2_NODIR:
        # slot 2: BS -> D1 with x2, slot 3: D1 -> D2
        target = _oma_target(cfg.r2, 3)
        return (draw.g1 * rho < target) | (draw.g2 * rho < target)
    if kind is OutageKind.OMA_D2_DIR:
        # phase 1 broadcasts x2, phase 2 D1 forwards it if decoded; D2 combines
        target = _oma_target(cfg.r2, 2)
        relay_ok = draw.g1 * rho >= target
        combined = (draw.g0 + draw.g2) * rho
        return np.where(relay_ok, combined < target, draw.g0 * rho < target)

    if kind is OutageKind.D2_DIR_HD:
        cfg = cfg.replace(duplex=Duplex.HD)
    th = derive_thresholds(cfg, rho)
    relay_ok = sinr_d1_detect_x2(draw, cfg, rho) >= th.gamma_th2

    if kind is OutageKind.D1:
        return ~(relay_ok & (sinr_d1_own(draw, cfg, rho) >= th.gamma_th1))
    if kind is OutageKind.D2_NODIR:
        return ~(relay_ok & (sinr_d2_relay_ub(draw, cfg, rho) >= th.gamma_th2))

    if kind is OutageKind.D2_DIR_RI:
        direct = sinr_d2_direct_ri(draw, cfg, rho)
        combined = direct + sinr_d2_relay_ri(draw, cfg, rho)
    else:
        direct = sinr_d2_direct_ub(draw, cfg, rho)
        combined = sinr_d2_mrc(draw, cfg, rho)
    return np.where(relay_ok, combined < th.gamma_th2, direct < th.gamma_th2)


def instantaneous_rates(
    kind: RateKind, draw: ChannelDraw, cfg: SystemConfig, rho: float
) -> np.ndarray:
    """log2(1 + SINR) per draw, halved in HD mode."""
    kind = RateKind(kind)
    scale = 1.0 if cfg.duplex is Duplex.FD else 0.5

    def d1() -> np.ndarray:
        return np.log2(1.0 + sinr_d1_own(draw, cfg, rho))

    def d2(end_to_end: np.ndarray) -> np.ndarray:
        return np.log2(1.0 + np.minimum(sinr_d1_detect_x2(draw, cfg, rho), end_to_end))

    rates: Dict[RateKind, Callable[[], np.ndarray]] = {
        RateKind.D1: d1,
        RateKind.D2_NODIR: lambda: d2(sinr_d2_relay_ub(draw, cfg, rho)),
        RateKind.D2_DIR_UB: lambda: d2(sinr_d2_mrc(draw, cfg, rho)),
        RateKind.D2_DIR_RI: lambda: d2(
            sinr_d2_direct_ri(draw, cfg, rho) + sinr_d2_relay_ri(draw, cfg, rho)
        ),
        RateKind.SUM_NODIR: lambda: d1() + d2(sinr_d2_relay_ub(draw, cfg, rho)),
        RateKind.SUM_DIR: lambda: d1() + d2(sinr_d2_mrc(draw, cfg, rho)),
    }
    return scale * rates[kind]()


def estimate_outage(
    cfg: SystemConfig,
    rho: float,
    kind: OutageKind,
    ctl: Optional[McControl] = None,
    workers: Optional[int] = None,
) -> McEstimate:
    """Frequency of the outage event ``kind``."""
    kind = OutageKind(kind)
    ctl = ctl or McControl()
    logger.debug(f"outage {kind.value} at rho={rho:.4g}, {ctl.samples} samples, seed {ctl.seed}")
    return run_chunks(
        cfg, lambda draw: outage_events(kind, draw, cfg, rho).astype(np.float64), ctl, workers
    )


def estimate_ergodic(
    cfg: SystemConfig,
    rho: float,
    kind: RateKind,
    ctl: Optional[McControl] = None,
    workers: Optional[int] = None,
) -> McEstimate:
    """Sample mean of the instantaneous rate ``kind`` in bits per channel use."""
    kind = RateKind(kind)
    ctl = ctl or McControl()
    logger.debug(f"rate {kind.value} at rho={rho:.4g}, {ctl.samples} samples, seed {ctl.seed}")
    return run_chunks(cfg, lambda draw: instantaneous_rates(kind, draw, cfg, rho), ctl, workers)


_THROUGHPUT_EVENTS: Dict[ThroughputScheme, Tuple[OutageKind, OutageKind]] = {
    ThroughputScheme.NODIR: (OutageKind.D1, OutageKind.D2_NODIR),
    ThroughputScheme.DIR: (OutageKind.D1, OutageKind.D2_DIR_UB),
    ThroughputScheme.OMA_NODIR: (OutageKind.OMA_D1, OutageKind.OMA_D2_NODIR),
    ThroughputScheme.OMA_DIR: (OutageKind.OMA_D1, OutageKind.OMA_D2_DIR),
}


def estimate_throughput(
    cfg: SystemConfig,
    rho: float,
    scheme: ThroughputScheme,
    ctl: Optional[McControl] = None,
    workers: Optional[int] = None,
) -> McEstimate:
    """Delay-limited throughput R1 * 1{D1 ok} + R2 * 1{D2 ok}, averaged per draw."""
    first, second = _THROUGHPUT_EVENTS[ThroughputScheme(scheme)]
    ctl = ctl or McControl()

    def sample(draw: ChannelDraw) -> np.ndarray:
        d1_ok = ~outage_events(first, draw, cfg, rho)
        d2_ok = ~outage_events(second, draw, cfg, rho)
        return cfg.r1 * d1_ok + cfg.r2 * d2_ok

    return run_chunks(cfg, sample, ctl, workers)

"""Shared fixtures: the standard configurations and small Monte Carlo controls."""

import pytest

from noma_relay.montecarlo import McControl
from noma_relay.sweep.figures import preset_config
from noma_relay.system_model import Duplex, SystemConfig


@pytest.fixture
def nodir_fd() -> SystemConfig:
    """FD, no direct link, R1 = 3, R2 = 0.5, LI -15 dB."""
    return preset_config(Duplex.FD, direct_link=False, omega_li_db=-15.0)


@pytest.fixture
def nodir_hd() -> SystemConfig:
    return preset_config(Duplex.HD, direct_link=False, omega_li_db=-15.0)


@pytest.fixture
def dir_fd() -> SystemConfig:
    """FD with the direct link, R1 = 2, R2 = 1, LI -15 dB."""
    return preset_config(Duplex.FD, direct_link=True, omega_li_db=-15.0)


@pytest.fixture
def dir_hd() -> SystemConfig:
    return preset_config(Duplex.HD, direct_link=True, omega_li_db=-15.0)


@pytest.fixture
def small_mc() -> McControl:
    return McControl(samples=200_000, seed=7, chunk_size=50_000)


@pytest.fixture
def tiny_mc() -> McControl:
    return McControl(samples=20_000, seed=11, chunk_size=5_000)

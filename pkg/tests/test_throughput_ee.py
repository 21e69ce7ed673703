import pytest
from pydantic import ValidationError

from noma_relay.analytic_outage import outage_d1, outage_d2_nodir
from noma_relay.analytic_rate import RateMethod, rate_d1, rate_d2_nodir, sum_rate_asym
from noma_relay.montecarlo import McControl
from noma_relay.system_model import db_to_linear
from noma_relay.throughput_ee import (
    PowerBudget,
    ThroughputMode,
    efficiency_factor,
    energy_efficiency,
    throughput,
    throughput_delay_limited,
    throughput_delay_tolerant,
)


def test_delay_limited_identity(nodir_fd):
    rho = db_to_linear(20.0)
    p1 = outage_d1(nodir_fd, rho).probability
    p2 = outage_d2_nodir(nodir_fd, rho).probability
    result = throughput_delay_limited(nodir_fd, rho)
    assert result.method is RateMethod.CLOSED_FORM
    assert result.rate == pytest.approx((1.0 - p1) * nodir_fd.r1 + (1.0 - p2) * nodir_fd.r2)


def test_delay_limited_bounds(nodir_hd):
    for snr_db in (0.0, 20.0, 60.0):
        value = throughput_delay_limited(nodir_hd, db_to_linear(snr_db)).rate
        assert 0.0 <= value <= nodir_hd.r1 + nodir_hd.r2
    # outage vanishes in HD mode, so the targets are delivered in full
    assert throughput_delay_limited(nodir_hd, db_to_linear(80.0)).rate == pytest.approx(
        nodir_hd.r1 + nodir_hd.r2, rel=1e-3
    )


def test_fd_delay_limited_saturates_below_targets(nodir_fd):
    value = throughput_delay_limited(nodir_fd, db_to_linear(80.0)).rate
    assert value < nodir_fd.r1 + nodir_fd.r2 - 0.1


def test_hd_direct_link_throughput_is_simulated(dir_hd, tiny_mc):
    result = throughput_delay_limited(dir_hd, db_to_linear(10.0), tiny_mc)
    assert result.method is RateMethod.MONTE_CARLO
    assert result.error_bound > 0.0
    assert 0.0 < result.rate <= dir_hd.r1 + dir_hd.r2


def test_delay_tolerant_is_sum_of_rates(nodir_fd):
    rho = db_to_linear(20.0)
    result = throughput_delay_tolerant(nodir_fd, rho)
    expected = rate_d1(nodir_fd, rho).rate + rate_d2_nodir(nodir_fd, rho).rate
    assert result.rate == pytest.approx(expected)
    assert result.method is RateMethod.QUADRATURE


def test_throughput_dispatch(nodir_fd):
    rho = db_to_linear(30.0)
    assert throughput(nodir_fd, rho, "limited") == throughput_delay_limited(nodir_fd, rho)
    assert throughput(nodir_fd, rho, ThroughputMode.TOLERANT) == throughput_delay_tolerant(
        nodir_fd, rho
    )
    asym = throughput(nodir_fd, rho, ThroughputMode.TOLERANT_ASYMPTOTIC)
    assert asym == sum_rate_asym(nodir_fd, rho, "nodir")
    with pytest.raises(ValueError):
        throughput(nodir_fd, rho, "bursty")


def test_fd_leads_tolerant_throughput_at_low_snr(nodir_fd, nodir_hd):
    rho = db_to_linear(0.0)
    assert throughput_delay_tolerant(nodir_fd, rho).rate >= throughput_delay_tolerant(
        nodir_hd, rho
    ).rate


def test_hd_overtakes_fd_under_strong_interference(nodir_fd, nodir_hd):
    rho = db_to_linear(40.0)
    fd = throughput_delay_tolerant(nodir_fd.replace(omega_li=0.1), rho).rate
    hd = throughput_delay_tolerant(nodir_hd.replace(omega_li=0.1), rho).rate
    assert hd > fd


def test_power_budget():
    budget = PowerBudget()
    assert budget.energy == 20.0
    assert PowerBudget(ps=5.0, pr=3.0, t=2.0).energy == 16.0
    for bad in ({"ps": 0.0}, {"pr": -1.0}, {"t": 0.0}):
        with pytest.raises(ValidationError):
            PowerBudget(**bad)


def test_efficiency_factor(nodir_fd, nodir_hd):
    budget = PowerBudget()
    assert efficiency_factor(nodir_fd, budget) == pytest.approx(0.05)
    fd = efficiency_factor(nodir_fd, budget)
    assert efficiency_factor(nodir_hd, budget) == pytest.approx(2.0 * fd)
    # 3.5 bit/s/Hz over 20 J
    assert 3.5 * efficiency_factor(nodir_fd, budget) == pytest.approx(0.175)


def test_energy_efficiency_scales_with_budget(nodir_fd):
    rho = db_to_linear(20.0)
    base = energy_efficiency(nodir_fd, rho)
    assert base == pytest.approx(throughput_delay_limited(nodir_fd, rho).rate / 20.0)
    doubled = PowerBudget(ps=20.0, pr=20.0)
    assert energy_efficiency(nodir_fd, rho, doubled) == pytest.approx(base / 2.0)
    assert energy_efficiency(nodir_fd, rho, PowerBudget(t=0.5)) == pytest.approx(2.0 * base)


def test_limited_efficiency_favours_fd_at_low_snr(dir_fd, dir_hd):
    rho = db_to_linear(0.0)
    mc = McControl(samples=100_000, seed=5, chunk_size=25_000)
    assert energy_efficiency(dir_fd, rho, mc=mc) > energy_efficiency(dir_hd, rho, mc=mc)


def test_tolerant_efficiency_favours_hd_at_high_snr(nodir_fd, nodir_hd):
    rho = db_to_linear(40.0)
    fd = energy_efficiency(nodir_fd, rho, mode=ThroughputMode.TOLERANT)
    hd = energy_efficiency(nodir_hd, rho, mode=ThroughputMode.TOLERANT)
    assert hd > fd

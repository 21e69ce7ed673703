import math

import pytest

from noma_relay.analytic_outage import (
    AsymptoticOutage,
    OutageMethod,
    asymptotic_outage,
    diversity_order_estimate,
    mrc_success_integral,
    mrc_success_series,
    outage_d1,
    outage_d2_dir,
    outage_d2_dir_fd,
    outage_d2_dir_fd_gc,
    outage_d2_dir_fd_quadrature,
    outage_d2_nodir,
    power_moment_integral,
)
from noma_relay.errors import DomainError, SeriesConvergenceError
from noma_relay.special_math import QuadratureControl, SeriesControl, integrate_finite
from noma_relay.system_model import Duplex, db_to_linear, derive_thresholds

GRID_DB = [0.0, 10.0, 20.0, 30.0, 40.0]
TIGHT = QuadratureControl(abs_tol=1e-15, rel_tol=1e-12)


def slope(fn, cfg, low_db=35.0, high_db=40.0):
    points = [(db_to_linear(s), fn(cfg, db_to_linear(s)).probability) for s in (low_db, high_db)]
    return diversity_order_estimate(points)


def test_outage_d1_closed_form(nodir_fd, nodir_hd):
    rho = db_to_linear(20.0)
    th = derive_thresholds(nodir_fd, rho)
    li = nodir_fd.omega1 / (nodir_fd.omega1 + rho * th.theta * nodir_fd.omega_li)
    expected = 1.0 - li * math.exp(-th.theta / nodir_fd.omega1)
    result = outage_d1(nodir_fd, rho)
    assert result.probability == pytest.approx(expected, rel=1e-12)
    assert result.method is OutageMethod.EXACT_CLOSED_FORM

    th = derive_thresholds(nodir_hd, rho)
    assert outage_d1(nodir_hd, rho).probability == pytest.approx(
        -math.expm1(-th.theta / nodir_hd.omega1), rel=1e-12
    )


def test_outage_d2_nodir_hd_closed_form(nodir_hd):
    rho = db_to_linear(10.0)
    th = derive_thresholds(nodir_hd, rho)
    expected = 1.0 - math.exp(-th.tau / nodir_hd.omega1 - th.gamma_th2 / (rho * nodir_hd.omega2))
    assert outage_d2_nodir(nodir_hd, rho).probability == pytest.approx(expected, rel=1e-12)


def test_infeasible_rates_give_certain_outage(nodir_fd):
    cfg = nodir_fd.replace(r2=math.log2(6.0))
    assert outage_d1(cfg, 100.0).probability == 1.0
    assert outage_d2_nodir(cfg, 100.0).probability == 1.0


@pytest.mark.parametrize("fn", [outage_d1, outage_d2_nodir])
def test_fd_beats_hd_at_low_snr_and_loses_at_high_snr(fn, nodir_fd, nodir_hd):
    low, high = db_to_linear(0.0), db_to_linear(40.0)
    assert fn(nodir_fd, low).probability < fn(nodir_hd, low).probability
    assert fn(nodir_fd, high).probability > fn(nodir_hd, high).probability


@pytest.mark.parametrize("fn", [outage_d1, outage_d2_nodir])
def test_hd_outage_nonincreasing_in_snr(fn, nodir_hd):
    values = [fn(nodir_hd, db_to_linear(s)).probability for s in range(0, 45, 5)]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_diversity_orders_without_direct_link(nodir_fd, nodir_hd):
    assert slope(outage_d1, nodir_fd) == pytest.approx(0.0, abs=0.15)
    assert slope(outage_d2_nodir, nodir_fd) == pytest.approx(0.0, abs=0.15)
    assert slope(outage_d1, nodir_hd) == pytest.approx(1.0, abs=0.15)
    assert slope(outage_d2_nodir, nodir_hd) == pytest.approx(1.0, abs=0.15)


def test_direct_link_restores_diversity_one(dir_fd):
    assert slope(outage_d2_dir, dir_fd) == pytest.approx(1.0, abs=0.15)
    assert slope(outage_d2_dir_fd_gc, dir_fd) == pytest.approx(1.0, abs=0.15)


def test_power_moment_integral_matches_quadrature():
    phi1, upper = -0.7, 1.8
    for n in range(6):
        expected = integrate_finite(
            lambda x: x**n * math.exp(phi1 / x), 1.0, upper, TIGHT
        ).value
        assert power_moment_integral(n, phi1, phi1 / upper, upper) == pytest.approx(
            expected, rel=1e-10
        )


@pytest.mark.parametrize("snr_db", [10.0, 20.0, 30.0, 40.0])
def test_series_matches_quadrature_of_theta1(dir_fd, snr_db):
    rho = db_to_linear(snr_db)
    th = derive_thresholds(dir_fd, rho)
    series, used = mrc_success_series(dir_fd, rho, th)
    integral, _ = mrc_success_integral(dir_fd, rho, th, TIGHT)
    assert used >= 1
    assert series == pytest.approx(integral, rel=1e-10)


@pytest.mark.parametrize("snr_db", GRID_DB)
def test_direct_link_outage_series_equals_quadrature(dir_fd, snr_db):
    rho = db_to_linear(snr_db)
    closed = outage_d2_dir(dir_fd, rho)
    numeric = outage_d2_dir_fd_quadrature(dir_fd, rho, TIGHT)
    assert closed.method in (OutageMethod.SERIES_TRUNCATED, OutageMethod.QUADRATURE)
    assert numeric.method is OutageMethod.QUADRATURE
    assert closed.probability == pytest.approx(numeric.probability, rel=1e-8)


def test_series_budget_exhaustion_falls_back(dir_fd):
    rho = db_to_linear(0.0)
    th = derive_thresholds(dir_fd, rho)
    tiny = SeriesControl(max_outer_terms=1)
    with pytest.raises(SeriesConvergenceError) as info:
        mrc_success_series(dir_fd, rho, th, tiny)
    assert info.value.terms_used == 1
    fallback = outage_d2_dir(dir_fd, rho, series=tiny)
    assert fallback.method is OutageMethod.QUADRATURE


def test_direct_link_requires_fd_and_direct_link(dir_hd, nodir_fd):
    with pytest.raises(DomainError):
        outage_d2_dir_fd(dir_hd, 10.0)
    with pytest.raises(DomainError):
        outage_d2_dir_fd(nodir_fd, 10.0)
    with pytest.raises(DomainError):
        outage_d2_dir_fd_gc(dir_hd, 10.0)


def test_direct_link_helps_far_user(dir_fd):
    rho = db_to_linear(30.0)
    assert outage_d2_dir(dir_fd, rho).probability < outage_d2_nodir(dir_fd, rho).probability


@pytest.mark.parametrize("omega0", [1e-5, 1e-6, 1e-8])
def test_vanishing_direct_link_approaches_relay_only_outage(dir_fd, omega0):
    rho = db_to_linear(15.0)
    cfg = dir_fd.replace(omega0=omega0)
    relay_only = outage_d2_nodir(cfg.replace(direct_link=False), rho).probability
    assert outage_d2_dir(cfg, rho).probability == pytest.approx(relay_only, abs=1e-4)

    # Theta1 collapses onto its y = 0 value, P(D2 decodes x2 from the relay alone)
    th = derive_thresholds(cfg, rho)
    theta1, bound = mrc_success_integral(cfg, rho, th)
    assert theta1 == pytest.approx(math.exp(-th.gamma_th2 / (rho * cfg.omega2)), rel=1e-3)
    assert bound < 1e-8


def test_gauss_chebyshev_tracks_exact_at_high_snr(dir_fd):
    rho = db_to_linear(40.0)
    approx = outage_d2_dir_fd_gc(dir_fd, rho)
    assert approx.method is OutageMethod.GAUSS_CHEBYSHEV
    assert approx.terms_used == QuadratureControl().gc_points
    assert approx.probability == pytest.approx(outage_d2_dir(dir_fd, rho).probability, rel=0.05)


@pytest.mark.parametrize(
    "which, exact, duplex",
    [
        (AsymptoticOutage.D1_FD, outage_d1, Duplex.FD),
        (AsymptoticOutage.D1_HD, outage_d1, Duplex.HD),
        (AsymptoticOutage.D2_NODIR_FD, outage_d2_nodir, Duplex.FD),
        (AsymptoticOutage.D2_NODIR_HD, outage_d2_nodir, Duplex.HD),
    ],
)
def test_asymptotic_outage_converges(which, exact, duplex, nodir_fd):
    rho = db_to_linear(45.0)
    cfg = nodir_fd.replace(duplex=duplex)
    asym = asymptotic_outage(nodir_fd, rho, which)
    assert asym.method is OutageMethod.ASYMPTOTIC
    assert asym.probability == pytest.approx(exact(cfg, rho).probability, rel=0.03)


def test_diversity_estimator_validates_input():
    with pytest.raises(DomainError):
        diversity_order_estimate([(1.0, 0.1)])
    with pytest.raises(DomainError):
        diversity_order_estimate([(1.0, 0.1), (10.0, 0.0)])
    with pytest.raises(DomainError):
        diversity_order_estimate([(10.0, 0.1), (1.0, 0.01)])
    assert diversity_order_estimate([(10.0, 1e-2), (100.0, 1e-4)]) == pytest.approx(2.0)

"""Special functions and closed-form limits."""

import math

import numpy as np
import pytest
from scipy import integrate

from calmir import (
    MirrorStack,
    PERFECT_ELECTRIC,
    PERFECT_MAGNETIC,
    Regime,
    ResponseModel,
    UnsupportedConfigurationError,
    VACUUM,
    build_report,
    force_zero_T,
    hamaker_c3,
    ideal_limits,
    matched_media_force,
    nonretarded_R,
    polylog2,
    polylog3,
    thermal_wavelength,
    upper_gamma,
)
from calmir.asymptotics import ZETA3


def brute_li3(z, terms=4_000_000):
    k = np.arange(1, terms + 1, dtype=float)
    return math.fsum(z**k / k**3)


def test_polylog3_reference_points():
    assert polylog3(0.0) == 0.0
    assert polylog3(1.0) == pytest.approx(ZETA3, abs=1e-14)
    assert polylog3(0.5) == pytest.approx(0.5372131936080402, abs=1e-13)
    assert polylog3(-1.0) == pytest.approx(-0.75 * ZETA3, abs=1e-14)


def test_polylog3_against_series():
    for z in (-0.9, -0.7, -0.3, 0.1, 0.3, 0.49, 0.51, 0.7, 0.9):
        assert polylog3(z) == pytest.approx(brute_li3(z, 2000), abs=1e-12)


def test_polylog2_against_series():
    for z in (-0.9, -0.4, 0.2, 0.6, 0.95):
        k = np.arange(1, 3000, dtype=float)
        want = math.fsum(z**k / k**2)
        assert polylog2(z) == pytest.approx(want, abs=1e-12)
    assert polylog2(1.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-14)


def test_polylog3_monotone_and_crude_bound():
    zs = np.linspace(0.0, 0.9, 40)
    vals = polylog3(zs)
    assert np.all(np.diff(vals) > 0.0)
    assert np.all(vals <= zs / (1.0 - zs) + 1e-15)


def test_polylog_domain():
    with pytest.raises(ValueError):
        polylog3(1.5)
    with pytest.raises(ValueError):
        polylog2(-1.01)


def test_nonretarded_amplitude():
    assert nonretarded_R(1.0) == 0.0
    assert nonretarded_R(3.0) == pytest.approx(0.5)
    assert nonretarded_R(math.inf) == 1.0
    with pytest.raises(ValueError):
        nonretarded_R(0.5)


def gamma_quad(k, z):
    val, _ = integrate.quad(
        lambda t: t ** (k - 1) * math.exp(-t), z, np.inf, epsabs=1e-14, epsrel=1e-13
    )
    return val


def test_upper_gamma_reference_points():
    assert upper_gamma(1, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert upper_gamma(0, 1.0) == pytest.approx(0.21938393439552027, rel=1e-12)
    assert upper_gamma(-1, 1.0) == pytest.approx(0.14849550677592205, rel=1e-12)


def test_upper_gamma_against_quadrature():
    for k in (1, 0, -1, -3, -5):
        for z in (0.1, 0.3, 1.0, 2.5, 6.0, 10.0):
            assert upper_gamma(k, z) == pytest.approx(gamma_quad(k, z), rel=1e-10)


def test_upper_gamma_scaled_monotone_in_z():
    z = np.linspace(0.05, 12.0, 120)
    # k = 1: exp(z) Gamma(1, z) is identically 1
    assert np.allclose(upper_gamma(1, z) * np.exp(z), 1.0, rtol=1e-14)
    for k in (0, -1, -3):
        scaled = upper_gamma(k, z) * np.exp(z)
        assert np.all(scaled > 0.0)
        assert np.all(np.diff(scaled) < 0.0)


def test_upper_gamma_domain():
    with pytest.raises(ValueError):
        upper_gamma(2, 1.0)
    with pytest.raises(ValueError):
        upper_gamma(0, 0.0)


def test_hamaker_trivial_and_sign():
    assert hamaker_c3(VACUUM, ResponseModel.drude(1.0), 0.0) == pytest.approx(0.0, abs=1e-18)
    drude = ResponseModel.drude(1.0)
    c3 = hamaker_c3(drude, drude, 0.0)
    assert 1e-3 < c3 < 1.0  # of order the reference energy scale
    assert hamaker_c3(drude, drude, 0.3) > 0.0


def test_hamaker_divergent_for_ideal_pairs():
    with pytest.raises(UnsupportedConfigurationError):
        hamaker_c3(PERFECT_ELECTRIC, PERFECT_ELECTRIC, 0.0)
    with pytest.raises(UnsupportedConfigurationError):
        hamaker_c3(PERFECT_MAGNETIC, PERFECT_MAGNETIC, 0.1)
    # mixed ideal pair: both channel products vanish identically
    assert hamaker_c3(PERFECT_ELECTRIC, PERFECT_MAGNETIC, 0.0) == pytest.approx(0.0, abs=1e-18)


def test_hamaker_against_direct_quadrature():
    # independent evaluation of the frequency integral
    drude = ResponseModel.drude(1.0)

    def f(xi):
        r = 1.0 / (1.0 + 2.0 * xi * xi)
        return float(polylog3(r * r))

    want, _ = integrate.quad(f, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    got = hamaker_c3(drude, drude, 0.0)
    assert got == pytest.approx(want / (8.0 * math.pi**2), rel=1e-9)


def test_hamaker_short_distance_asymptote():
    drude = ResponseModel.drude(1.0)
    st = MirrorStack.homogeneous(drude)
    c3 = hamaker_c3(drude, drude, 0.0)
    d = 2.0 * math.pi / 500.0
    res = force_zero_T(st, st, VACUUM, d)
    assert res.pressure_norm == pytest.approx(c3, rel=0.02)


def test_matched_media_trivial_zeros():
    diel = ResponseModel.lorentz(3.0, 1.0)
    # no magnetic contrast on mirror 2
    assert matched_media_force(diel, ResponseModel.lorentz(0.1, 1.0), 0.05) == 0.0
    # no dielectric contrast between mirror 1 and the (matched) gap
    mag = ResponseModel.lorentz(3.0, 1.0, 0.3, 1.0)
    assert matched_media_force(ResponseModel.lorentz(3.0, 1.0), mag, 0.05) == pytest.approx(
        0.0, abs=1e-18
    )


def test_matched_media_repulsive_and_one_over_d():
    diel = ResponseModel.lorentz(3.0, 1.0)
    mag = ResponseModel.lorentz(0.1, 1.0, 0.3, 1.0)
    f1 = matched_media_force(diel, mag, 1e-3)
    f2 = matched_media_force(diel, mag, 5e-4)
    assert f1 < 0.0 and f2 < 0.0
    assert f2 / f1 == pytest.approx(2.0, rel=0.02)  # F ~ -c1/d
    # c1 of order one in units hbar Omega^3/c^2
    assert 1e-4 < -f1 * 1e-3 < 1.0


def test_matched_media_rejects_magnetic_mirror1():
    mag = ResponseModel.lorentz(1.0, 1.0, 0.5, 1.0)
    with pytest.raises(UnsupportedConfigurationError):
        matched_media_force(mag, mag, 0.1)


def test_ideal_limits_values():
    f_c, f_t = ideal_limits(1.0, 1.0)
    assert f_c == pytest.approx(math.pi**2 / 240.0)
    assert f_t == pytest.approx(ZETA3 / (8.0 * math.pi))
    _, f_t_derived = ideal_limits(1.0, 1.0, derived_thermal=True)
    assert f_t_derived == pytest.approx(2.0 * f_t)
    f_c1, _ = ideal_limits(1.0, 0.0)
    f_c2, _ = ideal_limits(2.0, 0.0)
    assert f_c1 / f_c2 == pytest.approx(16.0)


def test_thermal_wavelength():
    assert thermal_wavelength(1.0) == 1.0
    assert thermal_wavelength(0.1) == pytest.approx(10.0)
    assert thermal_wavelength(0.3) == pytest.approx(10.0 / 3.0)
    with pytest.raises(ValueError):
        thermal_wavelength(0.0)


def test_report_assembly():
    drude = ResponseModel.drude(1.0)
    rep = build_report(0.5, 0.1, mirror1=drude, mirror2=drude, gap=VACUUM)
    assert rep.c3_norm is not None and rep.c3_norm > 0.0
    assert rep.c1_norm is None
    assert rep.lambda_T == pytest.approx(10.0)
    assert rep.regime is Regime.SHORT
    rep = build_report(3.0, 0.1, mirror1=drude, mirror2=drude, gap=VACUUM)
    assert rep.regime is Regime.INTERMEDIATE
    rep = build_report(30.0, 0.1, mirror1=drude, mirror2=drude, gap=VACUUM)
    assert rep.regime is Regime.THERMAL
    rep = build_report(0.5, 0.0, mirror1=PERFECT_ELECTRIC, mirror2=PERFECT_ELECTRIC)
    assert rep.c3_norm is None
    # matched-gap configuration exposes the short-distance 1/d coefficient
    diel = ResponseModel.lorentz(3.0, 1.0)
    mag = ResponseModel.lorentz(0.1, 1.0, 0.3, 1.0)
    rep = build_report(0.03, 0.0, mirror1=diel, mirror2=mag, gap=ResponseModel.lorentz(0.1, 1.0))
    assert rep.c1_norm is not None and rep.c1_norm > 0.0

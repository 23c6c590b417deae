import math
import warnings

import numpy as np
import pytest
from scipy.optimize import brentq, minimize_scalar

from spdc_schmidt import constants as k
from spdc_schmidt.constants import C_LIGHT, LN2
from spdc_schmidt.crystal import CrystalOptics, crystal_preset
from spdc_schmidt.errors import DomainError, RegimeWarning
from spdc_schmidt.model import (
    PumpPulse,
    control_eta,
    exact_wavefunction,
    gamma_fwhm_fit,
    generalized_ladder,
    generalized_modes,
    interpolated_model,
    localization_curves,
    long_pulse_model,
    mode_spectral_width,
    regime_tag,
    schmidt_number_closed_form,
    schmidt_number_minimum,
    schmidt_number_of_tau,
    short_pulse_model,
    short_pulse_rdm,
    short_pulse_rdm_params,
    short_pulse_widths,
    sinc2_half_max,
    sinc_argument,
)
from spdc_schmidt.numerics import build_grid, exact_kernel, exact_wf_extent, numerical_rdm


@pytest.fixture(scope="module")
def c():
    return crystal_preset("LiIO3-0.5cm-400nm")


@pytest.fixture(autouse=True)
def quiet_regime_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        yield


# constants


@pytest.mark.parametrize("name", sorted(k.ROUNDED))
def test_rounded_constants(name):
    exact, quoted = k.ROUNDED[name]
    digits = len(repr(quoted).split(".")[1])
    assert abs(exact - quoted) <= 0.5 * 10.0**-digits * 1.0001, f"{name}: {exact} vs {quoted}"


def test_sinc_half_max_and_fits():
    x = sinc2_half_max()
    assert math.sin(x) ** 2 / x**2 == pytest.approx(0.5, abs=1e-14)
    assert x == pytest.approx(1.392, abs=5e-4)
    assert gamma_fwhm_fit() == pytest.approx(0.249, abs=1e-3)
    assert gamma_fwhm_fit("pump-quartic") == pytest.approx(0.832555, abs=5e-7)
    assert gamma_fwhm_fit("sinc-linear") == pytest.approx(0.0897, abs=1e-4)
    with pytest.raises(DomainError):
        gamma_fwhm_fit("cubic")


def test_gamma_fit_matches_fwhm_directly():
    g = gamma_fwhm_fit()
    u_sinc = brentq(lambda u: math.sin(u * u) ** 2 / u**4 - 0.5, 0.5, 2.0)
    u_gauss = math.sqrt(LN2 / (2 * g))
    assert u_gauss == pytest.approx(u_sinc, rel=1e-12)


# exact wave function


def test_exact_wavefunction_basics(c):
    p = PumpPulse(1e-12)
    assert exact_wavefunction(c, p, 0.0, 0.0) == 1.0
    rng = np.random.default_rng(0)
    x, y = rng.uniform(-1e14, 1e14, (2, 100))
    np.testing.assert_array_equal(exact_wavefunction(c, p, x, y), exact_wavefunction(c, p, y, x))
    with pytest.raises(DomainError):
        exact_wavefunction(c, p, 0.6 * c.omega0, 0.0)
    with pytest.raises(DomainError):
        exact_wavefunction(c, p, np.nan, 0.0)


def test_exact_wavefunction_zero_crossing(c):
    p = PumpPulse(1e-12)
    nu2 = 3e12
    target = lambda n1: float(sinc_argument(c, n1, nu2)) - math.pi  # noqa: E731
    root = brentq(target, -nu2, 1e14, xtol=1.0)
    assert abs(exact_wavefunction(c, p, root, nu2)) < 1e-10


def test_sinc_argument_linear_in_sum(c):
    d = 2e13
    s = np.linspace(-4e13, 5e13, 7)
    arg = sinc_argument(c, (s + d) / 2, (s - d) / 2)
    second = np.diff(arg, 2)
    assert np.max(np.abs(second)) < 1e-12 * np.max(np.abs(arg))
    np.testing.assert_array_equal(sinc_argument(c, (s + d) / 2, (s - d) / 2), sinc_argument(c, (s - d) / 2, (s + d) / 2))


# eta and regimes


def test_control_eta(c):
    p = PumpPulse(c.A * c.L / (2 * C_LIGHT))
    assert control_eta(c, p) == pytest.approx(1.0, rel=1e-15)
    assert control_eta(c, PumpPulse(2 * p.tau)) == pytest.approx(2.0, rel=1e-15)
    assert 0.3 < control_eta(c, PumpPulse(1e-12)) < 3
    assert PumpPulse.from_eta(c, 1.0).tau == pytest.approx(p.tau, rel=1e-15)
    with pytest.raises(DomainError):
        PumpPulse(0.0)


def test_regime_tags_and_warnings(c):
    assert [regime_tag(e) for e in (0.1, 1.0, 5.0)] == ["short", "interpolated", "long"]
    with warnings.catch_warnings():
        warnings.simplefilter("error", RegimeWarning)
        with pytest.raises(RegimeWarning):
            short_pulse_model(c, PumpPulse.from_eta(c, 1.0))
        with pytest.raises(RegimeWarning):
            long_pulse_model(c, PumpPulse.from_eta(c, 1.0))
        short_pulse_model(c, PumpPulse.from_eta(c, 0.1))
        long_pulse_model(c, PumpPulse.from_eta(c, 10.0))


# short pulses


def test_short_pulse_widths(c):
    p1, p4 = PumpPulse.from_eta(c, 0.01), PumpPulse.from_eta(c, 0.04)
    wc1, ws1 = short_pulse_widths(c, p1)
    wc4, ws4 = short_pulse_widths(c, p4)
    assert wc1 == wc4 == pytest.approx(5.56 * C_LIGHT / (c.A * c.L), rel=1e-15)
    assert ws1 / ws4 == pytest.approx(2.0, rel=1e-14)
    pair = short_pulse_model(c, p1)
    assert 2 * pair.a * math.sqrt(LN2) == pytest.approx(wc1, rel=1e-14)
    assert pair.b * math.sqrt(LN2) == pytest.approx(ws1, rel=1e-14)
    assert short_pulse_model(c, p4).a == pair.a


def test_short_pulse_schmidt_number_coefficient(c):
    p = PumpPulse.from_eta(c, 0.05)
    pair = short_pulse_model(c, p)
    closed = k.K_SHORT_COEFF * c.A**1.5 * c.L / math.sqrt(c.B * c.lambda0 * C_LIGHT * p.tau)
    assert pair.b / (2 * pair.a) == pytest.approx(closed, rel=1e-12)


def test_short_pulse_rdm_closed_form(c):
    p = PumpPulse.from_eta(c, 0.05)
    r = short_pulse_rdm_params(c, p)
    pair = short_pulse_model(c, p)
    assert r.schmidt_number == pytest.approx(pair.b / (2 * pair.a), rel=1e-10)
    x = np.linspace(-3 * r.a_tilde, 3 * r.a_tilde, 4001)
    w = np.full(x.size, x[1] - x[0])
    w[[0, -1]] /= 2
    assert np.sum(w * short_pulse_rdm(c, p, x, x)) == pytest.approx(1.0, abs=1e-6)


@pytest.fixture(scope="module")
def short_rdm_pair(c):
    p = PumpPulse.from_eta(c, 0.05)
    grid = build_grid(exact_wf_extent(c, p), 1024)
    rho = numerical_rdm(exact_kernel(c, p), grid)
    nu = grid.nu_values
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        model = short_pulse_rdm(c, p, nu[:, None], nu[None, :])
    return rho, model


def test_short_pulse_rdm_vs_exact_peak(short_rdm_pair):
    rho, model = short_rdm_pair
    assert rho.max() / model.max() == pytest.approx(1.0, abs=0.10)


@pytest.mark.xfail(strict=True, reason="exact marginal is flatter than the Gaussian model: up to ~22% off inside the half-maximum lobe")
def test_short_pulse_rdm_vs_exact_central_lobe(short_rdm_pair):
    rho, model = short_rdm_pair
    lobe = model >= 0.5 * model.max()
    rel = np.abs(rho[lobe] / model[lobe] - 1.0)
    assert rel.max() < 0.10


# long pulses


def test_long_pulse_model(c):
    p = PumpPulse.from_eta(c, 20.0)
    pair = long_pulse_model(c, p)
    assert pair.b / (2 * pair.a) == pytest.approx(
        k.K_LONG_COEFF * C_LIGHT * p.tau / math.sqrt(c.lambda0 * c.L * c.B), rel=1e-12
    )
    assert abs(k.K_LONG_COEFF / k.R_LONG_COEFF - 1) < 1e-3
    assert long_pulse_model(c, PumpPulse(2 * p.tau)).a == pytest.approx(pair.a / 2, rel=1e-15)


def test_r_long_coefficient_from_sinc_fwhm():
    # single-particle FWHM of sinc^2(u^2) over the pump-limited coincidence FWHM 4 ln2 / tau
    assert k.R_LONG_COEFF == pytest.approx(math.sqrt(sinc2_half_max() * math.pi) / (2 * LN2), rel=2e-3)


# interpolated model


def test_interpolated_asymptotics(c):
    # the limits differ from the regime models only by the rounded ratio coefficients
    p = PumpPulse.from_eta(c, 1e-4)
    m, sp = interpolated_model(c, p), short_pulse_model(c, p)
    assert m.a_tau / sp.a == pytest.approx(1.0, rel=1e-6)
    assert m.b_tau / sp.b == pytest.approx(k.B_RATIO_COEFF, rel=1e-6)
    assert abs(k.B_RATIO_COEFF - 1) < 0.0021
    p = PumpPulse.from_eta(c, 1e4)
    m, lp = interpolated_model(c, p), long_pulse_model(c, p)
    assert m.b_tau / lp.b == pytest.approx(1.0, rel=1e-6)
    assert m.a_tau / lp.a == pytest.approx(k.A_RATIO_COEFF, rel=1e-6)
    assert abs(k.A_RATIO_COEFF - 1) < 0.003
    assert abs(interpolated_model(c, PumpPulse.from_eta(c, 0.049)).a_tau / sp.a - 1) < 0.01
    assert abs(interpolated_model(c, PumpPulse.from_eta(c, 20.5)).b_tau / lp.b - 1) < 0.01


def test_interpolated_ordering_and_identities(c):
    for eta in np.geomspace(1e-3, 1e3, 61):
        p = PumpPulse.from_eta(c, eta)
        m = interpolated_model(c, p)
        gm = generalized_modes(c, p)
        assert m.b_tau > m.a_tau
        assert m.K == pytest.approx(schmidt_number_closed_form(c, eta), rel=1e-10)
        assert gm.alpha * math.sqrt(m.a_tau * m.b_tau / 2) == pytest.approx(1.0, rel=1e-10)
        assert gm.omega0_alpha_closed_form == pytest.approx(gm.omega0_alpha, rel=0.02)
        assert -1 < generalized_ladder(m.K, N=2).mu < 0


def test_eta_scaling_invariance(c):
    # doubling tau and A L / c together leaves eta and every smoothing factor unchanged
    c2 = CrystalOptics.from_wavelength(2 * c.L, c.A, c.B, c.lambda0)
    p, p2 = PumpPulse(3e-13), PumpPulse(6e-13)
    m, m2 = interpolated_model(c, p), interpolated_model(c2, p2)
    assert m2.eta == m.eta
    assert m2.a_tau / m.a_tau == pytest.approx(0.5, rel=1e-14)


def test_schmidt_number_minimum(c):
    for s in (k.S_DEFAULT, k.S_EARLIER):
        eta0, kmin = schmidt_number_minimum(c, s)
        res = minimize_scalar(lambda le: schmidt_number_closed_form(c, math.exp(le), s), bounds=(-3, 3), method="bounded",
                              options={"xatol": 1e-10})
        assert math.exp(res.x) == pytest.approx(eta0, rel=1e-4)
        assert res.fun == pytest.approx(kmin, rel=1e-10)
    etas = np.geomspace(0.05, 20, 2001)
    ks = [schmidt_number_closed_form(c, e) for e in etas]
    assert etas[int(np.argmin(ks))] == pytest.approx(2 ** (-1 / 2.21), rel=0.005)


def test_reference_numbers_for_liio3(c):
    _, kmin = schmidt_number_minimum(c)
    assert kmin == pytest.approx(83, abs=2)
    p = PumpPulse.from_eta(c, 1.0)
    assert schmidt_number_of_tau(c, p) == pytest.approx(87, abs=2)
    assert generalized_modes(c, p).omega0_alpha == pytest.approx(585.5, rel=0.01)


def test_omega0_alpha_increasing(c):
    vals = [generalized_modes(c, PumpPulse.from_eta(c, e)).omega0_alpha for e in np.geomspace(0.01, 100, 50)]
    assert np.all(np.diff(vals) > 0)


def test_invalid_s_exp(c):
    with pytest.raises(DomainError):
        interpolated_model(c, PumpPulse(1e-12), 0.0)


# generalized ladder and mode widths


def test_generalized_ladder_values():
    lad = generalized_ladder(87.0)
    assert lad.amplitudes[0] == pytest.approx(0.152, abs=5e-4)
    assert lad.amplitudes[87] == pytest.approx(0.055, abs=1e-3)
    assert lad.amplitudes[87] / lad.amplitudes[0] == pytest.approx(0.37, abs=0.01)
    assert lad.mu == pytest.approx(-1 + 1 / 87, rel=1e-15)
    full = generalized_ladder(87.0, N=20 * 87)
    assert full.eigenvalues.sum() == pytest.approx(1.0, abs=1e-6)
    np.testing.assert_allclose(full.exponential_approx[:50], full.eigenvalues[:50], rtol=0.05)
    assert np.all(np.sign(full.signed_amplitudes[:4]) == [1, -1, 1, -1])


def test_generalized_ladder_errors():
    with pytest.raises(DomainError):
        generalized_ladder(1.0)
    with pytest.warns(RegimeWarning):
        generalized_ladder(1.5)


def test_mode_spectral_widths(c):
    p = PumpPulse.from_eta(c, 1.0)
    m = interpolated_model(c, p)
    assert mode_spectral_width(40, c, p) == pytest.approx(2 * mode_spectral_width(10, c, p), rel=1e-14)
    n_k = m.K
    # delta nu at n = K equals b/2
    assert math.sqrt(n_k * m.a_tau * m.b_tau / 2) == pytest.approx(m.b_tau / 2, rel=1e-12)
    single = m.b_tau * math.sqrt(LN2)
    assert (m.b_tau / 2) / single == pytest.approx(0.6, abs=0.001)
    assert (2 * single**2 / (m.a_tau * m.b_tau)) / m.K == pytest.approx(2.77, rel=0.01)
    with pytest.raises(DomainError):
        mode_spectral_width(0, c, p)


# localization curves


def test_localization_origin_and_taylor(c):
    p = PumpPulse(50e-15)
    cur = localization_curves(c, p, np.array([0.0]))
    assert cur.cm_exact[0] == 0.0 and cur.cm_gauss[0] == 0.0
    nu2 = np.linspace(-1e12, 1e12, 11)
    cur = localization_curves(c, p, nu2)
    taylor = -nu2 + 4 * c.B * nu2**2 / (c.A * c.omega0)
    cubic = 16 * c.B**2 * np.abs(nu2) ** 3 / (c.A**2 * c.omega0**2)
    assert np.all(np.abs(cur.cm_exact - taylor) <= 2 * cubic + 1e-3)
    assert cur.strip_width == pytest.approx(5.56 * C_LIGHT / (c.A * c.L), rel=1e-15)
    assert np.all(cur.valid)


def test_localization_centre_line_zeroes_sinc(c):
    p = PumpPulse(50e-15)
    nu2 = np.linspace(-5e13, 5e13, 21)
    cur = localization_curves(c, p, nu2)
    np.testing.assert_allclose(sinc_argument(c, cur.cm_exact, nu2), 0.0, atol=1e-6)


def test_localization_discriminant(c):
    p = PumpPulse(50e-15)
    bad = np.array([-c.A * c.omega0 / (4 * c.B)])
    with pytest.raises(DomainError):
        localization_curves(c, p, bad)
    cur = localization_curves(c, p, bad, allow_invalid=True)
    assert not cur.valid[0] and np.isnan(cur.cm_exact[0])

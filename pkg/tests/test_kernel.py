import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spdc_schmidt.errors import DomainError
from spdc_schmidt.kernel import (
    GaussianPair,
    ReducedGaussianParams,
    SchmidtParams,
    auto_truncation,
    dg_rdm,
    dg_wavefunction,
    eigenvalue_ladder,
    hermite_phi,
    hermite_phi_table,
    mehler_reconstruct,
    rdm_params_from_wf,
    schmidt_mode,
    schmidt_to_wf,
    wf_params_from_rdm,
    wf_to_schmidt,
)

widths = st.floats(min_value=1e-3, max_value=1e3)
mus = st.floats(min_value=-0.999, max_value=0.999)
alphas = st.floats(min_value=1e-3, max_value=1e3)


def mp_phi(n, x, dps=50):
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        norm = mpmath.sqrt(mpmath.power(2, n) * mpmath.factorial(n) * mpmath.sqrt(mpmath.pi))
        return float(mpmath.hermite(n, x) * mpmath.exp(-x * x / 2) / norm)


def trapz_grid(extent, n):
    x = np.linspace(-extent, extent, n)
    w = np.full(n, x[1] - x[0])
    w[0] = w[-1] = w[0] / 2
    return x, w


# hermite_phi


def test_hermite_ground_state():
    assert hermite_phi(0, 0.0) == pytest.approx(0.7511255444, abs=1e-10)
    assert hermite_phi(1, 0.0) == 0.0


@pytest.mark.parametrize("n,x", [(10, 1.5), (0, -2.0), (3, 0.7), (40, 5.0), (200, 12.0), (1000, 30.0), (5000, 90.0)])
def test_hermite_matches_high_precision(n, x):
    assert hermite_phi(n, x) == pytest.approx(mp_phi(n, x), rel=1e-12)


def test_hermite_deep_tail_no_underflow():
    # far beyond the turning point the rescaled recurrence still gives a finite value
    ref = mp_phi(10000, 141.0)
    assert hermite_phi(10000, 141.0) == pytest.approx(ref, rel=1e-11)


def test_hermite_table_rows_match_scalar():
    x = np.linspace(-6, 6, 13)
    table = hermite_phi_table(12, x)
    for n in range(13):
        np.testing.assert_allclose(table[n], hermite_phi(n, x), rtol=1e-14, atol=1e-300)


@pytest.mark.parametrize("n", [-1, 1.5, 10001])
def test_hermite_rejects_bad_order(n):
    with pytest.raises(DomainError):
        hermite_phi(n, 0.3)


def test_hermite_rejects_non_finite():
    with pytest.raises(DomainError):
        hermite_phi(2, float("nan"))


# parameter maps


def test_wf_to_schmidt_examples():
    s = wf_to_schmidt(GaussianPair(1, 1))
    assert s.mu == 0 and s.alpha == pytest.approx(math.sqrt(2), rel=1e-15)
    s = wf_to_schmidt(GaussianPair(2, 1))
    assert s.mu == pytest.approx(1 / 3, rel=1e-15) and s.alpha == pytest.approx(1.0, rel=1e-15)
    s = wf_to_schmidt(GaussianPair(1, 2))
    assert s.mu == pytest.approx(-1 / 3, rel=1e-15) and s.alpha == pytest.approx(1.0, rel=1e-15)


def test_schmidt_to_wf_examples():
    p = schmidt_to_wf(SchmidtParams(0.0, math.sqrt(2)))
    assert (p.a, p.b) == pytest.approx((1.0, 1.0), rel=1e-15)
    p = schmidt_to_wf(SchmidtParams(1 / 3, 1.0))
    assert (p.a, p.b) == pytest.approx((2.0, 1.0), rel=1e-15)


def test_schmidt_to_wf_rejects_mu_near_one():
    with pytest.raises(DomainError):
        schmidt_to_wf(SchmidtParams(1 - 1e-13, 1.0))


@pytest.mark.parametrize("a,b", [(0, 1), (1, -1), (float("inf"), 1), (1, float("nan"))])
def test_pair_invariants(a, b):
    with pytest.raises(DomainError):
        GaussianPair(a, b)


@pytest.mark.parametrize("mu,alpha", [(1.0, 1.0), (-1.0, 1.0), (0.2, 0.0)])
def test_schmidt_params_invariants(mu, alpha):
    with pytest.raises(DomainError):
        SchmidtParams(mu, alpha)


@settings(max_examples=300, deadline=None)
@given(mus, alphas)
def test_schmidt_round_trip(mu, alpha):
    back = wf_to_schmidt(schmidt_to_wf(SchmidtParams(mu, alpha)))
    assert back.mu == pytest.approx(mu, rel=1e-12, abs=1e-12)
    assert back.alpha == pytest.approx(alpha, rel=1e-12)


def test_rdm_params_examples():
    r = rdm_params_from_wf(GaussianPair(1, 1))
    assert (r.a_tilde, r.b_tilde) == pytest.approx((1.0, 1.0), rel=1e-15)
    r = rdm_params_from_wf(GaussianPair(2, 1))
    assert r.a_tilde == pytest.approx(math.sqrt(2.5), rel=1e-15)
    assert r.b_tilde == pytest.approx(2 * math.sqrt(0.4), rel=1e-15)


def test_wf_params_from_rdm_examples():
    p = wf_params_from_rdm(ReducedGaussianParams(1, 1))
    assert (p.a, p.b) == pytest.approx((1.0, 1.0), rel=1e-12)
    p = wf_params_from_rdm(ReducedGaussianParams(math.sqrt(2.5), 2 * math.sqrt(0.4)))
    assert (p.a, p.b) == pytest.approx((1.0, 2.0), rel=1e-12)


def test_rdm_params_reject_inverted_widths():
    with pytest.raises(DomainError):
        ReducedGaussianParams(1.0, 2.0)


@settings(max_examples=300, deadline=None)
@given(widths, widths)
def test_rdm_identities(a, b):
    p = GaussianPair(a, b)
    r = rdm_params_from_wf(p)
    s = wf_to_schmidt(p)
    assert r.a_tilde * r.b_tilde == pytest.approx(a * b, rel=1e-12)
    assert r.mu_tilde == pytest.approx(s.mu**2, abs=1e-12)
    assert r.alpha_tilde == pytest.approx(s.alpha, rel=1e-12)
    assert r.schmidt_number == pytest.approx(p.schmidt_number, rel=1e-12)
    back = wf_params_from_rdm(r)
    again = rdm_params_from_wf(back)
    assert (again.a_tilde, again.b_tilde) == pytest.approx((r.a_tilde, r.b_tilde), rel=1e-12)
    # the inverse has a square-root branch point at a = b, so widths are only recovered away from it
    if abs(a - b) > 1e-3 * (a + b):
        assert (back.a, back.b) == pytest.approx((min(a, b), max(a, b)), rel=1e-9)


# ladder


def test_ladder_product_state():
    d = eigenvalue_ladder(SchmidtParams(0.0, 1.0))
    assert d.eigenvalues[0] == 1.0 and np.all(d.eigenvalues[1:] == 0) and d.K == 1.0


def test_ladder_exact_values():
    d = eigenvalue_ladder(SchmidtParams(1 / 3, 1.0), N=30)
    assert d.eigenvalues[0] == pytest.approx(8 / 9, rel=1e-15)
    assert d.eigenvalues[1] == pytest.approx(8 / 81, rel=1e-15)
    assert d.K == pytest.approx(1.25, rel=1e-15)


def test_ladder_signed_amplitudes():
    d = eigenvalue_ladder(SchmidtParams(-0.5, 1.0), N=4)
    assert np.all(d.eigenvalues >= 0)
    np.testing.assert_array_equal(np.sign(d.signed_amplitudes), [1, -1, 1, -1])


@pytest.mark.parametrize("mu", [-0.99, -0.7, -0.1, 0.05, 0.5, 0.9, 0.99])
def test_ladder_schmidt_number_and_tail(mu):
    s = SchmidtParams(mu, 1.0)
    N = int(math.ceil(math.log(1e-17) / math.log(mu * mu)))
    d = eigenvalue_ladder(s, N=N)
    assert d.K_from_ladder == pytest.approx((1 + mu**2) / (1 - mu**2), rel=1e-10)
    assert abs(1.0 - d.eigenvalues.sum() - d.tail) < 1e-13
    ratios = d.eigenvalues[1:] / d.eigenvalues[:-1]
    np.testing.assert_allclose(ratios[ratios > 0], mu * mu, rtol=1e-12)


def test_auto_truncation():
    assert auto_truncation(0.25, 1e-12) == math.ceil(math.log(1e-12) / math.log(0.25))
    assert auto_truncation(0.0) == 1
    assert auto_truncation(1 - 1e-12) == 100_000


# evaluators


@settings(max_examples=100, deadline=None)
@given(widths, widths, st.floats(-10, 10), st.floats(-10, 10))
def test_wavefunction_symmetry(a, b, x, y):
    p = GaussianPair(a, b)
    assert dg_wavefunction(p, x, y) == dg_wavefunction(p, y, x)


def test_wavefunction_peak_and_scaling():
    p = GaussianPair(0.3, 2.0)
    assert dg_wavefunction(p, 0.0, 0.0) == pytest.approx(math.sqrt(2 / (math.pi * 0.6)), rel=1e-15)
    q = GaussianPair(3.0, 20.0)
    # scaling widths and arguments by 10 only changes the normalization by 1/10
    assert dg_wavefunction(q, 7.0, -4.0) * 10 == pytest.approx(dg_wavefunction(p, 0.7, -0.4), rel=1e-14)


def test_wavefunction_unit_norm():
    p = GaussianPair(0.4, 1.7)
    x, w = trapz_grid(8.0, 801)
    psi = dg_wavefunction(p, x[:, None], x[None, :])
    assert w @ psi**2 @ w == pytest.approx(1.0, abs=1e-8)


def test_rdm_trace_symmetry_and_partial_trace():
    p = GaussianPair(0.5, 2.5)
    r = rdm_params_from_wf(p)
    x, w = trapz_grid(12.0, 1201)
    rho = dg_rdm(r, x[:, None], x[None, :])
    np.testing.assert_array_equal(rho, rho.T)
    assert np.sum(w * np.diag(rho)) == pytest.approx(1.0, abs=1e-8)
    psi = dg_wavefunction(p, x[:, None], x[None, :])
    partial = (psi * w) @ psi.T
    sub = slice(300, 901, 20)
    np.testing.assert_allclose(partial[sub, sub], rho[sub, sub], atol=1e-8)


def test_modes_orthonormal_and_parity():
    alpha = 1.7
    x, w = trapz_grid(12.0, 2001)
    modes = np.array([schmidt_mode(n, alpha, x) for n in range(10)])
    gram = (modes * w) @ modes.T
    np.testing.assert_allclose(gram, np.eye(10), atol=1e-6)
    assert schmidt_mode(0, alpha, 0.0) == pytest.approx(math.sqrt(alpha) * math.pi**-0.25, rel=1e-15)
    for n in range(6):
        np.testing.assert_allclose(schmidt_mode(n, alpha, -x), (-1) ** n * schmidt_mode(n, alpha, x), atol=1e-15)


def test_mehler_single_term_separable():
    s = SchmidtParams(0.0, 1.4)
    p = schmidt_to_wf(s)
    x = np.linspace(-2, 2, 9)
    value, tail = mehler_reconstruct(s, x[:, None], x[None, :], N=1)
    np.testing.assert_allclose(value, dg_wavefunction(p, x[:, None], x[None, :]), rtol=1e-14)
    assert tail == 0.0


@pytest.mark.parametrize("mu,N,tol", [(0.5, 60, 1e-8), (-0.9, 400, 1e-6)])
def test_mehler_random_points(mu, N, tol):
    s = SchmidtParams(mu, 0.8)
    p = schmidt_to_wf(s)
    rng = np.random.default_rng(3)
    x1, x2 = rng.uniform(-3 / s.alpha, 3 / s.alpha, (2, 200))
    value, bound = mehler_reconstruct(s, x1, x2, N=N)
    direct = dg_wavefunction(p, x1, x2)
    # relative to the peak amplitude; pointwise ratios are meaningless where Psi underflows
    assert np.max(np.abs(value - direct)) / dg_wavefunction(p, 0.0, 0.0) < tol
    assert np.max(np.abs(value - direct)) <= bound + 1e-14


def test_mehler_auto_truncation_warns_when_capped():
    s = SchmidtParams(0.9999, 1.0)
    with pytest.warns(RuntimeWarning):
        mehler_reconstruct(s, 0.0, 0.0)

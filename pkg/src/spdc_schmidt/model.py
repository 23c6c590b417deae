"""Spectral biphoton amplitude of pulsed, degenerate, collinear type-I SPDC.

The exact amplitude is a Gaussian pump envelope in ``nu1 + nu2`` times a sinc
whose argument is linear in ``nu1 + nu2`` and quadratic in ``nu1 - nu2``.  The
control parameter ``eta = 2 c tau / (A L)`` separates short (``eta << 1``)
and long (``eta >> 1``) pump pulses.  In both limits the amplitude is
replaced by a double Gaussian with widths ``(a, b)``; between them the widths
are bridged by the smoothing functions ``f_a = (1 + eta^s)^(-1/s)`` and
``f_b = (1 + eta^s)^(1/(2s)) / sqrt(eta)``.

Frequencies are detunings from ``omega0 / 2`` in rad/s.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from . import constants as k
from .constants import C_LIGHT, LN2
from .crystal import CrystalOptics
from .errors import DomainError, RegimeWarning
from .kernel import GaussianPair, ReducedGaussianParams, auto_truncation, schmidt_mode

SHORT_PULSE_MAX_ETA = 0.3
LONG_PULSE_MIN_ETA = 3.0


@dataclass(frozen=True)
class PumpPulse:
    """Pump intensity FWHM duration ``tau`` (s)."""

    tau: float

    def __post_init__(self) -> None:
        tau = float(self.tau)
        if not math.isfinite(tau) or tau <= 0.0:
            raise DomainError(f"tau must be finite and > 0, got {tau!r}")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_eta(cls, c: CrystalOptics, eta: float) -> PumpPulse:
        eta = float(eta)
        if not math.isfinite(eta) or eta <= 0.0:
            raise DomainError(f"eta must be finite and > 0, got {eta!r}")
        return cls(eta * c.A * c.L / (2.0 * C_LIGHT))


@dataclass(frozen=True)
class RegimeParams:
    """Interpolated widths a(tau) < b(tau) with the control parameter and exponent."""

    a_tau: float
    b_tau: float
    eta: float
    s_exp: float
    regime: str

    def __post_init__(self) -> None:
        if not self.b_tau > self.a_tau > 0:
            raise DomainError(
                f"double-Gaussian model requires b(tau) > a(tau) > 0, got a={self.a_tau!r}, b={self.b_tau!r}"
            )
        if not (self.eta > 0 and self.s_exp > 0):
            raise DomainError("eta and s_exp must be > 0")
        if self.regime not in ("short", "long", "interpolated"):
            raise DomainError(f"unknown regime tag {self.regime!r}")

    @property
    def pair(self) -> GaussianPair:
        return GaussianPair(self.a_tau, self.b_tau)

    @property
    def K(self) -> float:
        return self.b_tau / (2.0 * self.a_tau)


def regime_tag(eta: float) -> str:
    if eta <= SHORT_PULSE_MAX_ETA:
        return "short"
    if eta >= LONG_PULSE_MIN_ETA:
        return "long"
    return "interpolated"


def _warn_short(eta: float, what: str) -> None:
    if eta > SHORT_PULSE_MAX_ETA:
        warnings.warn(f"{what}: eta = {eta:.3g} > {SHORT_PULSE_MAX_ETA}, short-pulse formula", RegimeWarning, stacklevel=3)


def _warn_long(eta: float, what: str) -> None:
    if eta < LONG_PULSE_MIN_ETA:
        warnings.warn(f"{what}: eta = {eta:.3g} < {LONG_PULSE_MIN_ETA}, long-pulse formula", RegimeWarning, stacklevel=3)


def _check_s(s_exp: float) -> float:
    s_exp = float(s_exp)
    if not math.isfinite(s_exp) or s_exp <= 0:
        raise DomainError(f"interpolation exponent s must be > 0, got {s_exp!r}")
    return s_exp


def sinc(x):
    """sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x, dtype=float) / math.pi)


def sinc_argument(c: CrystalOptics, nu1, nu2):
    """(L / 2c) [A (nu1 + nu2) - B (nu1 - nu2)^2 / omega0]."""
    nu1 = np.asarray(nu1, dtype=float)
    nu2 = np.asarray(nu2, dtype=float)
    return c.L / (2.0 * C_LIGHT) * (c.A * (nu1 + nu2) - c.B * (nu1 - nu2) ** 2 / c.omega0)


def exact_wavefunction(c: CrystalOptics, p: PumpPulse, nu1, nu2):
    """Unnormalized exact amplitude: Gaussian pump envelope times the phase-matching sinc."""
    nu1 = np.asarray(nu1, dtype=float)
    nu2 = np.asarray(nu2, dtype=float)
    limit = 0.5 * c.omega0
    if np.any(~np.isfinite(nu1)) or np.any(~np.isfinite(nu2)):
        raise DomainError("detunings must be finite")
    if np.any(np.abs(nu1) >= limit) or np.any(np.abs(nu2) >= limit):
        raise DomainError("detunings must satisfy |nu| < omega0 / 2")
    pump = np.exp(-((nu1 + nu2) ** 2) * p.tau**2 / (8.0 * LN2))
    return pump * sinc(sinc_argument(c, nu1, nu2))


def control_eta(c: CrystalOptics, p: PumpPulse) -> float:
    """eta = 2 c tau / (A L)."""
    return 2.0 * C_LIGHT * p.tau / (c.A * c.L)


def short_pulse_widths(c: CrystalOptics, p: PumpPulse) -> tuple[float, float]:
    """Coincidence and single-particle FWHMs (rad/s) for short pulses."""
    _warn_short(control_eta(c, p), "short_pulse_widths")
    coincidence = k.COINCIDENCE_FWHM_COEFF * C_LIGHT / (c.A * c.L)
    single = math.sqrt(2.0 * c.A * LN2 * c.omega0 / (c.B * p.tau))
    return coincidence, single


def _a_long(p: PumpPulse) -> float:
    return 2.0 * math.sqrt(LN2) / p.tau


def _b_long(c: CrystalOptics) -> float:
    return C_LIGHT * math.sqrt(2.0 * math.pi / (k.GAMMA_LONG * c.B * c.L * c.lambda0))


def _a_short(c: CrystalOptics) -> float:
    return k.A_SHORT_COEFF * C_LIGHT / (c.A * c.L)


def _b_short(c: CrystalOptics, p: PumpPulse) -> float:
    return math.sqrt(2.0 * c.A * c.omega0 / (p.tau * c.B))


def long_pulse_model(c: CrystalOptics, p: PumpPulse) -> GaussianPair:
    """Double-Gaussian widths for eta >> 1: a = 2 sqrt(ln 2)/tau, b = c sqrt(2 pi / (0.249 B L lambda0))."""
    _warn_long(control_eta(c, p), "long_pulse_model")
    return GaussianPair(_a_long(p), _b_long(c))


def sinc2_half_max() -> float:
    """Abscissa x > 0 where sinc^2(x) = 1/2, by bisection."""
    return bisect(lambda x: math.sin(x) / x - math.sqrt(0.5), 0.5, 2.0, xtol=1e-15, rtol=1e-15)


def gamma_fwhm_fit(kind: str = "sinc-of-square") -> float:
    """Gaussian fit factor replacing a sinc.

    ``"sinc-of-square"``: gamma such that ``exp(-2 gamma u^2)`` and
    ``sinc^2(u^2)`` share their FWHM (the long-pulse substitution).
    ``"sinc-linear"``: the difference-coordinate factor gamma_2 fixed by the
    coincidence-width coefficient 5.56 (``ln 2 / 2.78^2``).
    ``"pump-quartic"``: gamma_1 = sqrt(ln 2).
    """
    if kind == "sinc-of-square":
        # sinc^2(u^2) = 1/2 at u^2 = x_half; exp(-2 gamma u^2) = 1/2 at u^2 = ln2 / (2 gamma)
        return LN2 / (2.0 * sinc2_half_max())
    if kind == "sinc-linear":
        return k.GAMMA_2
    if kind == "pump-quartic":
        return k.GAMMA_1
    raise DomainError(f"unknown fit kind {kind!r}")


def short_pulse_model(c: CrystalOptics, p: PumpPulse) -> GaussianPair:
    """Double-Gaussian widths for eta << 1: a = 3.339 c/(A L), b = sqrt(2 A omega0 / (tau B))."""
    _warn_short(control_eta(c, p), "short_pulse_model")
    return GaussianPair(_a_short(c), _b_short(c, p))


def short_pulse_rdm_params(c: CrystalOptics, p: PumpPulse) -> ReducedGaussianParams:
    """(a~, b~) of the Gaussian-modelled short-pulse reduced density matrix."""
    _warn_short(control_eta(c, p), "short_pulse_rdm_params")
    a_t = LN2**0.25 * math.sqrt(c.A * c.omega0 / (k.GAMMA_1 * p.tau * c.B))
    b_t = C_LIGHT / (c.A * c.L) * math.sqrt(2.0 / k.GAMMA_2)
    return ReducedGaussianParams(a_t, b_t)


def short_pulse_rdm(c: CrystalOptics, p: PumpPulse, nu1, nu1p):
    """Closed-form short-pulse reduced density matrix (unit trace)."""
    _warn_short(control_eta(c, p), "short_pulse_rdm")
    nu1 = np.asarray(nu1, dtype=float)
    nu1p = np.asarray(nu1p, dtype=float)
    pref = math.sqrt(2.0 * c.B * p.tau / (math.pi * c.A * c.omega0))
    s_term = c.B * p.tau * (nu1 + nu1p) ** 2 / (2.0 * c.A * c.omega0)
    d_term = (c.A * c.L) ** 2 * LN2 * (nu1 - nu1p) ** 2 / (k.COINCIDENCE_FWHM_COEFF * C_LIGHT) ** 2
    return pref * np.exp(-s_term - d_term)


def interpolated_model(c: CrystalOptics, p: PumpPulse, s_exp: float = k.S_DEFAULT) -> RegimeParams:
    """Widths a(tau), b(tau) valid for all pulse durations."""
    s_exp = _check_s(s_exp)
    eta = control_eta(c, p)
    g = 1.0 + eta**s_exp
    a_tau = _a_short(c) * g ** (-1.0 / s_exp)
    b_tau = _b_long(c) * g ** (1.0 / (2.0 * s_exp)) / math.sqrt(eta)
    return RegimeParams(a_tau, b_tau, eta, s_exp, regime_tag(eta))


def schmidt_number_of_tau(c: CrystalOptics, p: PumpPulse, s_exp: float = k.S_DEFAULT) -> float:
    """K(tau) = b(tau) / (2 a(tau))."""
    return interpolated_model(c, p, s_exp).K


def schmidt_number_closed_form(c: CrystalOptics, eta: float, s_exp: float = k.S_DEFAULT) -> float:
    """K(eta) written through the material prefactor A sqrt(L / (B lambda0))."""
    s_exp = _check_s(s_exp)
    pref = k.K_TAU_COEFF * c.A * math.sqrt(c.L / (c.B * c.lambda0))
    return pref * (1.0 + eta**s_exp) ** (3.0 / (2.0 * s_exp)) / math.sqrt(eta)


def schmidt_number_minimum(c: CrystalOptics, s_exp: float = k.S_DEFAULT) -> tuple[float, float]:
    """Location eta0 = 2^(-1/s) and value of the minimum of K(eta)."""
    s_exp = _check_s(s_exp)
    eta0 = 2.0 ** (-1.0 / s_exp)
    pref = k.K_TAU_COEFF * c.A * math.sqrt(c.L / (c.B * c.lambda0))
    return eta0, pref * 3.0 ** (3.0 / (2.0 * s_exp)) / 2.0 ** (1.0 / s_exp)


@dataclass(frozen=True)
class GeneralizedLadder:
    K: float
    mu: float
    eigenvalues: np.ndarray = field(repr=False)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.sqrt(self.eigenvalues)

    @property
    def signed_amplitudes(self) -> np.ndarray:
        n = np.arange(len(self.eigenvalues))
        return np.where(n % 2 == 1, -1.0, 1.0) * self.amplitudes

    @property
    def exponential_approx(self) -> np.ndarray:
        n = np.arange(len(self.eigenvalues))
        return (2.0 / self.K) * np.exp(-2.0 * n / self.K)


def generalized_ladder(K: float, N: int | None = None, tol: float = 1e-12) -> GeneralizedLadder:
    """lambda_n = (2/K)(1 - 2/K)^n with mu = -1 + 1/K."""
    K = float(K)
    if not math.isfinite(K) or K <= 1.0:
        raise DomainError(f"generalized ladder requires K > 1, got {K!r}")
    ratio = 1.0 - 2.0 / K
    if ratio < 0:
        warnings.warn(f"K = {K:.3g} < 2: ladder ratio is negative", RegimeWarning, stacklevel=2)
    if N is None:
        N = auto_truncation(ratio, tol)
    N = int(N)
    if N < 1:
        raise DomainError(f"truncation N must be >= 1, got {N}")
    with np.errstate(under="ignore"):
        lam = (2.0 / K) * np.power(ratio, np.arange(N))
    lam.setflags(write=False)
    return GeneralizedLadder(K, -1.0 + 1.0 / K, lam)


@dataclass(frozen=True)
class GeneralizedModes:
    """Mode scaling of the interpolated model; ``omega0_alpha`` is dimensionless."""

    alpha: float
    omega0_alpha: float
    omega0_alpha_closed_form: float
    model: RegimeParams

    def mode(self, n: int, nu):
        return schmidt_mode(n, self.alpha, nu)


def generalized_modes(c: CrystalOptics, p: PumpPulse, s_exp: float = k.S_DEFAULT) -> GeneralizedModes:
    model = interpolated_model(c, p, s_exp)
    alpha = math.sqrt(2.0 / (model.a_tau * model.b_tau))
    eta = model.eta
    closed = (
        k.ALPHA_TAU_COEFF
        * math.sqrt(c.A)
        * c.B**0.25
        * (c.L / c.lambda0) ** 0.75
        * eta**0.25
        * (1.0 + eta**model.s_exp) ** (1.0 / (4.0 * model.s_exp))
    )
    return GeneralizedModes(alpha, alpha * c.omega0, closed, model)


def mode_spectral_width(n: int, c: CrystalOptics, p: PumpPulse, s_exp: float = k.S_DEFAULT) -> float:
    """delta nu_n = sqrt(n a(tau) b(tau) / 2) = sqrt(n) / alpha(tau)."""
    if n < 1:
        raise DomainError(f"mode index must be >= 1, got {n}")
    model = interpolated_model(c, p, s_exp)
    return math.sqrt(n * model.a_tau * model.b_tau / 2.0)


def short_pulse_alpha(c: CrystalOptics, p: PumpPulse) -> float:
    """alpha_short = 1 / (a_short sqrt(K_short))."""
    pair = short_pulse_model(c, p)
    return 1.0 / (pair.a * math.sqrt(pair.b / (2.0 * pair.a)))


def long_pulse_alpha(c: CrystalOptics, p: PumpPulse) -> float:
    """alpha_long = 1 / (a_long sqrt(K_long))."""
    pair = long_pulse_model(c, p)
    return 1.0 / (pair.a * math.sqrt(pair.b / (2.0 * pair.a)))


@dataclass(frozen=True)
class LocalizationCurves:
    """Centre and boundary lines of the localization regions in the (nu1, nu2) map."""

    nu2: np.ndarray
    cm_exact: np.ndarray
    cm_gauss: np.ndarray
    dashed_exact: np.ndarray
    dashed_gauss_plus: np.ndarray
    dashed_gauss_minus: np.ndarray
    strip_width: float
    valid: np.ndarray


def localization_curves(c: CrystalOptics, p: PumpPulse, nu2, allow_invalid: bool = False) -> LocalizationCurves:
    """Localization lines of the exact and short-pulse model amplitudes.

    The exact centre line is the zero of the sinc argument on the branch through
    the origin, ``nu1 = nu2 + (omega0/2B)(A - sqrt(A^2 + 8 B A nu2 / omega0))``.
    Where the discriminant is negative the exact branch does not exist; this
    raises unless ``allow_invalid`` is set, in which case those entries are NaN
    and flagged in ``valid``.
    """
    nu2 = np.atleast_1d(np.asarray(nu2, dtype=float))
    disc = c.A**2 + 8.0 * c.B * c.A * nu2 / c.omega0
    valid = disc >= 0
    if not allow_invalid and not np.all(valid):
        raise DomainError("negative discriminant: nu2 below -A omega0 / (8B), exact centre line undefined")
    root = np.sqrt(np.where(valid, disc, np.nan))
    cm_exact = nu2 + c.omega0 / (2.0 * c.B) * (c.A - root)
    half = LN2**0.25 * math.sqrt(c.A * c.omega0 / (k.WF_SHORT_DIFF_COEFF * c.B * p.tau))
    return LocalizationCurves(
        nu2=nu2,
        cm_exact=cm_exact,
        cm_gauss=-nu2,
        dashed_exact=-nu2 + 2.0 * LN2 / p.tau,
        dashed_gauss_plus=nu2 + half,
        dashed_gauss_minus=nu2 - half,
        strip_width=k.COINCIDENCE_FWHM_COEFF * C_LIGHT / (c.A * c.L),
        valid=valid,
    )

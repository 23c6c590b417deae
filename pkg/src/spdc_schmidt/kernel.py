"""Closed-form algebra of symmetric double-Gaussian bipartite kernels.

A symmetric double-Gaussian amplitude

    Psi(x1, x2) = sqrt(2 / (pi a b)) exp(-(x1 + x2)^2 / (2 a^2)) exp(-(x1 - x2)^2 / (2 b^2))

has Hermite-Gauss Schmidt modes ``psi_n(x) = sqrt(alpha) phi_n(alpha x)`` with
geometric weights ``lambda_n = (1 - mu^2) mu^(2n)``.  This module holds the
parameter maps between the width pair ``(a, b)``, the Schmidt pair
``(mu, alpha)`` and the widths ``(a~, b~)`` of the reduced density matrix,
together with evaluators for the amplitude, the reduced density matrix, the
modes and the Mehler series that reassembles the amplitude from its modes.

All functions are unit-agnostic: widths and arguments only need to share a
unit (rad/s throughout the rest of the package).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MAX_HERMITE_ORDER = 10_000
MAX_LADDER_TERMS = 100_000
MU_LIMIT = 1.0 - 1e-12

_PI_M14 = math.pi**-0.25
# |phi_n(x)| <= 1.0865 pi^{-1/4} for every n and real x (Cramer's inequality with the usual constant).
_PHI_BOUND = 1.0865 * _PI_M14
_RESCALE_AT = 1e150


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class GaussianPair:
    """Sum-coordinate width ``a`` and difference-coordinate width ``b``."""

    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _check_positive("a", self.a))
        object.__setattr__(self, "b", _check_positive("b", self.b))

    @property
    def schmidt_number(self) -> float:
        """K = (a^2 + b^2) / (2ab)."""
        return (self.a**2 + self.b**2) / (2.0 * self.a * self.b)


@dataclass(frozen=True)
class SchmidtParams:
    """Correlation parameter ``mu`` in (-1, 1) and mode scaling ``alpha`` > 0."""

    mu: float
    alpha: float

    def __post_init__(self) -> None:
        mu = float(self.mu)
        if not math.isfinite(mu) or not -1.0 < mu < 1.0:
            raise DomainError(f"mu must lie in (-1, 1), got {mu!r}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", _check_positive("alpha", self.alpha))


@dataclass(frozen=True)
class ReducedGaussianParams:
    """Widths of a double-Gaussian reduced density matrix, ``a_tilde >= b_tilde > 0``."""

    a_tilde: float
    b_tilde: float

    def __post_init__(self) -> None:
        at = _check_positive("a_tilde", self.a_tilde)
        bt = _check_positive("b_tilde", self.b_tilde)
        if at < bt * (1.0 - 1e-12):
            raise DomainError(
                f"a_tilde ({at!r}) < b_tilde ({bt!r}): not a reduced density matrix of a pure state"
            )
        object.__setattr__(self, "a_tilde", max(at, bt))
        object.__setattr__(self, "b_tilde", bt)

    @property
    def mu_tilde(self) -> float:
        return (self.a_tilde - self.b_tilde) / (self.a_tilde + self.b_tilde)

    @property
    def alpha_tilde(self) -> float:
        return math.sqrt(2.0 / (self.a_tilde * self.b_tilde))

    @property
    def schmidt_number(self) -> float:
        return self.a_tilde / self.b_tilde


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Truncated analytic Schmidt decomposition of a double-Gaussian kernel.

    ``eigenvalues`` are the non-negative weights lambda_0 .. lambda_{N-1};
    ``tail`` is the exact mass ``mu^(2N)`` of the discarded terms.
    """

    K: float
    mu: float
    alpha: float
    eigenvalues: np.ndarray = field(repr=False)
    n_modes: int
    tail: float

    @property
    def signed_amplitudes(self) -> np.ndarray:
        """sqrt(lambda_n) with the sign of mu^n, i.e. (-1)^n for mu < 0."""
        n = np.arange(self.n_modes)
        sign = np.where((self.mu < 0) & (n % 2 == 1), -1.0, 1.0)
        return sign * np.sqrt(self.eigenvalues)

    @property
    def K_from_ladder(self) -> float:
        return 1.0 / float(np.sum(self.eigenvalues**2))

    def mode(self, n: int, nu):
        return schmidt_mode(n, self.alpha, nu)


def hermite_phi(n: int, x):
    """Normalized Hermite function phi_n(x) = (2^n n! sqrt(pi))^{-1/2} e^{-x^2/2} H_n(x).

    Uses the three-term recurrence on the normalized functions with a running
    logarithmic rescale, so neither factorials nor the underflowing Gaussian
    envelope limit the accessible range of ``n`` and ``x``.
    """
    return hermite_phi_table(n, x)[-1]


def hermite_phi_table(n_max: int, x) -> np.ndarray:
    """Return phi_0 .. phi_{n_max} evaluated at ``x``; shape ``(n_max + 1,) + x.shape``."""
    if isinstance(n_max, bool) or int(n_max) != n_max:
        raise DomainError(f"mode index must be an integer, got {n_max!r}")
    n_max = int(n_max)
    if n_max < 0:
        raise DomainError(f"mode index must be >= 0, got {n_max}")
    if n_max > MAX_HERMITE_ORDER:
        raise DomainError(f"mode index {n_max} exceeds the supported maximum {MAX_HERMITE_ORDER}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("hermite_phi requires finite arguments")

    out = np.empty((n_max + 1,) + x.shape)
    # Work with p_k = phi_k * exp(x^2/2 - logscale) and carry logscale separately.
    log_scale = -0.5 * x * x
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_M14)
    out[0] = cur * np.exp(log_scale)
    for k in range(n_max):
        nxt = x * math.sqrt(2.0 / (k + 1)) * cur - math.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_AT
        if np.any(big):
            factor = np.where(big, _RESCALE_AT, 1.0)
            cur = cur / factor
            prev = prev / factor
            log_scale = log_scale + np.log(factor)
        out[k + 1] = cur * np.exp(log_scale)
    return out


def wf_to_schmidt(p: GaussianPair) -> SchmidtParams:
    """(a, b) -> (mu, alpha) with mu = (a - b)/(a + b), alpha = sqrt(2/(ab))."""
    return SchmidtParams((p.a - p.b) / (p.a + p.b), math.sqrt(2.0 / (p.a * p.b)))


def schmidt_to_wf(s: SchmidtParams) -> GaussianPair:
    """Inverse of :func:`wf_to_schmidt`."""
    if abs(s.mu) >= MU_LIMIT:
        raise DomainError(f"|mu| = {abs(s.mu)!r} too close to 1: widths diverge")
    r = math.sqrt((1.0 + s.mu) / (1.0 - s.mu))
    scale = math.sqrt(2.0) / s.alpha
    return GaussianPair(scale * r, scale / r)


def rdm_params_from_wf(p: GaussianPair) -> ReducedGaussianParams:
    """Widths of the reduced density matrix of a double-Gaussian amplitude."""
    ssq = p.a**2 + p.b**2
    return ReducedGaussianParams(math.sqrt(ssq / 2.0), p.a * p.b * math.sqrt(2.0 / ssq))


def wf_params_from_rdm(r: ReducedGaussianParams) -> GaussianPair:
    """Amplitude widths reproducing a reduced density matrix; returns the a <= b branch."""
    at, bt = r.a_tilde, r.b_tilde
    pref = math.sqrt(at / 2.0)
    plus = math.sqrt(at + bt)
    minus = math.sqrt(max(at - bt, 0.0))
    return GaussianPair(pref * (plus - minus), pref * (plus + minus))


def auto_truncation(ratio: float, tol: float = 1e-12, cap: int = MAX_LADDER_TERMS) -> int:
    """Smallest N with ratio^N <= tol for a geometric series of common ratio ``ratio``."""
    ratio = abs(float(ratio))
    if ratio == 0.0:
        return 1
    if not 0.0 < tol < 1.0:
        raise DomainError(f"tol must lie in (0, 1), got {tol!r}")
    n = math.ceil(math.log(tol) / math.log(ratio))
    return int(min(max(n, 1), cap))


def eigenvalue_ladder(s: SchmidtParams, N: int | None = None, tol: float = 1e-12) -> SchmidtDecomposition:
    """lambda_n = (1 - mu^2) mu^(2n) for n < N; N defaults to the geometric-tail rule."""
    mu2 = s.mu * s.mu
    if N is None:
        N = auto_truncation(mu2, tol)
    N = int(N)
    if N < 1:
        raise DomainError(f"truncation N must be >= 1, got {N}")
    n = np.arange(N)
    with np.errstate(under="ignore"):
        lam = (1.0 - mu2) * np.power(mu2, n)
    lam.setflags(write=False)
    K = (1.0 + mu2) / (1.0 - mu2)
    return SchmidtDecomposition(K=K, mu=s.mu, alpha=s.alpha, eigenvalues=lam, n_modes=N, tail=mu2**N)


def dg_wavefunction(p: GaussianPair, nu1, nu2):
    """Normalized double-Gaussian amplitude Psi(nu1, nu2)."""
    nu1 = np.asarray(nu1, dtype=float)
    nu2 = np.asarray(nu2, dtype=float)
    norm = math.sqrt(2.0 / (math.pi * p.a * p.b))
    return norm * np.exp(-((nu1 + nu2) ** 2) / (2.0 * p.a**2) - (nu1 - nu2) ** 2 / (2.0 * p.b**2))


def dg_rdm(r: ReducedGaussianParams, nu1, nu1p):
    """Double-Gaussian reduced density matrix rho_r(nu1, nu1'), unit trace."""
    nu1 = np.asarray(nu1, dtype=float)
    nu1p = np.asarray(nu1p, dtype=float)
    norm = math.sqrt(2.0 / math.pi) / r.a_tilde
    return norm * np.exp(
        -((nu1 + nu1p) ** 2) / (2.0 * r.a_tilde**2) - (nu1 - nu1p) ** 2 / (2.0 * r.b_tilde**2)
    )


def schmidt_mode(n: int, alpha: float, nu):
    """psi_n(nu) = sqrt(alpha) phi_n(alpha nu), orthonormal on the real line."""
    alpha = _check_positive("alpha", alpha)
    return math.sqrt(alpha) * hermite_phi(n, alpha * np.asarray(nu, dtype=float))


def mehler_tail_bound(s: SchmidtParams, N: int) -> float:
    """Upper bound on |Psi - Psi_N| for the series truncated after N terms."""
    m = abs(s.mu)
    if m == 0.0:
        return 0.0
    return s.alpha * math.sqrt(1.0 - s.mu**2) * _PHI_BOUND**2 * m**N / (1.0 - m)


def mehler_reconstruct(s: SchmidtParams, nu1, nu2, N: int | None = None, tol: float = 1e-12):
    """Rebuild the amplitude from its modes: sum_n sqrt(1-mu^2) mu^n psi_n(nu1) psi_n(nu2).

    Returns ``(value, tail_bound)``.  When ``N`` is omitted it is chosen so the
    geometric amplitude tail ``|mu|^N`` falls below ``tol`` (capped by the
    supported Hermite order).
    """
    if N is None:
        N = auto_truncation(s.mu, tol, cap=MAX_HERMITE_ORDER + 1)
        if abs(s.mu) ** N > tol:
            warnings.warn(
                f"Mehler series capped at N={N}; tail |mu|^N = {abs(s.mu) ** N:.3g} exceeds tol",
                RuntimeWarning,
                stacklevel=2,
            )
    N = int(N)
    if N < 1:
        raise DomainError(f"truncation N must be >= 1, got {N}")
    x1 = s.alpha * np.asarray(nu1, dtype=float)
    x2 = s.alpha * np.asarray(nu2, dtype=float)
    x1, x2 = np.broadcast_arrays(x1, x2)
    t1 = hermite_phi_table(N - 1, x1)
    t2 = hermite_phi_table(N - 1, x2)
    with np.errstate(under="ignore"):
        weights = math.sqrt(1.0 - s.mu**2) * np.power(s.mu, np.arange(N))
    value = s.alpha * np.tensordot(weights, t1 * t2, axes=1)
    return value, mehler_tail_bound(s, N)

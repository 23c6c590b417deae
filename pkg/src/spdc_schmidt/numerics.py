"""Numerical Schmidt decomposition of sampled bipartite kernels.

A kernel ``Psi(nu1, nu2)`` is sampled on a uniform symmetric grid and the
integral operator is discretized with trapezoidal weights ``w``.  The
singular values of ``W^(1/2) Psi W^(1/2)`` approximate ``sqrt(lambda_n)`` and
the singular vectors divided by ``sqrt(w)`` approximate the Schmidt modes.
This path knows nothing about Hermite functions or the Gaussian models; it is
the independent check on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .constants import C_LIGHT, LN2, S_DEFAULT
from .crystal import CrystalOptics
from .errors import ConfigError, NumericalError
from .kernel import GaussianPair, schmidt_mode
from .model import PumpPulse, exact_wavefunction, interpolated_model

Kernel = Callable[[np.ndarray, np.ndarray], np.ndarray]

MIN_POINTS = 16
_CHUNK_ROWS = 256


@dataclass(frozen=True)
class SpectralGrid:
    nu_values: np.ndarray = field(repr=False)
    n_points: int
    extent: float

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / (self.n_points - 1)

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.n_points, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return w


def build_grid(extent: float, n_points: int) -> SpectralGrid:
    """Uniform grid of ``n_points`` detunings on ``[-extent, extent]``."""
    if int(n_points) != n_points or n_points < MIN_POINTS:
        raise ConfigError(f"grid needs at least {MIN_POINTS} points, got {n_points!r}")
    extent = float(extent)
    if not math.isfinite(extent) or extent <= 0:
        raise ConfigError(f"grid extent must be finite and > 0, got {extent!r}")
    n_points = int(n_points)
    nu = np.linspace(-extent, extent, n_points)
    nu[n_points // 2 :] = -nu[: (n_points + 1) // 2][::-1]  # exact mirror symmetry
    nu.setflags(write=False)
    return SpectralGrid(nu, n_points, extent)


def pair_extent(pair: GaussianPair) -> float:
    """Grid half-width max(4a, 2b) for a double-Gaussian kernel."""
    return max(4.0 * pair.a, 2.0 * pair.b)


def exact_wf_extent(c: CrystalOptics, p: PumpPulse, s_exp: float = S_DEFAULT) -> float:
    """Grid half-width for the exact amplitude.

    Covers twice the interpolated single-particle FWHM ``b(tau) sqrt(ln 2)``,
    the pump bandwidth scale ``12 / tau`` and the sinc scale ``20 c / (A L)``.
    """
    model = interpolated_model(c, p, s_exp)
    return max(2.0 * model.b_tau * math.sqrt(LN2), 12.0 / p.tau, 20.0 * C_LIGHT / (c.A * c.L))


def exact_kernel(c: CrystalOptics, p: PumpPulse) -> Kernel:
    def kernel(nu1, nu2):
        return exact_wavefunction(c, p, nu1, nu2)

    return kernel


@dataclass(frozen=True)
class KernelMatrix:
    values: np.ndarray = field(repr=False)
    grid: SpectralGrid
    normalized: bool
    norm: float

    def weighted(self) -> np.ndarray:
        """W^(1/2) Psi W^(1/2), whose singular values are sqrt(lambda_n)."""
        sw = np.sqrt(self.grid.weights)
        return sw[:, None] * self.values * sw[None, :]


def _sample(kernel: Kernel, grid: SpectralGrid, rows: slice = slice(None)) -> np.ndarray:
    nu = grid.nu_values
    block = np.asarray(kernel(nu[rows, None], nu[None, :]), dtype=float)
    if not np.all(np.isfinite(block)):
        i, j = np.argwhere(~np.isfinite(block))[0]
        i += rows.start or 0
        raise NumericalError(f"kernel is not finite at nu1={nu[i]!r}, nu2={nu[j]!r}")
    return block


def discretize(kernel: Kernel, grid: SpectralGrid, normalize: bool = True) -> KernelMatrix:
    """Sample ``kernel`` on the grid; optionally scale to unit trapezoidal L2 norm."""
    values = _sample(kernel, grid)
    w = grid.weights
    norm = math.sqrt(float(w @ (values**2) @ w))
    if normalize:
        if norm == 0.0:
            raise NumericalError("kernel vanishes on the grid; cannot normalize")
        values = values / norm
    values.setflags(write=False)
    return KernelMatrix(values, grid, normalize, norm)


@dataclass(frozen=True)
class NumericalDecomposition:
    """Singular values (descending), Schmidt number and continuum-normalized modes."""

    singular_values: np.ndarray = field(repr=False)
    K_num: float
    modes: np.ndarray = field(repr=False)
    residual: float
    grid: SpectralGrid

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.singular_values**2


def schmidt_svd(m: KernelMatrix, n_keep: int | None = None) -> NumericalDecomposition:
    """Schmidt decomposition of a sampled kernel by dense SVD.

    ``modes[:, n]`` is the n-th mode on the grid, normalized so that
    ``sum_i w_i psi_n(nu_i)^2 = 1``.  ``residual`` is the weight outside the
    ``n_keep`` retained modes.
    """
    if not m.normalized:
        raise NumericalError("schmidt_svd expects a normalized KernelMatrix")
    try:
        u, sv, _ = np.linalg.svd(m.weighted(), full_matrices=False, hermitian=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed on {m.grid.n_points}-point grid: {exc}") from exc
    lam = sv**2
    K_num = 1.0 / float(np.sum(lam**2))
    n_keep = len(sv) if n_keep is None else min(int(n_keep), len(sv))
    modes = u[:, :n_keep] / np.sqrt(m.grid.weights)[:, None]
    residual = max(0.0, 1.0 - float(np.sum(lam[:n_keep])))
    return NumericalDecomposition(sv[:n_keep].copy(), K_num, modes, residual, m.grid)


def numerical_rdm(kernel: Kernel, grid: SpectralGrid) -> np.ndarray:
    """rho(nu_i, nu_j) = sum_k w_k Psi(nu_i, nu_k) Psi(nu_j, nu_k) for the normalized kernel."""
    m = discretize(kernel, grid)
    return (m.values * m.grid.weights[None, :]) @ m.values.T


def rdm_eigenvalues(rho: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Eigenvalues (descending) of the operator with kernel rho under trapezoidal weights."""
    sw = np.sqrt(grid.weights)
    ev = np.linalg.eigvalsh(sw[:, None] * rho * sw[None, :])
    return ev[::-1]


def fwhm(x, y) -> float:
    """Full width at half maximum of a single-peaked sampled curve.

    Half-maximum crossings are located on the linear interpolant between the
    bracketing samples on either side of the peak.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 3:
        raise NumericalError("fwhm needs matching 1-D arrays with at least 3 samples")
    i = int(np.argmax(y))
    peak = y[i]
    if not peak > 0:
        raise NumericalError("fwhm needs a positive peak")
    half = 0.5 * peak
    below = np.nonzero(y[:i] < half)[0]
    above = np.nonzero(y[i + 1 :] < half)[0]
    if len(below) == 0 or len(above) == 0:
        raise NumericalError("no half-maximum crossing inside the grid; increase the extent")
    j = below[-1]
    x_left = x[j] + (half - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j])
    j = i + 1 + above[0]
    x_right = x[j - 1] + (half - y[j - 1]) * (x[j] - x[j - 1]) / (y[j] - y[j - 1])
    return float(x_right - x_left)


def single_spectrum(kernel: Kernel, grid: SpectralGrid) -> np.ndarray:
    """Marginal int |Psi(nu1, nu2)|^2 dnu2 on the grid (trapezoidal), built row block by row block."""
    w = grid.weights
    out = np.empty(grid.n_points)
    for start in range(0, grid.n_points, _CHUNK_ROWS):
        rows = slice(start, min(start + _CHUNK_ROWS, grid.n_points))
        out[rows] = (_sample(kernel, grid, rows) ** 2) @ w
    return out


def slice_fwhm(f: Callable[[np.ndarray], np.ndarray], center: float, scale: float, n: int = 4001) -> float:
    """FWHM of a continuous single-peaked curve ``f`` near ``center``.

    The sampling window starts at ``center +- scale`` and doubles until both
    half-maximum crossings fall inside it; a second pass re-centres on the peak.
    """
    half_width = float(scale)
    for _ in range(60):
        x = np.linspace(center - half_width, center + half_width, n)
        y = np.asarray(f(x), dtype=float)
        i = int(np.argmax(y))
        if 0 < i < n - 1 and y[0] < 0.5 * y[i] and y[-1] < 0.5 * y[i]:
            width = fwhm(x, y)
            x = np.linspace(x[i] - width, x[i] + width, n)
            return fwhm(x, np.asarray(f(x), dtype=float))
        half_width *= 2.0
    raise NumericalError("could not bracket the half-maximum of the slice")


@dataclass(frozen=True)
class RParameter:
    R: float
    single_fwhm: float
    coincidence_fwhm: float


def r_parameter(kernel: Kernel, grid: SpectralGrid, slice_at: float = 0.0) -> RParameter:
    """Ratio of the single-particle to the coincidence spectral FWHM.

    The single-particle spectrum is the grid marginal; the coincidence spectrum
    is ``|Psi(nu1, slice_at)|^2``, resolved on a locally refined window so it
    does not depend on the grid spacing.
    """
    single = fwhm(grid.nu_values, single_spectrum(kernel, grid))
    coarse = np.asarray(kernel(grid.nu_values, np.full(grid.n_points, slice_at)), dtype=float) ** 2
    center = float(grid.nu_values[int(np.argmax(coarse))])

    def slice_curve(x):
        return np.asarray(kernel(x, np.full_like(x, slice_at)), dtype=float) ** 2

    coincidence = slice_fwhm(slice_curve, center, 2.0 * grid.spacing)
    return RParameter(single / coincidence, single, coincidence)


def mode_overlap(num: NumericalDecomposition, alpha: float, n_modes: int, center: float = 0.0) -> np.ndarray:
    """Fidelities |<psi_n^num, psi_n^analytic>|^2 for n < n_modes.

    Each numerical mode is sign-aligned with its analytic counterpart at the
    first grid point where the analytic mode exceeds 10% of its maximum.
    """
    n_modes = min(int(n_modes), num.modes.shape[1])
    nu = num.grid.nu_values
    w = num.grid.weights
    out = np.empty(n_modes)
    for n in range(n_modes):
        ana = schmidt_mode(n, alpha, nu - center)
        ref = int(np.argmax(np.abs(ana) > 0.1 * np.max(np.abs(ana))))
        vec = num.modes[:, n]
        if vec[ref] * ana[ref] < 0:
            vec = -vec
        out[n] = float(np.sum(w * vec * ana)) ** 2
    return out

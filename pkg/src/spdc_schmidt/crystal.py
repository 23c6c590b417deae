"""Crystal optics: refractive-index data and the walk-off / dispersion constants.

``A`` and ``B`` are dimensionless.  ``A = c (k_p'(w0) - k_o'(w0/2))`` is the
group-index mismatch between the extraordinary pump and the ordinary
signal/idler, ``B = (c/4) w0 k_o''(w0/2)`` measures the group-velocity
dispersion of the ordinary wave at the degenerate frequency.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .constants import C_LIGHT
from .errors import ConfigError, DomainError, PhysicsError

SELLMEIER_FIELDS = ("crystal", "no_coeffs", "ne_coeffs", "form", "range_um", "source")
SELLMEIER_FORMS = ("sellmeier-2pole",)


@dataclass(frozen=True)
class CrystalOptics:
    """Crystal length ``L`` (m), constants ``A``, ``B`` and the pump carrier.

    Build it with :meth:`from_wavelength` unless both ``omega0`` and
    ``lambda0`` are at hand; they must agree with ``lambda0 * omega0 = 2 pi c``.
    """

    L: float
    A: float
    B: float
    omega0: float
    lambda0: float
    provenance: str = field(default="direct", compare=False)

    def __post_init__(self) -> None:
        for name in ("L", "A", "B", "omega0", "lambda0"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"CrystalOptics.{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, value)
        if abs(self.lambda0 * self.omega0 / (2.0 * math.pi * C_LIGHT) - 1.0) > 1e-12:
            raise DomainError("lambda0 and omega0 are inconsistent: lambda0 * omega0 != 2 pi c")

    @classmethod
    def from_wavelength(cls, L: float, A: float, B: float, lambda0: float, provenance: str = "direct"):
        lambda0 = float(lambda0)
        if not lambda0 > 0:
            raise DomainError(f"lambda0 must be > 0, got {lambda0!r}")
        return cls(L, A, B, 2.0 * math.pi * C_LIGHT / lambda0, lambda0, provenance)

    @property
    def walkoff_time(self) -> float:
        """A L / c: pump/ordinary group-delay difference across the crystal (s)."""
        return self.A * self.L / C_LIGHT


@dataclass(frozen=True)
class SellmeierSet:
    """Ordinary and extraordinary index dispersion of a uniaxial crystal.

    Form ``sellmeier-2pole``: ``n^2 = c0 + c1 / (lam^2 - c2) - c3 lam^2`` with
    ``lam`` in micrometres, i.e. one ultraviolet resonance plus the leading term
    of the infrared lattice resonance.
    """

    crystal: str
    no_coeffs: tuple[float, ...]
    ne_coeffs: tuple[float, ...]
    form: str
    range_um: tuple[float, float]
    source: str

    def __post_init__(self) -> None:
        if self.form not in SELLMEIER_FORMS:
            raise ConfigError(f"unsupported Sellmeier form {self.form!r}; expected one of {SELLMEIER_FORMS}")
        for name in ("no_coeffs", "ne_coeffs"):
            coeffs = tuple(float(v) for v in getattr(self, name))
            if len(coeffs) != 4 or not all(math.isfinite(v) for v in coeffs):
                raise ConfigError(f"{name} must hold 4 finite coefficients for form {self.form!r}")
            object.__setattr__(self, name, coeffs)
        lo, hi = (float(v) for v in self.range_um)
        if not 0 < lo < hi:
            raise ConfigError(f"range_um must be an increasing positive pair, got {self.range_um!r}")
        object.__setattr__(self, "range_um", (lo, hi))
        lam = np.linspace(lo, hi, 256) * 1e-6
        if not (np.all(self.n_o(lam) > 1.0) and np.all(self.n_e(lam) > 1.0)):
            raise ConfigError(f"Sellmeier data for {self.crystal!r} gives n <= 1 inside its validity range")

    def _check_range(self, lam_m) -> np.ndarray:
        lam_um = np.asarray(lam_m, dtype=float) * 1e6
        lo, hi = self.range_um
        if np.any(lam_um < lo) or np.any(lam_um > hi):
            raise DomainError(
                f"wavelength outside the {self.crystal} Sellmeier range {lo}-{hi} um: "
                f"{float(np.min(lam_um)):.4g}-{float(np.max(lam_um)):.4g} um"
            )
        return lam_um

    @staticmethod
    def _index(coeffs, lam_um):
        c0, c1, c2, c3 = coeffs
        l2 = lam_um * lam_um
        return np.sqrt(c0 + c1 / (l2 - c2) - c3 * l2)

    def n_o(self, lam_m):
        return self._index(self.no_coeffs, self._check_range(lam_m))

    def n_e(self, lam_m):
        return self._index(self.ne_coeffs, self._check_range(lam_m))

    def n_e_theta(self, theta: float, lam_m):
        """Extraordinary index at angle ``theta`` (rad) to the optic axis."""
        no = self.n_o(lam_m)
        ne = self.n_e(lam_m)
        return 1.0 / np.sqrt(np.cos(theta) ** 2 / no**2 + np.sin(theta) ** 2 / ne**2)


def sellmeier_from_dict(doc: dict) -> SellmeierSet:
    if not isinstance(doc, dict):
        raise ConfigError("Sellmeier document must be a JSON object")
    unknown = sorted(set(doc) - set(SELLMEIER_FIELDS))
    if unknown:
        raise ConfigError(f"unknown Sellmeier fields: {', '.join(unknown)}")
    missing = [k for k in SELLMEIER_FIELDS if k not in doc]
    if missing:
        raise ConfigError(f"missing Sellmeier fields: {', '.join(missing)}")
    range_um = doc["range_um"]
    if not isinstance(range_um, (list, tuple)) or len(range_um) != 2:
        raise ConfigError("range_um must be a two-element list")
    return SellmeierSet(
        crystal=str(doc["crystal"]),
        no_coeffs=tuple(doc["no_coeffs"]),
        ne_coeffs=tuple(doc["ne_coeffs"]),
        form=str(doc["form"]),
        range_um=tuple(range_um),
        source=str(doc["source"]),
    )


def load_sellmeier(path: str | Path) -> SellmeierSet:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return sellmeier_from_dict(doc)


def builtin_sellmeier(name: str = "LiIO3") -> SellmeierSet:
    files = {"LiIO3": "liio3.json"}
    if name not in files:
        raise ConfigError(f"no built-in Sellmeier data for {name!r}; known: {', '.join(files)}")
    text = resources.files(__package__).joinpath("data").joinpath(files[name]).read_text(encoding="utf-8")
    return sellmeier_from_dict(json.loads(text))


def phase_matching_angle(sell: SellmeierSet, omega0: float) -> float:
    """Angle theta solving n_e(theta, w0) = n_o(w0/2) for collinear degenerate type-I (ooe)."""
    lam_p = 2.0 * math.pi * C_LIGHT / omega0
    target = float(sell.n_o(2.0 * lam_p))
    lo, hi = 1e-9, math.pi / 2.0
    f_lo = float(sell.n_e_theta(lo, lam_p)) - target
    f_hi = float(sell.n_e_theta(hi, lam_p)) - target
    if f_lo * f_hi > 0:
        raise PhysicsError(
            f"{sell.crystal}: no type-I phase-matching angle in (0, 90) deg at lambda0 = {lam_p * 1e9:.1f} nm"
        )
    return brentq(lambda t: float(sell.n_e_theta(t, lam_p)) - target, lo, hi, xtol=1e-15, rtol=1e-15)


def _d1(f, x, h):
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12.0 * h)


def _d2(f, x, h):
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12.0 * h * h)


def dispersion_constants(sell: SellmeierSet, omega0: float, rel_step: float = 1e-3) -> tuple[float, float]:
    """Walk-off ``A`` and dispersion ``B`` from index data at pump frequency ``omega0`` (rad/s).

    Derivatives of ``k(w) = n(w) w / c`` use five-point central differences in
    the reduced frequency ``u = w / w0`` with step ``rel_step``.
    """
    omega0 = float(omega0)
    if not omega0 > 0:
        raise DomainError(f"omega0 must be > 0, got {omega0!r}")
    theta = phase_matching_angle(sell, omega0)

    def lam(u):
        return 2.0 * math.pi * C_LIGHT / (u * omega0)

    # c k(w) / w0 = n(w) * u
    def pump(u):
        return float(sell.n_e_theta(theta, lam(u))) * u

    def ordinary(u):
        return float(sell.n_o(lam(u))) * u

    A = _d1(pump, 1.0, rel_step) - _d1(ordinary, 0.5, rel_step)
    B = 0.25 * _d2(ordinary, 0.5, rel_step)
    return A, B


def crystal_from_sellmeier(sell: SellmeierSet, L: float, lambda0: float) -> CrystalOptics:
    omega0 = 2.0 * math.pi * C_LIGHT / lambda0
    A, B = dispersion_constants(sell, omega0)
    note = f"A, B from {sell.crystal} Sellmeier data ({sell.source})"
    return CrystalOptics(L, A, B, omega0, lambda0, note)


PRESETS = {
    "LiIO3-0.5cm-400nm": {"sellmeier": "LiIO3", "L": 0.5e-2, "lambda0": 400e-9},
}


def crystal_preset(name: str) -> CrystalOptics:
    """Built-in crystal configuration, e.g. ``"LiIO3-0.5cm-400nm"``."""
    if name not in PRESETS:
        raise ConfigError(f"unknown crystal preset {name!r}; known: {', '.join(PRESETS)}")
    spec = PRESETS[name]
    return crystal_from_sellmeier(builtin_sellmeier(spec["sellmeier"]), spec["L"], spec["lambda0"])

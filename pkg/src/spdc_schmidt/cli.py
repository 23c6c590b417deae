"""Command-line front end.

Subcommands:

    analyze   every model quantity at one pump duration (JSON or key/value CSV)
    sweep     a(tau), b(tau), K and omega0*alpha over a log-spaced eta range
    modes     sampled Schmidt modes and the sqrt(lambda_n) ladder
    map       localization lines of the exact and model amplitudes

A run is configured by an optional JSON file (``--config``) plus flags; flags
win.  Output goes to ``--out DIR`` (one file per table plus a ``.meta.json``
sidecar for CSV) or, without ``--out``, the main table to stdout.

Exit codes: 0 success, 2 usage/configuration error, 3 domain or physics
error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, svg
from .constants import C_LIGHT, LN2, S_DEFAULT
from .crystal import CrystalOptics, crystal_from_sellmeier, crystal_preset, load_sellmeier
from .errors import ConfigError, SpdcError
from .kernel import dg_wavefunction, rdm_params_from_wf, schmidt_mode, wf_to_schmidt
from .model import (
    PumpPulse,
    generalized_ladder,
    generalized_modes,
    interpolated_model,
    localization_curves,
    short_pulse_model,
)
from .numerics import build_grid, discretize, exact_kernel, exact_wf_extent, r_parameter, schmidt_svd

SCHEMA_VERSION = 1
DEFAULT_PRESET = "LiIO3-0.5cm-400nm"
FORMATS = ("csv", "json", "svg")

CONFIG_KEYS = {
    "crystal": str,
    "sellmeier": str,
    "A": float,
    "B": float,
    "L": float,
    "lambda0": float,
    "tau": float,
    "eta": float,
    "s_exp": float,
    "grid": int,
    "extent_mult": float,
    "numeric": bool,
    "modes": list,
    "format": list,
    "out": str,
    "jobs": int,
    "eta_range": list,
    "tau_range": list,
    "steps": int,
    "heatmap": int,
}
_CRYSTAL_KEYS = ("crystal", "sellmeier", "A", "B")
_PUMP_KEYS = ("tau", "eta")
_RANGE_KEYS = ("eta_range", "tau_range")


@dataclass
class RunConfig:
    crystal: str | None = None
    sellmeier: str | None = None
    A: float | None = None
    B: float | None = None
    L: float | None = None
    lambda0: float | None = None
    tau: float | None = None
    eta: float | None = None
    s_exp: float = S_DEFAULT
    grid: int = 512
    extent_mult: float = 1.0
    numeric: bool = False
    modes: list = field(default_factory=lambda: [0, 1, 10])
    format: list = field(default_factory=lambda: ["csv"])
    out: str | None = None
    jobs: int = 1
    eta_range: list | None = None
    tau_range: list | None = None
    steps: int = 17
    heatmap: int = 0

    def validate(self) -> None:
        direct = [k for k in ("A", "B") if getattr(self, k) is not None]
        named = [k for k in ("crystal", "sellmeier") if getattr(self, k) is not None]
        if direct and named:
            raise ConfigError(f"config: give either {'/'.join(named)} or A/B, not both")
        if len(named) == 2:
            raise ConfigError("config: give either crystal or sellmeier, not both")
        if direct and len(direct) != 2:
            raise ConfigError("config.A/config.B: both must be given for a direct crystal")
        if direct or self.sellmeier:
            for key in ("L", "lambda0"):
                if getattr(self, key) is None:
                    raise ConfigError(f"config.{key}: required with a direct or Sellmeier crystal")
        elif self.L is not None or self.lambda0 is not None:
            raise ConfigError("config.L/config.lambda0: only allowed with A/B or a Sellmeier file")
        if self.tau is not None and self.eta is not None:
            raise ConfigError("config.tau/config.eta: give one pump parameter, not both")
        if self.eta_range is not None and self.tau_range is not None:
            raise ConfigError("config.eta_range/config.tau_range: give one sweep range, not both")
        for key in _RANGE_KEYS:
            rng = getattr(self, key)
            if rng is not None and (len(rng) != 2 or not 0 < rng[0] < rng[1]):
                raise ConfigError(f"config.{key}: needs two increasing positive numbers, got {rng!r}")
        if self.steps < 2:
            raise ConfigError(f"config.steps: needs at least 2, got {self.steps}")
        if self.grid < 16:
            raise ConfigError(f"config.grid: needs at least 16 points, got {self.grid}")
        if not self.extent_mult > 0:
            raise ConfigError(f"config.extent_mult: must be > 0, got {self.extent_mult}")
        if self.jobs < 1:
            raise ConfigError(f"config.jobs: must be >= 1, got {self.jobs}")
        if any(int(n) != n or n < 0 for n in self.modes):
            raise ConfigError(f"config.modes: indices must be integers >= 0, got {self.modes!r}")
        self.modes = [int(n) for n in self.modes]
        bad = [f for f in self.format if f not in FORMATS]
        if bad or not self.format:
            raise ConfigError(f"config.format: choose from {', '.join(FORMATS)}, got {self.format!r}")
        if self.heatmap < 0:
            raise ConfigError(f"config.heatmap: must be >= 0, got {self.heatmap}")


def _coerce(key: str, value, where: str):
    kind = CONFIG_KEYS[key]
    try:
        if kind is list:
            if isinstance(value, str):
                value = value.split(",")
            if not isinstance(value, list):
                raise TypeError
            if key == "format":
                return [str(v).strip() for v in value]
            return [float(v) if key.endswith("range") else int(v) for v in value]
        if kind is bool:
            if not isinstance(value, bool):
                raise TypeError
            return value
        if kind is int and isinstance(value, float) and value != int(value):
            raise TypeError
        out = kind(value)
        if kind is float and not math.isfinite(out):
            raise ValueError
        return out
    except (TypeError, ValueError):
        raise ConfigError(f"{where}.{key}: expected {kind.__name__}, got {value!r}") from None


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: {path} is not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config: top level must be a JSON object")
    unknown = sorted(set(doc) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"config: unknown field(s) {', '.join(unknown)}")
    return {k: _coerce(k, v, "config") for k, v in doc.items()}


def build_config(file_values: dict, flag_values: dict) -> RunConfig:
    """Merge file and flag values; a flag in a group replaces the whole group from the file."""
    merged = dict(file_values)
    for group in (_CRYSTAL_KEYS, _PUMP_KEYS, _RANGE_KEYS):
        if any(k in flag_values for k in group):
            for k in group:
                merged.pop(k, None)
    merged.update(flag_values)
    cfg = RunConfig(**merged)
    cfg.validate()
    return cfg


def resolve_crystal(cfg: RunConfig) -> CrystalOptics:
    if cfg.A is not None:
        return CrystalOptics.from_wavelength(cfg.L, cfg.A, cfg.B, cfg.lambda0, "direct A, B")
    if cfg.sellmeier is not None:
        return crystal_from_sellmeier(load_sellmeier(cfg.sellmeier), cfg.L, cfg.lambda0)
    name = cfg.crystal or DEFAULT_PRESET
    c = crystal_preset(name)
    return CrystalOptics(c.L, c.A, c.B, c.omega0, c.lambda0, f"preset {name}: {c.provenance}")


def resolve_pulse(cfg: RunConfig, c: CrystalOptics) -> PumpPulse:
    if cfg.tau is not None:
        return PumpPulse(cfg.tau)
    return PumpPulse.from_eta(c, 1.0 if cfg.eta is None else cfg.eta)


# ---------------------------------------------------------------- formatting


def fmt_num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def _round_json(obj):
    if isinstance(obj, dict):
        return {k: _round_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_round_json(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(format(x, ".12g")) if math.isfinite(x) else None
    return obj


def dumps_json(doc: dict) -> str:
    return json.dumps(_round_json(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dumps_csv(columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt_num(v) for v in row) + "\n")
    return buf.getvalue()


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list]


@dataclass
class Artifact:
    """Everything one command produces: metadata, tables and optional plots."""

    command: str
    meta: dict
    tables: list[Table]
    plots: dict = field(default_factory=dict)
    report: dict | None = None

    def json_doc(self) -> dict:
        doc = {"schema": f"spdc-schmidt/{self.command}/{SCHEMA_VERSION}", "meta": self.meta}
        if self.report is not None:
            doc["report"] = self.report
            return doc
        for t in self.tables:
            doc[t.name] = {"columns": t.columns, "rows": t.rows}
        return doc


def _meta(cfg: RunConfig, c: CrystalOptics) -> dict:
    return {
        "version": __version__,
        "crystal": {
            "L_m": c.L,
            "A": c.A,
            "B": c.B,
            "lambda0_m": c.lambda0,
            "omega0_rad_s": c.omega0,
            "provenance": c.provenance,
        },
        "config": {k: v for k, v in sorted(asdict(cfg).items()) if k not in ("out", "jobs", "format")},
    }


def write_artifact(art: Artifact, cfg: RunConfig, stdout) -> None:
    if cfg.out is None:
        fmt = cfg.format[0]
        if fmt == "json":
            stdout.write(dumps_json(art.json_doc()))
        elif fmt == "csv":
            t = art.tables[0]
            stdout.write(dumps_csv(t.columns, t.rows))
        else:
            if not art.plots:
                raise ConfigError(f"format: no SVG output for '{art.command}'")
            stdout.write(next(iter(art.plots.values())))
        return
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    def put(name: str, text: str) -> None:
        with open(out / name, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)

    if "json" in cfg.format:
        put(f"{art.command}.json", dumps_json(art.json_doc()))
    if "csv" in cfg.format:
        for t in art.tables:
            put(f"{t.name}.csv", dumps_csv(t.columns, t.rows))
        sidecar = {"schema": f"spdc-schmidt/{art.command}/{SCHEMA_VERSION}", "meta": art.meta}
        if art.report is not None:
            sidecar["report"] = art.report
        put(f"{art.command}.meta.json", dumps_json(sidecar))
    if "svg" in cfg.format:
        for name, text in art.plots.items():
            put(f"{name}.svg", text)


# ------------------------------------------------------------------ commands


def _model_fwhms(a: float, b: float) -> tuple[float, float]:
    """Coincidence and single-particle FWHMs of |Psi|^2 for a double Gaussian."""
    coincidence = 2.0 * math.sqrt(LN2) * a * b / math.hypot(a, b)
    single = math.sqrt(LN2) * math.hypot(a, b)
    return coincidence, single


def _numeric_block(c: CrystalOptics, p: PumpPulse, cfg: RunConfig) -> dict:
    extent = cfg.extent_mult * exact_wf_extent(c, p, cfg.s_exp)
    grid = build_grid(extent, cfg.grid)
    ker = exact_kernel(c, p)
    dec = schmidt_svd(discretize(ker, grid), n_keep=10)
    r = r_parameter(ker, grid)
    return {
        "grid_points": cfg.grid,
        "extent_rad_s": extent,
        "K_numeric": dec.K_num,
        "R_numeric": r.R,
        "single_fwhm_rad_s": r.single_fwhm,
        "coincidence_fwhm_rad_s": r.coincidence_fwhm,
        "sqrt_lambda_first10": dec.singular_values,
    }


def cmd_analyze(cfg: RunConfig) -> Artifact:
    c = resolve_crystal(cfg)
    p = resolve_pulse(cfg, c)
    model = interpolated_model(c, p, cfg.s_exp)
    gm = generalized_modes(c, p, cfg.s_exp)
    sp = wf_to_schmidt(model.pair)
    rdm = rdm_params_from_wf(model.pair)
    ladder = generalized_ladder(model.K)
    coincidence, single = _model_fwhms(model.a_tau, model.b_tau)
    n_k = int(round(model.K))
    report = {
        "tau_s": p.tau,
        "eta": model.eta,
        "s_exp": model.s_exp,
        "regime": model.regime,
        "a_rad_s": model.a_tau,
        "b_rad_s": model.b_tau,
        "a_tilde_rad_s": rdm.a_tilde,
        "b_tilde_rad_s": rdm.b_tilde,
        "mu": sp.mu,
        "mu_ladder": ladder.mu,
        "alpha_s": gm.alpha,
        "omega0_alpha": gm.omega0_alpha,
        "K": model.K,
        "coincidence_fwhm_rad_s": coincidence,
        "single_fwhm_rad_s": single,
        "R_model": single / coincidence,
        "lambda_first20": ladder.eigenvalues[:20],
        "sqrt_lambda_first20": ladder.amplitudes[:20],
        "n_at_K": n_k,
        "sqrt_lambda_at_K": float(ladder.amplitudes[n_k]) if n_k < len(ladder.eigenvalues) else 0.0,
        "mode_width_rad_s": {str(n): math.sqrt(n) / gm.alpha for n in cfg.modes if n > 0},
    }
    if cfg.numeric:
        report["numeric"] = _numeric_block(c, p, cfg)
    rows = [[k, v] for k, v in _flatten(report)]
    return Artifact("analyze", _meta(cfg, c), [Table("analyze", ["quantity", "value"], rows)], report=report)


def _flatten(doc: dict, prefix: str = ""):
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        elif isinstance(value, (list, tuple, np.ndarray)):
            for i, v in enumerate(value):
                yield f"{name}[{i}]", v
        else:
            yield name, value


SWEEP_COLUMNS = [
    "tau_s",
    "eta",
    "regime",
    "a_rad_s",
    "b_rad_s",
    "a_over_omega0",
    "b_over_omega0",
    "K_analytic",
    "omega0_alpha",
]
SWEEP_NUMERIC_COLUMNS = ["K_numeric", "R_numeric"]


def sweep_row(c: CrystalOptics, tau: float, cfg: RunConfig) -> list:
    """One sweep row; top-level so worker processes can pickle it."""
    warnings.simplefilter("ignore")
    p = PumpPulse(tau)
    model = interpolated_model(c, p, cfg.s_exp)
    gm = generalized_modes(c, p, cfg.s_exp)
    row = [
        tau,
        model.eta,
        model.regime,
        model.a_tau,
        model.b_tau,
        model.a_tau / c.omega0,
        model.b_tau / c.omega0,
        model.K,
        gm.omega0_alpha,
    ]
    if cfg.numeric:
        num = _numeric_block(c, p, cfg)
        row += [num["K_numeric"], num["R_numeric"]]
    return row


def cmd_sweep(cfg: RunConfig) -> Artifact:
    c = resolve_crystal(cfg)
    if cfg.tau_range is not None:
        taus = np.geomspace(cfg.tau_range[0], cfg.tau_range[1], cfg.steps)
    else:
        lo, hi = cfg.eta_range or (0.05, 20.0)
        taus = np.geomspace(lo, hi, cfg.steps) * c.A * c.L / (2.0 * C_LIGHT)
    taus = [float(t) for t in taus]
    if cfg.jobs > 1 and len(taus) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(sweep_row, [c] * len(taus), taus, [cfg] * len(taus)))
    else:
        rows = [sweep_row(c, t, cfg) for t in taus]
    columns = SWEEP_COLUMNS + (SWEEP_NUMERIC_COLUMNS if cfg.numeric else [])
    eta = [r[1] for r in rows]
    series = {"K analytic": [r[7] for r in rows]}
    if cfg.numeric:
        series["K numeric"] = [r[9] for r in rows]
        series["R numeric"] = [r[10] for r in rows]
    plots = {
        "sweep_K": svg.line_plot(eta, series, "Schmidt number", "eta", "K", log_x=True),
        "sweep_ab": svg.line_plot(
            eta,
            {"a/omega0": [r[5] for r in rows], "b/omega0": [r[6] for r in rows]},
            "Double-Gaussian widths",
            "eta",
            "width / omega0",
            log_x=True,
        ),
    }
    return Artifact("sweep", _meta(cfg, c), [Table("sweep", columns, rows)], plots)


def cmd_modes(cfg: RunConfig) -> Artifact:
    c = resolve_crystal(cfg)
    p = resolve_pulse(cfg, c)
    gm = generalized_modes(c, p, cfg.s_exp)
    n_max = max(cfg.modes)
    half = 5.0 * math.sqrt(max(n_max, 1)) / gm.alpha * cfg.extent_mult
    nu = np.linspace(-half, half, cfg.grid)
    psi = {n: schmidt_mode(n, gm.alpha, nu) for n in cfg.modes}
    columns = ["nu_rad_s", "nu_over_omega0"] + [f"psi_{n}" for n in cfg.modes]
    rows = [[nu[i], nu[i] / c.omega0] + [psi[n][i] for n in cfg.modes] for i in range(len(nu))]
    K = gm.model.K
    ladder = generalized_ladder(K, N=max(int(math.ceil(3.0 * K)), 2))
    lrows = [[n, lam, amp] for n, (lam, amp) in enumerate(zip(ladder.eigenvalues, ladder.amplitudes))]
    plots = {
        "modes": svg.line_plot(
            nu / c.omega0,
            {f"psi_{n}": psi[n] / math.sqrt(gm.alpha) for n in cfg.modes},
            f"Schmidt modes, eta = {gm.model.eta:.3g}",
            "nu / omega0",
            "psi_n / sqrt(alpha)",
        ),
        "ladder": svg.line_plot(
            np.arange(len(ladder.amplitudes)), {"sqrt(lambda_n)": ladder.amplitudes}, "Eigenvalue ladder", "n", ""
        ),
    }
    tables = [Table("modes", columns, rows), Table("ladder", ["n", "lambda", "sqrt_lambda"], lrows)]
    return Artifact("modes", _meta(cfg, c), tables, plots)


def cmd_map(cfg: RunConfig) -> Artifact:
    c = resolve_crystal(cfg)
    p = resolve_pulse(cfg, c)
    model = interpolated_model(c, p, cfg.s_exp)
    if model.regime != "short":
        warnings.warn(f"map: eta = {model.eta:.3g} is outside the short-pulse regime", stacklevel=2)
    _, single = _model_fwhms(model.a_tau, model.b_tau)
    half = cfg.extent_mult * single
    nu2 = np.linspace(-half, half, cfg.grid)
    cur = localization_curves(c, p, nu2, allow_invalid=True)
    columns = [
        "nu2_rad_s",
        "nu2_over_omega0",
        "cm_exact",
        "cm_gauss",
        "dashed_exact",
        "dashed_gauss_plus",
        "dashed_gauss_minus",
        "strip_half_width",
        "valid",
    ]
    hw = cur.strip_width
    rows = [
        [
            nu2[i],
            nu2[i] / c.omega0,
            cur.cm_exact[i],
            cur.cm_gauss[i],
            cur.dashed_exact[i],
            cur.dashed_gauss_plus[i],
            cur.dashed_gauss_minus[i],
            hw,
            bool(cur.valid[i]),
        ]
        for i in range(len(nu2))
    ]
    tables = [Table("map", columns, rows)]
    x = nu2 / c.omega0
    plots = {
        "map": svg.line_plot(
            x,
            {
                "cm exact": cur.cm_exact / c.omega0,
                "cm gauss": cur.cm_gauss / c.omega0,
                "dashed exact": cur.dashed_exact / c.omega0,
                "dashed gauss +": cur.dashed_gauss_plus / c.omega0,
                "dashed gauss -": cur.dashed_gauss_minus / c.omega0,
            },
            f"Localization lines, tau = {p.tau:.3g} s",
            "nu2 / omega0",
            "nu1 / omega0",
        )
    }
    if cfg.heatmap:
        h = np.linspace(-half, half, cfg.heatmap)
        n1, n2 = np.meshgrid(h, h, indexing="ij")
        exact = exact_kernel(c, p)(n1, n2) ** 2
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gauss = dg_wavefunction(short_pulse_model(c, p), n1, n2) ** 2
        exact /= exact.max()
        gauss /= gauss.max()
        hrows = [[h[i], h[j], exact[i, j], gauss[i, j]] for i in range(len(h)) for j in range(len(h))]
        tables.append(Table("map_heat", ["nu1_rad_s", "nu2_rad_s", "exact_sq", "model_sq"], hrows))
        hx = h / c.omega0
        plots["map_heat_exact"] = svg.heat_map(hx, hx, exact, "|Psi|^2 exact", "nu2 / omega0", "nu1 / omega0")
        plots["map_heat_model"] = svg.heat_map(hx, hx, gauss, "|Psi|^2 model", "nu2 / omega0", "nu1 / omega0")
    return Artifact("map", _meta(cfg, c), tables, plots)


COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep, "modes": cmd_modes, "map": cmd_map}


# ------------------------------------------------------------------- parsing


def _csv_list(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration; flags override it")
    xtal = common.add_argument_group("crystal (preset, Sellmeier file, or direct A/B)")
    xtal.add_argument("--crystal", metavar="NAME", help=f"built-in preset (default {DEFAULT_PRESET})")
    xtal.add_argument("--sellmeier", metavar="PATH", help="Sellmeier JSON file; needs --L and --lambda0")
    xtal.add_argument("--A", type=float, help="walk-off constant")
    xtal.add_argument("--B", type=float, help="dispersion constant")
    xtal.add_argument("--L", type=float, help="crystal length (m)")
    xtal.add_argument("--lambda0", type=float, help="pump wavelength (m)")
    pump = common.add_mutually_exclusive_group()
    pump.add_argument("--tau", type=float, help="pump FWHM duration (s)")
    pump.add_argument("--eta", type=float, help="control parameter 2 c tau / (A L); default 1")
    common.add_argument("--s-exp", dest="s_exp", type=float, help=f"interpolation exponent (default {S_DEFAULT})")
    common.add_argument("--grid", type=int, help="grid points (default 512)")
    common.add_argument("--extent-mult", dest="extent_mult", type=float, help="grid/plot extent multiplier")
    common.add_argument("--numeric", action="store_true", default=None, help="add the numerical SVD cross-check")
    common.add_argument("--modes", type=_csv_list, help="comma-separated mode indices (default 0,1,10)")
    common.add_argument("--format", type=_csv_list, help="csv, json and/or svg (comma-separated)")
    common.add_argument("--out", metavar="DIR", help="output directory; stdout if omitted")
    common.add_argument("--jobs", type=int, help="worker processes for sweeps")

    parser = argparse.ArgumentParser(
        prog="spdc-schmidt", description="Schmidt decomposition of pulsed type-I SPDC biphoton spectra."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="model quantities at one pump duration")
    sw = sub.add_parser("sweep", parents=[common], help="log-spaced sweep over the pump duration")
    rng = sw.add_mutually_exclusive_group()
    rng.add_argument("--eta-range", dest="eta_range", type=float, nargs=2, metavar=("LO", "HI"))
    rng.add_argument("--tau-range", dest="tau_range", type=float, nargs=2, metavar=("LO", "HI"))
    sw.add_argument("--steps", type=int, help="number of sweep points (default 17)")
    sub.add_parser("modes", parents=[common], help="Schmidt modes and eigenvalue ladder")
    mp = sub.add_parser("map", parents=[common], help="localization map of the amplitude")
    mp.add_argument("--heatmap", type=int, help="also sample |Psi|^2 on an N x N grid")
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    flags = {k: v for k, v in vars(args).items() if k in CONFIG_KEYS and v is not None}
    try:
        flags = {k: _coerce(k, v, "flag") for k, v in flags.items()}
        file_values = load_config_file(args.config) if args.config else {}
        cfg = build_config(file_values, flags)
        art = COMMANDS[args.command](cfg)
        write_artifact(art, cfg, stdout)
    except SpdcError as exc:
        print(f"spdc-schmidt: error: {exc}", file=stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

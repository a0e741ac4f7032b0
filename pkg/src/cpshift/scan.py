"""Distance scans and figure-data emission (CSV + JSON run manifest).

All outputs are scaled: lengths as zeta = w z / c, rates and shifts divided
by the free-space rate of the scan's transition.  Grid points are evaluated
concurrently (thread pool, CPSHIFT_THREADS overrides the worker count) and
collected in grid order so identical configs give byte-identical CSV files.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .atomics import asymptotic, AsymptoticCase, nonresonant_shift_terms
from .config import ConfigError, QUANTITY_COLUMNS, ScanConfig
from .constants import SCALED
from .atomics import greens_tensor
from .media import AxionMedium, PerfectConductor, PerfectNonreciprocalMirror
from .quadrature import QuadratureConfig, QuadratureError
from .units import canonical_transition, free_space_rate_formula
from .version import __version__

__all__ = ["ScanError", "RunManifest", "ScanResult", "run_scan", "figure",
           "FIGURE_NAMES", "worker_count"]


class ScanError(RuntimeError):
    """A grid point failed to evaluate; carries the offending zeta."""

    def __init__(self, message, zeta=None):
        super().__init__(message)
        self.zeta = zeta


def worker_count() -> int:
    """Thread count: CPSHIFT_THREADS if set, else the CPU count."""
    env = os.environ.get("CPSHIFT_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"CPSHIFT_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise ConfigError(f"CPSHIFT_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


@dataclass(frozen=True)
class RunManifest:
    """Machine-readable record emitted for every run, successful or not."""

    command: str
    config: dict
    quadrature: dict
    threads: int
    wall_time_s: float
    points: int
    quad_error_max: float
    quad_error_mean: float
    status: str
    error: str | None
    outputs: tuple

    def to_json(self) -> str:
        payload = {
            "tool": "cpshift",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "quadrature": self.quadrature,
            "threads": self.threads,
            "wall_time_s": self.wall_time_s,
            "points": self.points,
            "quad_error": {"max": self.quad_error_max,
                           "mean": self.quad_error_mean},
            "status": self.status,
            "error": self.error,
            "outputs": list(self.outputs),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class ScanResult:
    zetas: np.ndarray
    columns: tuple
    values: np.ndarray  # shape (len(zetas), len(columns))
    csv_path: Path
    manifest_path: Path
    manifest: RunManifest


def _quad_dict(cfg: QuadratureConfig) -> dict:
    return {"rel_tol": cfg.rel_tol, "xi_rel_tol": cfg.xi_rel_tol,
            "kappa_cutoff": cfg.kappa_cutoff, "xi_cutoff": cfg.xi_cutoff}


def _evaluate_point(zeta: float, medium, transition, quantities,
                    qcfg: QuadratureConfig):
    """All requested scaled quantities at one grid point.

    Returns (values in quantity order, summed quadrature error estimate).
    In scaled units z = zeta directly; the normalization Gamma0 is computed
    rather than assumed 1 so non-canonical transitions stay correct.
    """
    con = SCALED
    z = float(zeta) * con.c / transition.frequency
    gamma0 = free_space_rate_formula(transition, con)
    w = transition.frequency
    err = 0.0
    cache = {}

    def sandwich():
        if "s" not in cache:
            g = greens_tensor(medium, z, w, con, qcfg)
            cache["s"] = g.contract(transition.dipole)
            cache["g_err"] = g.quad_error
        return cache["s"]

    out = []
    for q in quantities:
        if q == "rate":
            s = sandwich()
            out.append(2.0 * con.mu0 / con.hbar * w ** 2 * s.imag / gamma0)
        elif q == "resonant_shift":
            s = sandwich()
            out.append(-con.mu0 / con.hbar * w ** 2 * s.real / gamma0)
        elif q == "nonresonant_shift":
            terms = nonresonant_shift_terms(transition, z, medium, con, qcfg)
            err += terms.quad_error
            out.append(terms.total / gamma0)
        else:
            raise ScanError(f"unknown quantity {q!r}", zeta=zeta)
    err += cache.get("g_err", 0.0)
    return out, err


def _parallel_grid(zetas, fn, threads):
    """Map fn over the grid concurrently, collecting in grid order."""
    if threads <= 1 or len(zetas) < 4:
        return [fn(z) for z in zetas]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, z) for z in zetas]
        return [f.result() for f in futures]


def _format_csv(columns, zetas, values) -> str:
    lines = [",".join(("zeta",) + tuple(columns))]
    for zeta, row in zip(zetas, values):
        cells = [f"{zeta:.11e}"] + [f"{v:.11e}" for v in row]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _write_manifest(path: Path, manifest: RunManifest):
    path.write_text(manifest.to_json(), encoding="utf-8")


def run_scan(config: ScanConfig, out_dir,
             qcfg: QuadratureConfig | None = None) -> ScanResult:
    """Evaluate the configured scan and write CSV + manifest into out_dir.

    On a numerical failure the manifest is still written (status "failed",
    error naming the offending zeta) before ScanError propagates.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    qcfg = qcfg or QuadratureConfig()
    medium = config.build_medium()
    transition = canonical_transition(config.handedness)
    zetas = config.grid()
    columns = tuple(QUANTITY_COLUMNS[q] for q in config.quantities)
    csv_path = out / f"{config.name}.csv"
    manifest_path = out / f"{config.name}.manifest.json"
    threads = worker_count()
    t0 = time.perf_counter()

    def point(zeta):
        try:
            return _evaluate_point(zeta, medium, transition,
                                   config.quantities, qcfg)
        except (QuadratureError, ArithmeticError) as exc:
            raise ScanError(f"{type(exc).__name__} at zeta={zeta:.6g}: {exc}",
                            zeta=zeta) from exc

    base = dict(command="scan", config=_config_echo(config),
                quadrature=_quad_dict(qcfg), threads=threads)
    try:
        results = _parallel_grid(zetas, point, threads)
    except ScanError as exc:
        manifest = RunManifest(**base, wall_time_s=time.perf_counter() - t0,
                               points=len(zetas), quad_error_max=float("nan"),
                               quad_error_mean=float("nan"), status="failed",
                               error=str(exc), outputs=(manifest_path.name,))
        _write_manifest(manifest_path, manifest)
        raise

    values = np.array([r[0] for r in results])
    errs = np.array([r[1] for r in results])
    csv_path.write_text(_format_csv(columns, zetas, values), encoding="utf-8")
    manifest = RunManifest(**base, wall_time_s=time.perf_counter() - t0,
                           points=len(zetas),
                           quad_error_max=float(errs.max()),
                           quad_error_mean=float(errs.mean()), status="ok",
                           error=None,
                           outputs=(csv_path.name, manifest_path.name))
    _write_manifest(manifest_path, manifest)
    return ScanResult(zetas=zetas, columns=columns, values=values,
                      csv_path=csv_path, manifest_path=manifest_path,
                      manifest=manifest)


def _config_echo(config: ScanConfig) -> dict:
    echo = {
        "medium": config.medium_kind, "handedness": config.handedness,
        "zeta_min": config.zeta_min, "zeta_max": config.zeta_max,
        "count": config.count, "spacing": config.spacing,
        "quantities": list(config.quantities), "name": config.name,
    }
    if config.medium_kind == "axion":
        echo.update(epsilon=config.epsilon, mu=config.mu, theta=config.theta)
    elif config.medium_kind == "nonreciprocal_mirror":
        echo.update(sign=config.sign)
    return echo


# ---------------------------------------------------------------------------
# Figure data

FIGURE_NAMES = ("gamma_mirrors", "omega_mirrors", "loglog_nres",
                "gamma_ti", "omega_ti")

_OSC_GRID = dict(zeta_min=0.05, zeta_max=8.0, count=400, spacing="linear")
_LOG_GRID = dict(zeta_min=1e-2, zeta_max=1e2, count=361, spacing="log")


def _trace_scan(name, medium_kind, quantities, grid, out, qcfg, **medium_kw):
    cfg = ScanConfig(medium_kind=medium_kind, quantities=quantities,
                     name=name, **grid, **medium_kw)
    return run_scan(cfg, out, qcfg)


def _difference_traces(name_prefix, quantity, grid, out, qcfg, epsilon=16.0):
    """ε-medium with-minus-without-axion traces for theta = ±pi."""
    transition = canonical_transition("plus")
    cfg_grid = ScanConfig(medium_kind="axion", quantities=(quantity,),
                          name="tmp", **grid)
    zetas = cfg_grid.grid()
    media = {
        "plus": AxionMedium(epsilon=epsilon, theta=np.pi),
        "minus": AxionMedium(epsilon=epsilon, theta=-np.pi),
        "zero": AxionMedium(epsilon=epsilon, theta=0.0),
    }
    threads = worker_count()
    column = QUANTITY_COLUMNS[quantity]

    def point(zeta):
        vals = {}
        err = 0.0
        for key, medium in media.items():
            v, e = _evaluate_point(zeta, medium, transition, (quantity,), qcfg)
            vals[key] = v[0]
            err += e
        return vals, err

    results = _parallel_grid(zetas, point, threads)
    outputs = []
    for which, sign_name in (("plus", "theta_pi"), ("minus", "theta_minus_pi")):
        diff = np.array([[r[0][which] - r[0]["zero"]] for r in results])
        path = Path(out) / f"{name_prefix}_difference_eps16_{sign_name}.csv"
        path.write_text(_format_csv((column,), zetas, diff), encoding="utf-8")
        outputs.append(path.name)
    err_arr = np.array([r[1] for r in results])
    return outputs, err_arr


def figure(name: str, out_dir, qcfg: QuadratureConfig | None = None) -> list:
    """Emit the CSV traces for one named figure; returns written file names.

    gamma_mirrors / omega_mirrors: rate resp. shifts for both ideal mirrors
    on a linear grid.  loglog_nres: nonresonant shift for both mirrors on a
    log grid plus the four closed-form asymptote traces.  gamma_ti /
    omega_ti: pure-axion theta = ±pi traces plus the eps=16
    with-minus-without-axion difference traces.
    """
    if name not in FIGURE_NAMES:
        raise ConfigError(f"unknown figure {name!r}; expected one of "
                          f"{', '.join(FIGURE_NAMES)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    qcfg = qcfg or QuadratureConfig()
    t0 = time.perf_counter()
    outputs = []
    err_max = 0.0
    err_sum = 0.0
    npts = 0

    def collect(result: ScanResult):
        outputs.extend([result.csv_path.name])
        nonlocal err_max, err_sum, npts
        err_max = max(err_max, result.manifest.quad_error_max)
        err_sum += result.manifest.quad_error_mean * result.manifest.points
        npts += result.manifest.points

    try:
        if name == "gamma_mirrors":
            collect(_trace_scan("gamma_mirrors_perfect_conductor",
                                "perfect_conductor", ("rate",), _OSC_GRID, out, qcfg))
            collect(_trace_scan("gamma_mirrors_nonreciprocal_mirror",
                                "nonreciprocal_mirror", ("rate",), _OSC_GRID, out, qcfg))
        elif name == "omega_mirrors":
            for medium in ("perfect_conductor", "nonreciprocal_mirror"):
                for q in ("resonant_shift", "nonresonant_shift"):
                    collect(_trace_scan(f"omega_mirrors_{q}_{medium}", medium,
                                        (q,), _OSC_GRID, out, qcfg))
        elif name == "loglog_nres":
            transition = canonical_transition("plus")
            gamma0 = free_space_rate_formula(transition, SCALED)
            for medium_kind in ("perfect_conductor", "nonreciprocal_mirror"):
                collect(_trace_scan(f"loglog_nres_{medium_kind}", medium_kind,
                                    ("nonresonant_shift",), _LOG_GRID, out, qcfg))
                medium = (PerfectConductor() if medium_kind == "perfect_conductor"
                          else PerfectNonreciprocalMirror())
                zetas = ScanConfig(medium_kind=medium_kind,
                                   quantities=("nonresonant_shift",),
                                   name="tmp", **_LOG_GRID).grid()
                for regime in ("retarded", "nonretarded"):
                    case = AsymptoticCase(regime, medium, "nonresonant_shift")
                    vals = np.array([[asymptotic(case, transition, z) / gamma0]
                                     for z in zetas])
                    path = out / f"loglog_nres_{medium_kind}_{regime}_asymptote.csv"
                    path.write_text(_format_csv(("shift_nres_ratio",), zetas, vals),
                                    encoding="utf-8")
                    outputs.append(path.name)
        elif name in ("gamma_ti", "omega_ti"):
            quantity = "rate" if name == "gamma_ti" else "resonant_shift"
            for theta, tag in ((np.pi, "theta_pi"), (-np.pi, "theta_minus_pi")):
                collect(_trace_scan(f"{name}_pure_axion_{tag}", "axion",
                                    (quantity,), _OSC_GRID, out, qcfg,
                                    theta=float(theta)))
            diff_outputs, diff_errs = _difference_traces(name, quantity,
                                                         _OSC_GRID, out, qcfg)
            outputs.extend(diff_outputs)
            err_max = max(err_max, float(diff_errs.max()))
            err_sum += float(diff_errs.sum())
            npts += diff_errs.size
    except ScanError as exc:
        manifest = RunManifest(command=f"figure:{name}", config={"figure": name},
                               quadrature=_quad_dict(qcfg),
                               threads=worker_count(),
                               wall_time_s=time.perf_counter() - t0,
                               points=npts, quad_error_max=float("nan"),
                               quad_error_mean=float("nan"), status="failed",
                               error=str(exc),
                               outputs=tuple(outputs))
        _write_manifest(out / f"{name}.manifest.json", manifest)
        raise

    manifest = RunManifest(command=f"figure:{name}", config={"figure": name},
                           quadrature=_quad_dict(qcfg), threads=worker_count(),
                           wall_time_s=time.perf_counter() - t0,
                           points=npts, quad_error_max=err_max,
                           quad_error_mean=err_sum / max(npts, 1), status="ok",
                           error=None, outputs=tuple(outputs))
    manifest_name = f"{name}.manifest.json"
    _write_manifest(out / manifest_name, manifest)
    outputs.append(manifest_name)
    return outputs

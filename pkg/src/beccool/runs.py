"""Command implementations shared by the HTTP service and the CLI.

Each run_* function takes a ResolvedConfig, an output format and a thread
count, and returns rendered text. Grid points are independent pure
computations, so sweeps may fan out over a thread pool; results are assembled
in grid order and the output never depends on the pool size.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ._version import VERSION
from .config import ResolvedConfig
from .constants import CONST
from .cooling import (
    ValidityCheck,
    build_chain,
    cooling_factor_direct,
    ground_state_threshold_temperature,
    implied_bias_field,
    qf_quantum_criterion,
    rescale_oscillator,
    steady_phonon_basic,
    steady_phonon_full,
    validity_report,
)
from .coupling import thermal_amplitude, thermal_phonon_number
from .errors import ConfigError
from .formats import csv_document, flatten, fmt_float, json_document
from .hyperfine import (
    StaticField,
    all_states,
    exact_transition_frequency,
    larmor_frequency,
    zeeman_energy,
)
from .lindblad import approximation_residual, mean_phonon, steady_populations

TWO_PI = 2.0 * math.pi

CSV = "csv"
JSON = "json"
TEXT = "text"

DEFAULT_FORMATS = {
    "levels": CSV,
    "steady": JSON,
    "sweep-detuning": CSV,
    "sweep-temperature": CSV,
    "sweep-qf": CSV,
    "master-eq": JSON,
    "validate": TEXT,
}

_MEDIA_TYPES = {
    CSV: "text/csv; charset=utf-8",
    JSON: "application/json",
    TEXT: "text/plain; charset=utf-8",
}


@dataclass(frozen=True)
class RenderedOutput:
    body: str
    media_type: str
    all_pass: bool | None = None


def _pick_format(command: str, fmt: str | None) -> str:
    if fmt is None:
        return DEFAULT_FORMATS[command]
    allowed = (CSV, JSON, TEXT) if command == "validate" else (CSV, JSON)
    if fmt not in allowed:
        raise ConfigError(f"format {fmt!r} not supported for {command}; choose from {', '.join(allowed)}")
    return fmt


def _parallel_rows(fn, items, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def _grid(lo: float, hi: float, points: int, name: str, log: bool = False) -> np.ndarray:
    if points < 2:
        raise ConfigError(f"{name}: need at least 2 grid points, got {points}")
    if not lo < hi:
        raise ConfigError(f"{name}: grid bounds must satisfy min < max, got [{lo}, {hi}]")
    if log:
        if lo <= 0:
            raise ConfigError(f"{name}: log grid needs min > 0, got {lo}")
        return np.logspace(math.log10(lo), math.log10(hi), points)
    return np.linspace(lo, hi, points)


def _render_table(
    resolved: ResolvedConfig,
    fmt: str,
    columns: list[str],
    rows: list[list],
    comments: list[str],
    extras: dict,
) -> RenderedOutput:
    if fmt == CSV:
        body = csv_document(resolved.echo, columns, rows, comments + [f"version: {VERSION}"])
        return RenderedOutput(body=body, media_type=_MEDIA_TYPES[CSV])
    payload = {"config": resolved.echo, "columns": columns, "rows": rows, "version": VERSION}
    payload.update(extras)
    return RenderedOutput(body=json_document(payload), media_type=_MEDIA_TYPES[JSON])


def _render_record(resolved: ResolvedConfig, fmt: str, payload: dict) -> RenderedOutput:
    payload = {"config": resolved.echo, "version": VERSION, **payload}
    if fmt == JSON:
        return RenderedOutput(body=json_document(payload), media_type=_MEDIA_TYPES[JSON])
    rows = [[k, v] for k, v in flatten({k: v for k, v in payload.items() if k != "config"})]
    body = csv_document(resolved.echo, ["key", "value"], rows, [])
    return RenderedOutput(body=body, media_type=_MEDIA_TYPES[CSV])


def run_levels(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Zeeman level energies and transition frequencies over a bias-field grid."""
    fmt = _pick_format("levels", fmt)
    grid = _grid(
        resolved["levels_B_min_T"], resolved["levels_B_max_T"], resolved["levels_B_points"],
        "levels B grid",
    )
    states = all_states()
    columns = ["B_tesla"]
    columns += [f"E_over_h_F{s.F}_mF{s.mF}_hz" for s in states]
    columns += ["omega_L_linear_hz", "omega_L_exact_hz"]

    def row(B: float) -> list:
        field = StaticField(float(B))
        cells = [field.B]
        cells += [zeeman_energy(s, field) / CONST.h for s in states]
        cells.append(larmor_frequency(field) / TWO_PI)
        cells.append(exact_transition_frequency(field) / TWO_PI)
        return cells

    rows = _parallel_rows(row, list(grid), threads)
    return _render_table(resolved, fmt, columns, rows, [], {})


def run_steady(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Full steady-state record at the configured operating point."""
    fmt = _pick_format("steady", fmt)
    params = resolved.params
    result = steady_phonon_full(params)
    chain = build_chain(params)
    omega_L = params.osc.omega_m - params.detuning_delta
    payload = {
        "result": {
            "n_th": result.n_th,
            "n_steady": result.n_steady,
            "cooling_factor": result.cooling_factor,
            "kappa_per_s": result.kappa,
            "g0_rad_s": result.g0,
            "gN_rad_s": result.gN,
            "tau_s": result.tau,
            "gamma_per_s": result.gamma,
        },
        "chain": {
            "gradient_Gm_T_per_m": chain.gradient_Gm,
            "a_qm_m": chain.a_qm,
            "g0_rad_s": chain.g0,
            "gN_rad_s": chain.gN,
            "rabi_Omega_rad_s": chain.rabi_Omega,
            "tau_s": chain.tau,
            "thermal_amplitude_m": thermal_amplitude(params.osc),
        },
        "resonance": {
            "omega_m_rad_s": params.osc.omega_m,
            "omega_L_rad_s": omega_L,
            "omega_L_hz": omega_L / TWO_PI,
            "detuning_rad_s": params.detuning_delta,
            "detuning_x": params.detuning_x,
            "implied_B_T": implied_bias_field(params),
            "static_B_T": resolved.static_B,
        },
        "validity": _validity_payload(resolved),
    }
    return _render_record(resolved, fmt, payload)


def run_sweep_detuning(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Steady phonon number versus dimensionless detuning x = hbar*delta/mu_c."""
    fmt = _pick_format("sweep-detuning", fmt)
    lo, hi = resolved["sweep_x_min"], resolved["sweep_x_max"]
    if not (0.0 < lo and hi < 1.0):
        raise ConfigError(f"detuning sweep needs 0 < min < max < 1, got [{lo}, {hi}]")
    grid = _grid(lo, hi, resolved["sweep_x_points"], "detuning sweep")
    params = resolved.params

    def row(x: float) -> list:
        delta = float(x) * params.mu_c / CONST.hbar
        res = steady_phonon_full(replace(params, detuning_delta=delta))
        return [float(x), res.n_steady]

    rows = _parallel_rows(row, list(grid), threads)
    values = [r[1] for r in rows]
    i_min = int(np.argmin(values))
    minimum = {"x": rows[i_min][0], "n_steady": rows[i_min][1]}
    comments = [f"minimum: x={fmt_float(minimum['x'])},n_steady={fmt_float(minimum['n_steady'])}"]
    return _render_table(resolved, fmt, ["x", "n_steady"], rows, comments, {"minimum": minimum})


def run_sweep_temperature(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Initial-temperature dependence plus the ground-state threshold."""
    fmt = _pick_format("sweep-temperature", fmt)
    lo, hi = resolved["sweep_T_min_K"], resolved["sweep_T_max_K"]
    if lo < 0:
        raise ConfigError(f"temperature sweep needs min >= 0, got {lo}")
    grid = _grid(lo, hi, resolved["sweep_T_points"], "temperature sweep")
    params = resolved.params

    def row(T: float) -> list:
        p = replace(params, osc=replace(params.osc, temperature_T=float(T)))
        res = steady_phonon_full(p)
        return [float(T), res.n_th, res.n_steady]

    rows = _parallel_rows(row, list(grid), threads)
    threshold = ground_state_threshold_temperature(params)
    comments = [f"ground-state-threshold-K: {fmt_float(threshold)}"]
    return _render_table(
        resolved, fmt, ["T_K", "n_th", "n_steady"], rows, comments,
        {"ground_state_threshold_K": threshold},
    )


def run_sweep_qf(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Steady phonon number over a log-spaced (Q, f) plane at fixed tip and trap.

    The same device is rescaled to each grid point: the tip gradient, effective
    mass, trap and detuning fraction stay fixed while a_qm, g0, kappa and n_th
    track the frequency. Emits the ground-state contour <n>_s = 1, which is
    exact because the cooling factor is linear in Q.
    """
    fmt = _pick_format("sweep-qf", fmt)
    q_grid = _grid(resolved["sweep_Q_min"], resolved["sweep_Q_max"], resolved["sweep_Q_points"],
                   "Q sweep", log=True)
    f_grid = _grid(resolved["sweep_f_min_hz"], resolved["sweep_f_max_hz"], resolved["sweep_f_points"],
                   "f sweep", log=True)
    params = resolved.params
    T = params.osc.temperature_T

    def row(point: tuple[float, float]) -> list:
        Q, f = point
        res = steady_phonon_full(rescale_oscillator(params, TWO_PI * float(f), float(Q)))
        return [float(Q), float(f), res.n_steady]

    points = [(float(Q), float(f)) for Q in q_grid for f in f_grid]
    rows = _parallel_rows(row, points, threads)

    contour = []
    for f in f_grid:
        omega = TWO_PI * float(f)
        n_th = thermal_phonon_number(omega, T)
        if n_th <= 1.0:
            continue  # ground state at any Q on this column
        factor_per_Q = cooling_factor_direct(rescale_oscillator(params, omega, 1.0))
        q_star = (n_th - 1.0) / factor_per_Q
        if q_grid[0] <= q_star <= q_grid[-1]:
            contour.append({"f_m_hz": float(f), "quality_Q": q_star})
    comments = [
        f"ground-state-contour: f_m_hz={fmt_float(c['f_m_hz'])},quality_Q={fmt_float(c['quality_Q'])}"
        for c in contour
    ]
    return _render_table(
        resolved, fmt, ["quality_Q", "f_m_hz", "n_steady"], rows, comments, {"contour": contour},
    )


def run_master_eq(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Exact truncated-Fock steady state versus the closed-form value."""
    fmt = _pick_format("master-eq", fmt)
    cfg = resolved.oracle_config()
    p = steady_populations(cfg)
    mean = mean_phonon(p)
    closed = steady_phonon_basic(cfg.n_th, cfg.g, cfg.tau, cfg.gamma, cfg.kappa)
    residual = approximation_residual(p, cfg.g, cfg.tau)
    payload = {
        "oracle": {
            "g_rad_s": cfg.g,
            "tau_s": cfg.tau,
            "gamma_per_s": cfg.gamma,
            "kappa_per_s": cfg.kappa,
            "n_th": cfg.n_th,
            "pump": cfg.pump,
            "n_max": p.n_max,
            "dt_s": cfg.dt,
            "mean_phonon": mean,
            "tail_mass": p.tail_mass,
        },
        "closed_form": {"n_steady": closed},
        "ratio_oracle_to_closed_form": mean / closed if closed > 0 else math.inf,
        "residual": {
            "exact": residual.exact,
            "quadratic_estimate": residual.quadratic_estimate,
            "ratio": residual.ratio,
        },
    }
    return _render_record(resolved, fmt, payload)


def _validity_payload(resolved: ResolvedConfig) -> dict:
    params = resolved.params
    report = validity_report(params, field_B=resolved.static_B)
    osc = params.osc
    qf = qf_quantum_criterion(osc.omega_m, osc.quality_Q, osc.temperature_T)
    checks = list(report.checks)
    checks.append(
        ValidityCheck(
            name="qf_product_hz",
            value=qf.product_hz,
            threshold=qf.bound_hz,
            comparison=">",
            passed=qf.passed,
        )
    )
    return {
        "checks": [
            {
                "name": c.name,
                "value": c.value,
                "threshold": c.threshold,
                "comparison": c.comparison,
                "passed": c.passed,
            }
            for c in checks
        ],
        "all_pass": all(c.passed for c in checks),
    }


def run_validate(resolved: ResolvedConfig, fmt: str | None = None, threads: int = 1) -> RenderedOutput:
    """Regime checks: perturbative window, small oscillation, weak field, Q*f bound."""
    fmt = _pick_format("validate", fmt)
    validity = _validity_payload(resolved)
    if fmt == TEXT:
        lines = ["validity report"]
        for c in validity["checks"]:
            status = "pass" if c["passed"] else "fail"
            lines.append(
                f"{c['name']}: value={fmt_float(c['value'])} "
                f"threshold={fmt_float(c['threshold'])} comparison={c['comparison']} -> {status}"
            )
        failed = sum(1 for c in validity["checks"] if not c["passed"])
        lines.append("all checks passed" if failed == 0 else f"{failed} check(s) failed")
        return RenderedOutput(
            body="\n".join(lines) + "\n",
            media_type=_MEDIA_TYPES[TEXT],
            all_pass=validity["all_pass"],
        )
    out = _render_record(resolved, fmt, validity)
    return RenderedOutput(body=out.body, media_type=out.media_type, all_pass=validity["all_pass"])


COMMANDS = {
    "levels": run_levels,
    "steady": run_steady,
    "sweep-detuning": run_sweep_detuning,
    "sweep-temperature": run_sweep_temperature,
    "sweep-qf": run_sweep_qf,
    "master-eq": run_master_eq,
    "validate": run_validate,
}

"""Run configuration: flat key-value documents with baseline defaults.

Accepted sources: `key = value` lines (# comments allowed) or a JSON object
with the same keys. Every key has a default, so the empty config is the
reference parameter set. Unknown keys are rejected. Parsing always produces a
fully resolved echo (auto values replaced by the numbers actually used) that
can be fed back in unchanged.
"""

import json
import math
from dataclasses import dataclass

from .constants import CONST
from .errors import ConfigError, DomainError
from .bec_trap import CHEMICAL_POTENTIAL_MODES, TrapParams, chemical_potential, transition_rate
from .cooling import HybridParams, build_chain, decay_rate
from .coupling import (
    MagneticTip,
    OscillatorParams,
    thermal_phonon_number,
    tip_for_coupling,
    zero_point_amplitude,
)
from .hyperfine import field_for_larmor
from .lindblad import PUMP_MODES, default_n_max, stable_dt, OracleConfig

TWO_PI = 2.0 * math.pi

# (default, kind) per key; None default means resolved from the others.
_FLOAT = "float"
_INT = "int"
_STR = "str"

KEY_SPECS: dict[str, tuple[object, str]] = {
    "f_m_hz": (1.0e6, _FLOAT),
    "quality_Q": (1.0e5, _FLOAT),
    "m_eff_kg": (1.0e-16, _FLOAT),
    "temperature_K": (0.05, _FLOAT),
    "g0_rad_s": (8.0, _FLOAT),            # ignored when tip_moment_A_m2 is given
    "tip_moment_A_m2": (None, _FLOAT),    # alternative to g0_rad_s
    "tip_distance_m": (1.5e-6, _FLOAT),
    "atom_number": (5_000_000, _INT),
    "trap_fx_hz": (250.0, _FLOAT),
    "trap_fy_hz": (250.0, _FLOAT),
    "trap_fz_hz": (19.0, _FLOAT),
    "mu_c_mode": ("calibrated", _STR),
    "detuning_x": (1.0 / 3.0, _FLOAT),
    "static_B_T": (None, _FLOAT),         # auto: implied by omega_L = omega_m - delta
    "n_max": (None, _INT),                # auto: max(ceil(10*n_th)+50, 200)
    "dt_s": (None, _FLOAT),               # auto: stability margin 2
    "oracle_g": ("gN", _STR),
    "oracle_pump": ("sin2", _STR),
    "sweep_x_min": (0.01, _FLOAT),
    "sweep_x_max": (0.99, _FLOAT),
    "sweep_x_points": (99, _INT),
    "sweep_T_min_K": (0.0, _FLOAT),
    "sweep_T_max_K": (4.2, _FLOAT),
    "sweep_T_points": (85, _INT),
    "sweep_Q_min": (1.0e3, _FLOAT),
    "sweep_Q_max": (1.0e7, _FLOAT),
    "sweep_Q_points": (9, _INT),
    "sweep_f_min_hz": (1.0e3, _FLOAT),
    "sweep_f_max_hz": (1.0e7, _FLOAT),
    "sweep_f_points": (9, _INT),
    "levels_B_min_T": (0.0, _FLOAT),
    "levels_B_max_T": (0.3, _FLOAT),
    "levels_B_points": (61, _INT),
}

_ENUMS = {
    "mu_c_mode": CHEMICAL_POTENTIAL_MODES,
    "oracle_g": ("g0", "gN"),
    "oracle_pump": PUMP_MODES,
}


@dataclass(frozen=True)
class ResolvedConfig:
    """Validated configuration plus the physics objects it describes."""

    echo: dict
    params: HybridParams
    static_B: float
    n_max: int
    dt: float

    def __getitem__(self, key: str):
        return self.echo[key]

    def oracle_config(self) -> OracleConfig:
        chain = build_chain(self.params)
        g = chain.g0 if self.echo["oracle_g"] == "g0" else chain.gN
        osc = self.params.osc
        return OracleConfig(
            g=g,
            tau=chain.tau,
            gamma=transition_rate(self.params.detuning_delta, self.params.mu_c, chain.rabi_Omega),
            kappa=decay_rate(osc.omega_m, osc.quality_Q),
            n_th=thermal_phonon_number(osc.omega_m, osc.temperature_T),
            n_max=self.n_max,
            dt=self.dt,
            pump=self.echo["oracle_pump"],
        )


def parse_config_text(text: str) -> dict:
    """Parse `key = value` lines or a JSON object into a raw config dict."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("JSON config must be an object")
        return raw

    raw: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected `key = value`, got {line.strip()!r}")
        key, _, value = body.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"line {lineno}: expected `key = value`, got {line.strip()!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = _parse_scalar(value)
    return raw


def _parse_scalar(value: str):
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        pass
    return value


def _as_float(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config key {key!r} must be a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise ConfigError(f"config key {key!r} must be finite, got {value!r}")
    return v


def _as_int(key: str, value) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"config key {key!r} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer() and abs(value) < 2**53:
        return int(value)
    raise ConfigError(f"config key {key!r} must be an integer, got {value!r}")


def resolve_config(raw: dict) -> ResolvedConfig:
    """Validate a raw config dict and build the physics objects it describes.

    Key/type/enum problems raise ConfigError; physically invalid values
    surface as DomainError from the parameter types.
    """
    unknown = sorted(set(raw) - set(KEY_SPECS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    if "tip_moment_A_m2" in raw and "g0_rad_s" in raw:
        raise ConfigError("g0_rad_s and tip_moment_A_m2 are mutually exclusive")

    values: dict = {}
    for key, (default, kind) in KEY_SPECS.items():
        value = raw.get(key, default)
        if value is None:
            values[key] = None
        elif kind == _FLOAT:
            values[key] = _as_float(key, value)
        elif kind == _INT:
            values[key] = _as_int(key, value)
        else:
            values[key] = str(value)
    for key, allowed in _ENUMS.items():
        if values[key] not in allowed:
            raise ConfigError(
                f"config key {key!r} must be one of {', '.join(allowed)}; got {values[key]!r}"
            )

    osc = OscillatorParams(
        omega_m=TWO_PI * values["f_m_hz"],
        quality_Q=values["quality_Q"],
        m_eff=values["m_eff_kg"],
        temperature_T=values["temperature_K"],
    )
    trap = TrapParams(
        omega_x=TWO_PI * values["trap_fx_hz"],
        omega_y=TWO_PI * values["trap_fy_hz"],
        omega_z=TWO_PI * values["trap_fz_hz"],
        atom_number_N=values["atom_number"],
    )
    mu_c = chemical_potential(trap, values["mu_c_mode"])
    delta = values["detuning_x"] * mu_c / CONST.hbar

    if values["tip_moment_A_m2"] is not None:
        tip = MagneticTip(moment=values["tip_moment_A_m2"], distance_d0=values["tip_distance_m"])
        use_tip_moment = True
    else:
        tip = tip_for_coupling(values["g0_rad_s"], zero_point_amplitude(osc), values["tip_distance_m"])
        use_tip_moment = False

    params = HybridParams(osc=osc, tip=tip, trap=trap, mu_c=mu_c, detuning_delta=delta)

    if values["static_B_T"] is not None:
        static_B = values["static_B_T"]
        if static_B < 0:
            raise DomainError(f"static field must be >= 0, got {static_B}")
    else:
        static_B = field_for_larmor(osc.omega_m - delta).B

    n_th = thermal_phonon_number(osc.omega_m, osc.temperature_T)
    n_max = values["n_max"] if values["n_max"] is not None else default_n_max(n_th)
    if n_max < 2:
        raise ConfigError(f"n_max must be >= 2, got {n_max}")
    if values["dt_s"] is not None:
        dt = values["dt_s"]
        if dt <= 0:
            raise ConfigError(f"dt_s must be > 0, got {dt}")
    else:
        chain = build_chain(params)
        probe = OracleConfig(
            g=chain.gN,
            tau=chain.tau,
            gamma=transition_rate(delta, mu_c, chain.rabi_Omega),
            kappa=decay_rate(osc.omega_m, osc.quality_Q),
            n_th=n_th,
        )
        dt = stable_dt(probe, n_max)

    echo = dict(values)
    echo["static_B_T"] = static_B
    echo["n_max"] = n_max
    echo["dt_s"] = dt
    if use_tip_moment:
        del echo["g0_rad_s"]
    else:
        del echo["tip_moment_A_m2"]

    return ResolvedConfig(echo=echo, params=params, static_B=static_B, n_max=n_max, dt=dt)

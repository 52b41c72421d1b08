"""Exact master-equation oracle on a truncated Fock space.

One atom interacting resonantly with the mode for a window tau applies the
quantum map (trace over the departing atom)

    p'_n = cos^2(phi_n) p_n + sin^2(phi_{n+1}) p_{n+1},   phi_n = g*sqrt(n)*tau/2,

and atoms arrive at rate Gamma, so coarse-graining gives the generator
Gamma*(map - identity) plus the usual thermal dissipator at rate kappa and
occupancy n_th. Both pieces map diagonal density operators to diagonal ones,
so the oracle tracks populations only; a dense full-matrix harness exists to
certify that the diagonal restriction is exact.

The pump weight sin^2(phi_n) can be swapped for its linearizations
(g^2 tau^2/4)*n (the true small-angle limit) or (g^2 tau^2/8)*n (half of it,
the coefficient the closed-form steady state uses) to quantify the
approximation error of the closed form.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OracleError

PUMP_MODES = ("sin2", "linear_quarter", "linear_eighth")

_TAIL_LIMIT = 1e-6
_MAX_ENLARGE = 6


@dataclass(frozen=True)
class PopulationVector:
    """Diagonal Fock populations p_0..p_nmax of the mechanical mode."""

    populations: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.populations, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise DomainError("populations must be a non-empty 1-D array")
        if np.any(p < -1e-12) or not np.all(np.isfinite(p)):
            raise DomainError("populations must be finite and >= -1e-12")
        p = np.where(p < 0.0, 0.0, p)
        total = p.sum()
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"populations must sum to 1 within 1e-9, got {total!r}")
        object.__setattr__(self, "populations", p)

    @property
    def n_max(self) -> int:
        return self.populations.size - 1

    @property
    def tail_mass(self) -> float:
        return float(self.populations[-1])


@dataclass(frozen=True)
class OracleConfig:
    """Inputs of the oracle: map parameters, rates, truncation and step size.

    n_max=None auto-sizes the truncation to max(ceil(10*n_th)+50, 200);
    dt=None picks a step with stability margin 2.
    """

    g: float
    tau: float
    gamma: float
    kappa: float
    n_th: float
    n_max: int | None = None
    dt: float | None = None
    pump: str = "sin2"

    def __post_init__(self) -> None:
        for name in ("g", "tau", "gamma", "kappa", "n_th"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"oracle parameter {name} must be finite and >= 0, got {v}")
        if self.n_max is not None and (int(self.n_max) != self.n_max or self.n_max < 2):
            raise DomainError(f"n_max must be an integer >= 2, got {self.n_max}")
        if self.dt is not None and not (math.isfinite(self.dt) and self.dt > 0):
            raise DomainError(f"dt must be finite and > 0, got {self.dt}")
        if self.pump not in PUMP_MODES:
            raise DomainError(f"unknown pump mode {self.pump!r}; choose from {PUMP_MODES}")


def default_n_max(n_th: float) -> int:
    """Truncation that keeps the thermal tail far below the 1e-6 guard."""
    return max(math.ceil(10.0 * n_th) + 50, 200)


def resolved_n_max(cfg: OracleConfig) -> int:
    return cfg.n_max if cfg.n_max is not None else default_n_max(cfg.n_th)


def stable_dt(cfg: OracleConfig, n_max: int | None = None) -> float:
    """Explicit step with dt*(Gamma + kappa*(n_th+1)*n_max) = 0.05 (margin 2)."""
    if n_max is None:
        n_max = resolved_n_max(cfg)
    rate = cfg.gamma + cfg.kappa * (cfg.n_th + 1.0) * n_max
    if rate <= 0.0:
        raise OracleError("no dissipation channels: Gamma and kappa are both zero")
    return 0.05 / rate


def pump_weights(cfg: OracleConfig, n_max: int) -> np.ndarray:
    """Per-level pump weights s_n multiplying Gamma in the n -> n-1 flux."""
    n = np.arange(n_max + 1, dtype=float)
    if cfg.pump == "sin2":
        return np.sin(0.5 * cfg.g * cfg.tau * np.sqrt(n)) ** 2
    if cfg.pump == "linear_quarter":
        return (cfg.g * cfg.tau) ** 2 / 4.0 * n
    return (cfg.g * cfg.tau) ** 2 / 8.0 * n


def jc_kraus_map(p: PopulationVector, g: float, tau: float) -> PopulationVector:
    """Apply one interaction window exactly: p'_n = cos^2(phi_n) p_n + sin^2(phi_{n+1}) p_{n+1}."""
    if g < 0 or tau < 0:
        raise DomainError("g and tau must be >= 0")
    pop = p.populations
    n = np.arange(pop.size, dtype=float)
    s = np.sin(0.5 * g * tau * np.sqrt(n)) ** 2
    out = (1.0 - s) * pop
    out[:-1] += s[1:] * pop[1:]
    return PopulationVector(out)


def _rates(cfg: OracleConfig, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Down-flux coefficients D_n (n -> n-1) and up-flux U_n (n -> n+1).

    The top level has no up-flux, which closes the truncated system and makes
    every generator below exactly trace preserving.
    """
    n = np.arange(n_max + 1, dtype=float)
    down = cfg.kappa * (cfg.n_th + 1.0) * n + cfg.gamma * pump_weights(cfg, n_max)
    up = cfg.kappa * cfg.n_th * (n + 1.0)
    up[-1] = 0.0
    return down, up


def evolve_populations(p0: PopulationVector, cfg: OracleConfig, t_final: float) -> PopulationVector:
    """Integrate the rate equations with explicit Euler steps up to t_final.

    Raises if the step violates the stability margin, if the trace drifts
    beyond 1e-9, or if probability piles up at the truncation edge.
    """
    if not (math.isfinite(t_final) and t_final >= 0):
        raise DomainError(f"t_final must be finite and >= 0, got {t_final}")
    n_max = p0.n_max
    dt = cfg.dt if cfg.dt is not None else stable_dt(cfg, n_max)
    if dt * (cfg.gamma + cfg.kappa * (cfg.n_th + 1.0) * n_max) >= 0.1:
        raise OracleError(
            "unstable explicit step: dt*(Gamma + kappa*(n_th+1)*n_max) must stay below 0.1"
        )
    if t_final == 0.0:
        return p0

    down, up = _rates(cfg, n_max)
    steps = max(1, math.ceil(t_final / dt))
    h = t_final / steps
    p = p0.populations.copy()
    for _ in range(steps):
        flux_down = down * p
        flux_up = up * p
        dp = -flux_down - flux_up
        dp[:-1] += flux_down[1:]
        dp[1:] += flux_up[:-1]
        p += h * dp
        drift = abs(p.sum() - 1.0)
        if drift > 1e-9:
            raise OracleError(f"trace drifted by {drift!r} during evolution")
    if p[-1] >= _TAIL_LIMIT:
        raise OracleError(
            f"truncation too small: tail mass {p[-1]!r} at n_max={n_max}; enlarge n_max"
        )
    return PopulationVector(p)


def _steady_from_rates(cfg: OracleConfig, n_max: int) -> np.ndarray:
    """Detailed-balance solution of the birth-death chain, normalized."""
    down, up = _rates(cfg, n_max)
    num = up[:-1]
    den = down[1:]
    ratios = np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)
    p = np.concatenate(([1.0], np.cumprod(ratios)))
    total = p.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise OracleError("steady-state normalization failed")
    return p / total


def steady_populations(cfg: OracleConfig) -> PopulationVector:
    """Stationary populations of the pump-plus-dissipator generator.

    The generator is tridiagonal (only n -> n+-1 fluxes), so the stationary
    state follows from detailed balance in closed form. With an auto-sized
    truncation the solver doubles n_max until the tail guard is met.
    """
    if cfg.gamma + cfg.kappa <= 0.0:
        raise OracleError("singular system: Gamma = kappa = 0 has no unique steady state")
    n_max = resolved_n_max(cfg)
    attempts = _MAX_ENLARGE if cfg.n_max is None else 0
    p = _steady_from_rates(cfg, n_max)
    for _ in range(attempts):
        if p[-1] < _TAIL_LIMIT:
            break
        n_max *= 2
        p = _steady_from_rates(cfg, n_max)
    if p[-1] >= _TAIL_LIMIT:
        raise OracleError(
            f"truncation too small: steady tail mass {p[-1]!r} at n_max={n_max}; enlarge n_max"
        )
    return PopulationVector(p)


def mean_phonon(p: PopulationVector) -> float:
    """First moment sum(n * p_n)."""
    pop = p.populations
    return float(np.arange(pop.size, dtype=float) @ pop)


@dataclass(frozen=True)
class ApproximationResidual:
    """Energy drained per window: exact trace versus the quadratic estimate.

    exact = sum p_n sin^2(phi_n); quadratic_estimate = g^2 tau^2 <n>/8. The
    true small-angle limit of the exact value is g^2 tau^2 <n>/4, so the ratio
    approaches 2 for small angles and the estimate undercounts by half there.
    """

    exact: float
    quadratic_estimate: float
    ratio: float


def approximation_residual(p: PopulationVector, g: float, tau: float) -> ApproximationResidual:
    """Quantify the quadratic (1/8-coefficient) estimate against the exact drain."""
    if g < 0 or tau < 0:
        raise DomainError("g and tau must be >= 0")
    pop = p.populations
    n = np.arange(pop.size, dtype=float)
    exact = float(pop @ np.sin(0.5 * g * tau * np.sqrt(n)) ** 2)
    estimate = g * g * tau * tau / 8.0 * mean_phonon(p)
    if estimate > 0.0:
        ratio = exact / estimate
    elif exact == 0.0:
        ratio = math.nan
    else:
        ratio = math.inf
    return ApproximationResidual(exact=exact, quadratic_estimate=estimate, ratio=ratio)


# ---------------------------------------------------------------------------
# Dense full-matrix validation harness (small n_max only).
# ---------------------------------------------------------------------------

def _superop(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix of rho -> A rho B acting on row-major vec(rho)."""
    return np.kron(A, B.T)


def liouvillian_matrix(cfg: OracleConfig, n_max: int) -> np.ndarray:
    """Dense generator Gamma*(map - 1) + dissipator on vec(rho), (d^2, d^2).

    The interaction map enters through its Kraus operators
    K0 = diag(cos(phi_n)) and K1[n-1, n] = sin(phi_n).
    """
    if n_max > 60:
        raise DomainError("full-matrix harness is meant for n_max <= 60")
    d = n_max + 1
    n = np.arange(d, dtype=float)
    phi = 0.5 * cfg.g * cfg.tau * np.sqrt(n)
    K0 = np.diag(np.cos(phi))
    K1 = np.zeros((d, d))
    K1[np.arange(d - 1), np.arange(1, d)] = np.sin(phi[1:])

    eye = np.eye(d)
    a = np.zeros((d, d))
    a[np.arange(d - 1), np.arange(1, d)] = np.sqrt(n[1:])
    ad = a.T

    L = cfg.gamma * (_superop(K0, K0.T) + _superop(K1, K1.T) - np.eye(d * d))

    def lindblad_term(op: np.ndarray) -> np.ndarray:
        opd = op.T.conj()
        anti = opd @ op
        return _superop(op, opd) - 0.5 * _superop(anti, eye) - 0.5 * _superop(eye, anti)

    L += cfg.kappa * (cfg.n_th + 1.0) * lindblad_term(a)
    L += cfg.kappa * cfg.n_th * lindblad_term(ad)
    return L


def steady_density_matrix(cfg: OracleConfig, n_max: int) -> np.ndarray:
    """Stationary density matrix of the dense generator via least squares.

    Solves L vec(rho) = 0 subject to trace 1 by appending the trace row;
    returns the Hermitized (d, d) matrix.
    """
    if cfg.gamma + cfg.kappa <= 0.0:
        raise OracleError("singular system: Gamma = kappa = 0 has no unique steady state")
    d = n_max + 1
    L = liouvillian_matrix(cfg, n_max)
    trace_row = np.eye(d).reshape(1, d * d)
    A = np.vstack([L, trace_row])
    b = np.zeros(d * d + 1)
    b[-1] = 1.0
    vec, *_ = np.linalg.lstsq(A, b, rcond=None)
    rho = vec.reshape(d, d)
    return 0.5 * (rho + rho.T)

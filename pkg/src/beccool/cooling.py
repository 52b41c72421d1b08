"""Closed-form steady-state cooling theory.

During each interaction window of length tau = pi/Omega_R one resonant atom is
spin-flipped out of the trap, carrying away up to one phonon. Balancing that
drain against the thermal bath gives the steady occupancy

    <n>_s = n_th / (1 + g^2 tau^2 Gamma / (8 kappa)),

evaluated here both through the coupling chain and through the equivalent
direct form that uses tau^2*Gamma = pi^2*zeta(delta) to cancel Omega_R.
"""

import math
from dataclasses import dataclass, replace

from .constants import CONST
from .errors import DomainError, OracleError
from .bec_trap import TrapParams, transition_rate, zeta
from .coupling import (
    CouplingChain,
    MagneticTip,
    OscillatorParams,
    collective_coupling,
    dipole_gradient,
    interaction_time,
    rabi_frequency,
    single_atom_coupling,
    thermal_amplitude,
    thermal_phonon_number,
    zero_point_amplitude,
)
from .hyperfine import field_for_larmor

__all__ = [
    "HybridParams",
    "QfCriterion",
    "SteadyStateResult",
    "ValidityCheck",
    "ValidityReport",
    "argmin_detuning_x",
    "build_chain",
    "cooling_factor_direct",
    "decay_rate",
    "ground_state_threshold_temperature",
    "implied_bias_field",
    "optimal_detuning",
    "qf_quantum_criterion",
    "rescale_oscillator",
    "steady_phonon_basic",
    "steady_phonon_full",
    "thermal_phonon_number",
    "validity_report",
]


@dataclass(frozen=True)
class HybridParams:
    """Complete parameter set of the coupled oscillator-condensate system.

    The bias field is implied by the resonance bookkeeping: the atomic
    splitting is tuned to omega_L = omega_m - detuning_delta, which must stay
    positive.
    """

    osc: OscillatorParams
    tip: MagneticTip
    trap: TrapParams
    mu_c: float
    detuning_delta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu_c) and self.mu_c > 0):
            raise DomainError(f"chemical potential must be finite and > 0, got {self.mu_c}")
        if not math.isfinite(self.detuning_delta):
            raise DomainError("detuning must be finite")
        if self.osc.omega_m - self.detuning_delta <= 0:
            raise DomainError(
                "resonance requires omega_L = omega_m - delta > 0, got "
                f"omega_m={self.osc.omega_m}, delta={self.detuning_delta}"
            )

    @property
    def detuning_x(self) -> float:
        """Dimensionless detuning hbar*delta/mu_c."""
        return CONST.hbar * self.detuning_delta / self.mu_c


@dataclass(frozen=True)
class ValidityCheck:
    """One named regime check: passes when value <comparison> threshold holds."""

    name: str
    value: float
    threshold: float
    comparison: str  # "<" or ">"
    passed: bool


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple[ValidityCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class QfCriterion:
    """Quantum-coherence criterion Q*f > k_B*T/h (both sides in Hz)."""

    product_hz: float
    bound_hz: float
    passed: bool


@dataclass(frozen=True)
class SteadyStateResult:
    """Everything the steady-state solver knows about one parameter set."""

    n_th: float
    n_steady: float
    cooling_factor: float
    kappa: float
    g0: float
    gN: float
    tau: float
    gamma: float
    validity: ValidityReport


def decay_rate(omega: float, Q: float) -> float:
    """Mechanical energy decay rate kappa = omega/Q, 1/s."""
    if not (math.isfinite(Q) and Q > 0):
        raise DomainError(f"quality factor must be finite and > 0, got {Q}")
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be finite and > 0, got {omega}")
    return omega / Q


def build_chain(params: HybridParams) -> CouplingChain:
    """Evaluate the full coupling chain for one parameter set."""
    gradient = dipole_gradient(params.tip)
    a_qm = zero_point_amplitude(params.osc)
    g0 = single_atom_coupling(gradient, a_qm)
    gN = collective_coupling(g0, params.trap.atom_number_N)
    rabi = rabi_frequency(gradient, thermal_amplitude(params.osc))
    return CouplingChain(
        gradient_Gm=gradient,
        a_qm=a_qm,
        g0=g0,
        gN=gN,
        rabi_Omega=rabi,
        tau=interaction_time(rabi),
    )


def implied_bias_field(params: HybridParams) -> float:
    """Bias field (T) that tunes the atomic splitting to omega_m - delta."""
    return field_for_larmor(params.osc.omega_m - params.detuning_delta).B


def validity_report(
    params: HybridParams,
    chain: CouplingChain | None = None,
    field_B: float | None = None,
) -> ValidityReport:
    """Check the regime assumptions behind the closed-form theory.

    g0*tau/2 < 1 keeps the single-window phonon transfer perturbative;
    beta/d0 < 0.01 keeps the tip gradient effectively constant over the
    oscillation; B/B_hf < 0.1 keeps the Zeeman splitting linear. beta defaults
    to the thermal amplitude unless the oscillator carries an explicit one.
    """
    if chain is None:
        chain = build_chain(params)
    if field_B is None:
        field_B = implied_bias_field(params)
    beta = params.osc.amplitude_beta
    if beta is None:
        beta = thermal_amplitude(params.osc)

    def less_than(name: str, value: float, threshold: float) -> ValidityCheck:
        return ValidityCheck(name, value, threshold, "<", value < threshold)

    return ValidityReport(
        checks=(
            less_than("g0_tau_half", chain.g0 * chain.tau / 2.0, 1.0),
            less_than("beta_over_d0", beta / params.tip.distance_d0, 0.01),
            less_than("field_over_crossover", field_B / CONST.B_hf, 0.1),
        )
    )


def steady_phonon_basic(n_th: float, g: float, tau: float, gamma: float, kappa: float) -> float:
    """Steady occupancy n_th/(1 + g^2 tau^2 gamma/(8 kappa)).

    The caller chooses g: the single-atom g0 for one emitter, or the
    collective gN for the sqrt(N)-enhanced channel.
    """
    if not (math.isfinite(kappa) and kappa > 0):
        raise DomainError(f"kappa must be finite and > 0, got {kappa}")
    for name, v in (("n_th", n_th), ("g", g), ("tau", tau), ("gamma", gamma)):
        if not (math.isfinite(v) and v >= 0):
            raise DomainError(f"{name} must be finite and >= 0, got {v}")
    return n_th / (1.0 + g * g * tau * tau * gamma / (8.0 * kappa))


def cooling_factor_direct(params: HybridParams) -> float:
    """Cooling factor (pi*mu_B/(8*hbar))^2 * N * zeta * (G*a_qm)^2 * Q/omega.

    This is the chain factor g_N^2 tau^2 Gamma/(8 kappa) with Omega_R cancelled
    through tau^2*Gamma = pi^2*zeta(delta); no thermal amplitude enters.
    """
    gradient = dipole_gradient(params.tip)
    a_qm = zero_point_amplitude(params.osc)
    z = zeta(params.detuning_delta, params.mu_c)
    scale = math.pi * CONST.mu_B / (8.0 * CONST.hbar)
    return (
        scale * scale
        * params.trap.atom_number_N
        * z
        * (gradient * a_qm) ** 2
        * params.osc.quality_Q
        / params.osc.omega_m
    )


def steady_phonon_full(params: HybridParams) -> SteadyStateResult:
    """Steady state via the coupling chain, cross-checked against the direct form.

    The two evaluation routes are algebraically identical; they are both
    computed every time and must agree to 1e-10 relative, which guards the
    Omega_R bookkeeping against regressions.
    """
    x = params.detuning_x
    if not 0.0 < x < 1.0:
        raise DomainError(f"steady state needs 0 < hbar*delta/mu_c < 1, got {x}")
    chain = build_chain(params)
    n_th = thermal_phonon_number(params.osc.omega_m, params.osc.temperature_T)
    kappa = decay_rate(params.osc.omega_m, params.osc.quality_Q)
    gamma = transition_rate(params.detuning_delta, params.mu_c, chain.rabi_Omega)

    factor_chain = chain.gN ** 2 * chain.tau ** 2 * gamma / (8.0 * kappa)
    factor_direct = cooling_factor_direct(params)
    scale = max(factor_chain, factor_direct, 1.0)
    if abs(factor_chain - factor_direct) > 1e-10 * scale:
        raise OracleError(
            "steady-state cross-check failed: chain factor "
            f"{factor_chain!r} vs direct factor {factor_direct!r}"
        )

    n_steady = n_th / (1.0 + factor_direct)
    return SteadyStateResult(
        n_th=n_th,
        n_steady=n_steady,
        cooling_factor=factor_direct,
        kappa=kappa,
        g0=chain.g0,
        gN=chain.gN,
        tau=chain.tau,
        gamma=gamma,
        validity=validity_report(params, chain=chain),
    )


def optimal_detuning(mu_c: float) -> float:
    """Detuning mu_c/(3*hbar) that maximizes zeta, hence minimizes <n>_s, rad/s."""
    if not (math.isfinite(mu_c) and mu_c > 0):
        raise DomainError(f"chemical potential must be finite and > 0, got {mu_c}")
    return mu_c / (3.0 * CONST.hbar)


def argmin_detuning_x(params: HybridParams, tol: float = 1e-10) -> float:
    """Numeric argmin of <n>_s over x = hbar*delta/mu_c in (0, 1).

    Golden-section search; <n>_s(x) is unimodal because it is a decreasing
    function of the unimodal zeta(x).
    """
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    hbar = CONST.hbar

    def n_s(x: float) -> float:
        return steady_phonon_full(
            replace(params, detuning_delta=x * params.mu_c / hbar)
        ).n_steady

    lo, hi = 1e-9, 1.0 - 1e-9
    a = hi - inv_phi * (hi - lo)
    b = lo + inv_phi * (hi - lo)
    fa, fb = n_s(a), n_s(b)
    while hi - lo > tol:
        if fa > fb:
            lo, a, fa = a, b, fb
            b = lo + inv_phi * (hi - lo)
            fb = n_s(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - inv_phi * (hi - lo)
            fa = n_s(a)
    return 0.5 * (lo + hi)


def ground_state_threshold_temperature(params: HybridParams, tol: float = 1e-6) -> float:
    """Highest initial temperature that still cools to <n>_s < 1, by bisection.

    The cooling factor is temperature independent (the drive amplitude cancels
    from the steady state), so <n>_s(T) is monotone in T and the root of
    <n>_s(T) = 1 is unique. Resolved to tol kelvin.
    """
    factor = cooling_factor_direct(params)
    if factor <= 0.0:
        raise DomainError("no cooling channel: cooling factor is zero at these parameters")
    omega = params.osc.omega_m

    def excess(T: float) -> float:
        return thermal_phonon_number(omega, T) / (1.0 + factor) - 1.0

    lo = 0.0
    hi = 0.1
    for _ in range(64):
        if excess(hi) > 0.0:
            break
        lo = hi
        hi *= 2.0
    else:
        raise OracleError("ground-state threshold bracket not found")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def qf_quantum_criterion(omega: float, Q: float, T: float) -> QfCriterion:
    """Quantum-coherence inequality Q*(omega/2pi) > k_B*T/h, strict."""
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be finite and > 0, got {omega}")
    if not (math.isfinite(Q) and Q > 0):
        raise DomainError(f"quality factor must be finite and > 0, got {Q}")
    if not (math.isfinite(T) and T >= 0):
        raise DomainError(f"temperature must be finite and >= 0, got {T}")
    product = Q * omega / (2.0 * math.pi)
    bound = CONST.k_B * T / CONST.h
    return QfCriterion(product_hz=product, bound_hz=bound, passed=product > bound)


def rescale_oscillator(params: HybridParams, omega_new: float, Q_new: float) -> HybridParams:
    """Move the same device to another (omega, Q) point.

    Holds the tip (hence G_m), the effective mass, the trap, mu_c and the
    detuning fixed; a_qm, g0, kappa and n_th follow from the new frequency.
    """
    return replace(
        params,
        osc=replace(params.osc, omega_m=omega_new, quality_Q=Q_new),
    )

"""Magneto-mechanical coupling chain.

A magnetized tip on the oscillator produces a field gradient at the atom trap.
The chain runs: dipole gradient -> zero-point amplitude -> single-atom coupling
g0 -> collective coupling gN = g0*sqrt(N), and, for the thermally driven case,
thermal amplitude -> Rabi frequency -> interaction time tau = pi/Omega_R.
All couplings and frequencies are angular (rad/s).
"""

import math
from dataclasses import dataclass

from .constants import CONST
from .errors import DomainError

_SQRT8 = math.sqrt(8.0)


@dataclass(frozen=True)
class MagneticTip:
    """Point-dipole model of the magnetic tip.

    moment: |mu_m| in A*m^2.
    distance_d0: tip to trap-center separation in m.
    """

    moment: float
    distance_d0: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.moment) and self.moment > 0):
            raise DomainError(f"tip moment must be finite and > 0, got {self.moment}")
        if not (math.isfinite(self.distance_d0) and self.distance_d0 > 0):
            raise DomainError(f"tip distance must be finite and > 0, got {self.distance_d0}")


@dataclass(frozen=True)
class OscillatorParams:
    """Mechanical mode: angular frequency, quality factor, effective mass, bath temperature.

    phase_phi_m and amplitude_beta describe the classical drive; they never
    enter the steady-state formulas. amplitude_beta, when set, feeds only the
    beta << d0 validity check.
    """

    omega_m: float
    quality_Q: float
    m_eff: float
    temperature_T: float
    phase_phi_m: float = 0.0
    amplitude_beta: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega_m) and self.omega_m > 0):
            raise DomainError(f"omega_m must be finite and > 0, got {self.omega_m}")
        if not (math.isfinite(self.quality_Q) and self.quality_Q > 0):
            raise DomainError(f"quality factor must be finite and > 0, got {self.quality_Q}")
        if not (math.isfinite(self.m_eff) and self.m_eff > 0):
            raise DomainError(f"effective mass must be finite and > 0, got {self.m_eff}")
        if not (math.isfinite(self.temperature_T) and self.temperature_T >= 0):
            raise DomainError(f"temperature must be finite and >= 0, got {self.temperature_T}")
        if self.amplitude_beta is not None and not (
            math.isfinite(self.amplitude_beta) and self.amplitude_beta > 0
        ):
            raise DomainError(f"amplitude_beta must be finite and > 0 when set, got {self.amplitude_beta}")


@dataclass(frozen=True)
class CouplingChain:
    """Derived coupling quantities for one parameter set."""

    gradient_Gm: float   # T/m
    a_qm: float          # m
    g0: float            # rad/s
    gN: float            # rad/s
    rabi_Omega: float    # rad/s
    tau: float           # s

    def __post_init__(self) -> None:
        for name in ("gradient_Gm", "a_qm", "g0", "gN", "rabi_Omega", "tau"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"coupling chain field {name} must be finite and > 0, got {v}")
        if self.gN < self.g0:
            raise DomainError("collective coupling cannot be below the single-atom coupling")
        if abs(self.tau * self.rabi_Omega - math.pi) > 1e-9 * math.pi:
            raise DomainError("tau must equal pi/rabi_Omega")


def dipole_gradient(tip: MagneticTip) -> float:
    """Field-gradient scale 3*mu_0*|mu_m|/(4*pi*d0^4) of a point dipole, T/m."""
    return 3.0 * CONST.mu_0 * tip.moment / (4.0 * math.pi * tip.distance_d0 ** 4)


def zero_point_amplitude(osc: OscillatorParams) -> float:
    """Ground-state rms position fluctuation sqrt(hbar/(2*m_eff*omega_m)), m."""
    return math.sqrt(CONST.hbar / (2.0 * osc.m_eff * osc.omega_m))


def single_atom_coupling(gradient: float, a_qm: float) -> float:
    """Single-atom, single-phonon coupling g0 = mu_B*G*a_qm/(sqrt(8)*hbar), rad/s."""
    if gradient < 0 or a_qm < 0:
        raise DomainError("gradient and zero-point amplitude must be >= 0")
    return CONST.mu_B * gradient * a_qm / (_SQRT8 * CONST.hbar)


def collective_coupling(g0: float, N: int) -> float:
    """sqrt(N)-enhanced coupling of N identical atoms, rad/s."""
    if int(N) != N or N < 1:
        raise DomainError(f"atom number must be an integer >= 1, got {N}")
    return g0 * math.sqrt(float(N))


def thermal_phonon_number(omega: float, T: float) -> float:
    """Bose occupancy 1/(exp(hbar*omega/kT) - 1) of a mode at temperature T."""
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be finite and > 0, got {omega}")
    if not (math.isfinite(T) and T >= 0):
        raise DomainError(f"temperature must be finite and >= 0, got {T}")
    if T == 0.0:
        return 0.0
    x = CONST.hbar * omega / (CONST.k_B * T)
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_amplitude(osc: OscillatorParams) -> float:
    """Effective drive amplitude of the thermally excited mode, m.

    Convention: 2*a_qm*sqrt(n_th), floored at a_qm so the zero-point motion
    survives the T -> 0 limit.
    """
    a = zero_point_amplitude(osc)
    n_th = thermal_phonon_number(osc.omega_m, osc.temperature_T)
    return a * max(2.0 * math.sqrt(n_th), 1.0)


def thermal_amplitude_rms(osc: OscillatorParams) -> float:
    """Quantum rms amplitude a_qm*sqrt(2*n_th + 1), m. Comparison variant."""
    n_th = thermal_phonon_number(osc.omega_m, osc.temperature_T)
    return zero_point_amplitude(osc) * math.sqrt(2.0 * n_th + 1.0)


def rabi_frequency(gradient: float, amplitude: float) -> float:
    """Spin-flip Rabi frequency mu_B*G*amplitude/(sqrt(8)*hbar), rad/s.

    With amplitude = a_qm this collapses to g0; with the thermal amplitude it
    is the rate at which the oscillating tip field flips resonant atoms.
    """
    if gradient < 0 or amplitude < 0:
        raise DomainError("gradient and amplitude must be >= 0")
    return CONST.mu_B * gradient * amplitude / (_SQRT8 * CONST.hbar)


def interaction_time(rabi: float) -> float:
    """Half Rabi period tau = pi/Omega_R: one atom's full |0> -> |1> transfer window."""
    if not (math.isfinite(rabi) and rabi > 0):
        raise DomainError(f"Rabi frequency must be finite and > 0, got {rabi}")
    return math.pi / rabi


def tip_for_coupling(g0: float, a_qm: float, distance_d0: float) -> MagneticTip:
    """Tip whose dipole gradient reproduces a requested g0 at the given a_qm."""
    if not (math.isfinite(g0) and g0 > 0):
        raise DomainError(f"g0 must be finite and > 0, got {g0}")
    if a_qm <= 0:
        raise DomainError("zero-point amplitude must be > 0")
    gradient = g0 * _SQRT8 * CONST.hbar / (CONST.mu_B * a_qm)
    moment = gradient * 4.0 * math.pi * distance_d0 ** 4 / (3.0 * CONST.mu_0)
    return MagneticTip(moment=moment, distance_d0=distance_d0)

"""Ground-state hyperfine Zeeman structure of Rb-87 and Larmor tuning.

The 5S1/2 manifold (J=1/2, I=3/2) splits into F=1 and F=2. With the zero of
energy placed midway between the zero-field F=1 and F=2 levels, the exact
level energies in a static field B follow the J=1/2 special case of the
Breit-Rabi formula,

    E(F, mF) = (-1)^F * (A_hf h / 2) * sqrt(1 + mF*b + b^2),    b = B/B_hf,

which stays closed-form for every mF including the stretched states.
"""

import math
from dataclasses import dataclass

from .constants import CONST
from .errors import DomainError

# Weak-field seekers: energy rises with |B| (linearly, or quadratically for
# |2,0>), so these sublevels are pulled toward a field minimum and can be held.
TRAPPABLE_STATES = frozenset({(2, 2), (2, 1), (2, 0), (1, -1)})


@dataclass(frozen=True)
class HyperfineState:
    """One Zeeman sublevel |F, mF> of the Rb-87 electronic ground state."""

    F: int
    mF: int

    def __post_init__(self) -> None:
        if self.F not in (1, 2):
            raise DomainError(f"F must be 1 or 2 for the Rb-87 ground state, got {self.F}")
        if not isinstance(self.mF, int) or abs(self.mF) > self.F:
            raise DomainError(f"mF must be an integer with |mF| <= F, got mF={self.mF} for F={self.F}")

    @property
    def trappable(self) -> bool:
        """True for weak-field-seeking sublevels that a static trap can hold."""
        return (self.F, self.mF) in TRAPPABLE_STATES


@dataclass(frozen=True)
class StaticField:
    """Static bias field magnitude in tesla."""

    B: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.B) or self.B < 0:
            raise DomainError(f"field magnitude must be finite and >= 0, got {self.B}")

    @property
    def weak_field(self) -> bool:
        """True when B is far below the hyperfine crossover scale."""
        return self.B < 0.1 * CONST.B_hf


def all_states() -> tuple[HyperfineState, ...]:
    """The eight ground-state sublevels, F=1 first, mF ascending."""
    return tuple(
        HyperfineState(F, mF) for F in (1, 2) for mF in range(-F, F + 1)
    )


def lande_gF(F: int) -> float:
    """Lande factor of hyperfine level F for J=1/2, I=3/2 (nuclear term neglected)."""
    if F not in (1, 2):
        raise DomainError(f"F must be 1 or 2, got {F}")
    J, I = CONST.J_elec, CONST.I_nuc
    num = F * (F + 1) + J * (J + 1) - I * (I + 1)
    return CONST.g_J * num / (2 * F * (F + 1))


def zeeman_energy(state: HyperfineState, field: StaticField) -> float:
    """Exact sublevel energy in J, valid at any field strength.

    The square-root argument 1 + mF*b + b^2 is positive for all |mF| <= 2,
    so the expression never leaves the real domain.
    """
    b = field.B / CONST.B_hf
    radicand = 1.0 + state.mF * b + b * b
    if radicand < 0:
        raise DomainError("level energy not real at this field")
    return (-1.0) ** state.F * (CONST.A_hf * CONST.h / 2.0) * math.sqrt(radicand)


def linear_zeeman_energy(state: HyperfineState, field: StaticField) -> float:
    """First-order Zeeman shift gF * mF * mu_B * B in J."""
    return lande_gF(state.F) * state.mF * CONST.mu_B * field.B


def larmor_frequency(field: StaticField) -> float:
    """Linear-regime Larmor angular frequency |gF| mu_B B / hbar in rad/s.

    |gF| is the same for F=1 and F=2, so one number covers both manifolds.
    """
    return abs(lande_gF(1)) * CONST.mu_B * field.B / CONST.hbar


def field_for_larmor(omega_L: float) -> StaticField:
    """Invert larmor_frequency: the bias field giving Larmor frequency omega_L."""
    if not math.isfinite(omega_L) or omega_L < 0:
        raise DomainError(f"Larmor frequency must be finite and >= 0, got {omega_L}")
    B = omega_L * CONST.hbar / (abs(lande_gF(1)) * CONST.mu_B)
    return StaticField(B)


def exact_transition_frequency(field: StaticField) -> float:
    """Angular frequency of the trapped-state transition |1,-1> -> |1,0> in rad/s.

    Computed from the exact level energies; approaches larmor_frequency(field)
    as B -> 0 with a relative deviation that grows like B / (4 B_hf).
    """
    e_trap = zeeman_energy(HyperfineState(1, -1), field)
    e_dest = zeeman_energy(HyperfineState(1, 0), field)
    return (e_trap - e_dest) / CONST.hbar

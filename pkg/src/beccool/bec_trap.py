"""Condensate model: chemical potential, Thomas-Fermi radii, resonance shell,
the spectral weight zeta(delta) and the out-coupling rate Gamma(delta).

Out-coupling happens on the ellipsoidal shell inside the condensate where the
local mean-field shift matches the detuning delta. Its weight

    zeta(delta) = (15*pi*hbar / 8*mu_c) * (sqrt(x) - x^(3/2)),   x = hbar*delta/mu_c,

vanishes at both edges of the condensate (x = 0 and x = 1) and peaks at x = 1/3.
"""

import math
from dataclasses import dataclass

from .constants import CONST
from .errors import DomainError

# s-wave scattering length of Rb-87, m (approx. 100 Bohr radii).
SCATTERING_LENGTH_RB87 = 5.29e-9

# Calibration anchor for the default chemical-potential mode: a cigar trap with
# 2*pi*(250, 250, 19) Hz frequencies and 5e6 atoms is pinned to
# mu_c/hbar = 2*pi*2880 rad/s, and other traps scale as (N*wx*wy*wz)^(2/5).
_ANCHOR_MU = 2.0 * math.pi * 2880.0 * CONST.hbar
_ANCHOR_PRODUCT = 5.0e6 * (2.0 * math.pi) ** 3 * 250.0 * 250.0 * 19.0

CHEMICAL_POTENTIAL_MODES = ("calibrated", "thomas_fermi")


@dataclass(frozen=True)
class TrapParams:
    """Harmonic trap frequencies (rad/s) and atom number."""

    omega_x: float
    omega_y: float
    omega_z: float
    atom_number_N: int

    def __post_init__(self) -> None:
        for name in ("omega_x", "omega_y", "omega_z"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"trap frequency {name} must be finite and > 0, got {v}")
        n = self.atom_number_N
        if int(n) != n or n < 1:
            raise DomainError(f"atom number must be an integer >= 1, got {n}")


@dataclass(frozen=True)
class CondensateModel:
    """Chemical potential (J), the mode that produced it, and the TF radii (m)."""

    mu_c: float
    mode: str
    tf_radii: tuple[float, float, float]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu_c) and self.mu_c > 0):
            raise DomainError(f"chemical potential must be finite and > 0, got {self.mu_c}")
        if self.mode not in CHEMICAL_POTENTIAL_MODES:
            raise DomainError(f"unknown chemical potential mode {self.mode!r}")
        if any(r <= 0 for r in self.tf_radii):
            raise DomainError("Thomas-Fermi radii must be > 0")


def chemical_potential(trap: TrapParams, mode: str = "calibrated") -> float:
    """Condensate chemical potential in J.

    calibrated (default): anchored power law
        mu_c = anchor * [(N*wx*wy*wz) / anchor_product]^(2/5),
    which reproduces the reference cigar trap exactly.

    thomas_fermi: standard interacting-gas result
        mu_c = (hbar*wbar/2) * (15*N*a_s/abar)^(2/5),
    with wbar the geometric-mean frequency and abar = sqrt(hbar/(m*wbar)).
    The two modes disagree by about 3x at the reference trap; both are kept
    so the sensitivity to this scale can be studied.
    """
    product = trap.atom_number_N * trap.omega_x * trap.omega_y * trap.omega_z
    if mode == "calibrated":
        return _ANCHOR_MU * (product / _ANCHOR_PRODUCT) ** 0.4
    if mode == "thomas_fermi":
        wbar = (trap.omega_x * trap.omega_y * trap.omega_z) ** (1.0 / 3.0)
        abar = math.sqrt(CONST.hbar / (CONST.m_Rb87 * wbar))
        return 0.5 * CONST.hbar * wbar * (15.0 * trap.atom_number_N * SCATTERING_LENGTH_RB87 / abar) ** 0.4
    raise DomainError(f"unknown chemical potential mode {mode!r}")


def tf_radii(trap: TrapParams, mu_c: float) -> tuple[float, float, float]:
    """Thomas-Fermi radii R_i = sqrt(2*mu_c/(m*omega_i^2)) per axis, m."""
    if not (math.isfinite(mu_c) and mu_c > 0):
        raise DomainError(f"chemical potential must be finite and > 0, got {mu_c}")
    return tuple(
        math.sqrt(2.0 * mu_c / (CONST.m_Rb87 * w * w))
        for w in (trap.omega_x, trap.omega_y, trap.omega_z)
    )


def condensate_model(trap: TrapParams, mode: str = "calibrated") -> CondensateModel:
    """Bundle chemical potential and TF radii for one trap."""
    mu_c = chemical_potential(trap, mode)
    return CondensateModel(mu_c=mu_c, mode=mode, tf_radii=tf_radii(trap, mu_c))


def detuning_fraction(delta: float, mu_c: float) -> float:
    """Dimensionless detuning x = hbar*delta/mu_c."""
    if not (math.isfinite(mu_c) and mu_c > 0):
        raise DomainError(f"chemical potential must be finite and > 0, got {mu_c}")
    return CONST.hbar * delta / mu_c


def in_resonance_window(delta: float, mu_c: float) -> bool:
    """True when the resonance shell lies inside the condensate (0 <= x <= 1)."""
    return 0.0 <= detuning_fraction(delta, mu_c) <= 1.0


def resonance_shell(delta: float, mu_c: float, radii: tuple[float, float, float]) -> tuple[float, float, float]:
    """Semi-axes r_i = R_i*sqrt(x) of the shell where atoms are resonant, m."""
    x = detuning_fraction(delta, mu_c)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"resonance shell outside the condensate: hbar*delta/mu_c = {x}")
    s = math.sqrt(x)
    return tuple(r * s for r in radii)


def zeta_prefactor(mu_c: float) -> float:
    """Scale 15*pi*hbar/(8*mu_c) of the spectral weight, s."""
    if not (math.isfinite(mu_c) and mu_c > 0):
        raise DomainError(f"chemical potential must be finite and > 0, got {mu_c}")
    return 15.0 * math.pi * CONST.hbar / (8.0 * mu_c)


def zeta(delta: float, mu_c: float) -> float:
    """Spectral weight of the out-coupling resonance, s.

    Returns 0 outside 0 <= hbar*delta/mu_c <= 1: below the condensate edge or
    above its mean-field width there are no resonant atoms, so the channel
    shuts off rather than erroring. Use zeta_strict to treat that as a fault.
    """
    x = detuning_fraction(delta, mu_c)
    if x < 0.0 or x > 1.0:
        return 0.0
    sx = math.sqrt(x)
    return zeta_prefactor(mu_c) * (sx - x * sx)


def zeta_strict(delta: float, mu_c: float) -> float:
    """zeta restricted to the resonance window; outside it raises."""
    if not in_resonance_window(delta, mu_c):
        raise DomainError(
            f"detuning outside the resonance window: hbar*delta/mu_c = {detuning_fraction(delta, mu_c)}"
        )
    return zeta(delta, mu_c)


def zeta_peak_x(tol: float = 1e-10) -> float:
    """Location of the maximum of sqrt(x) - x^(3/2) on [0, 1] by golden-section search.

    Analytically 1/3; kept numeric so the optimum is confirmed rather than assumed.
    """
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0

    def f(x: float) -> float:
        return math.sqrt(x) * (1.0 - x)

    lo, hi = 0.0, 1.0
    a = hi - inv_phi * (hi - lo)
    b = lo + inv_phi * (hi - lo)
    fa, fb = f(a), f(b)
    while hi - lo > tol:
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + inv_phi * (hi - lo)
            fb = f(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - inv_phi * (hi - lo)
            fa = f(a)
    return 0.5 * (lo + hi)


def transition_rate(delta: float, mu_c: float, rabi: float) -> float:
    """Out-coupling rate Gamma(delta) = zeta(delta)*Omega_R^2, 1/s."""
    if not (math.isfinite(rabi) and rabi >= 0):
        raise DomainError(f"Rabi frequency must be finite and >= 0, got {rabi}")
    return zeta(delta, mu_c) * rabi * rabi

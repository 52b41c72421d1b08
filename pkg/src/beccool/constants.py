"""Physical constants used across the cooling chain.

CODATA values come from scipy; the Rb-87 specific numbers (mass, ground-state
hyperfine splitting) are fixed literals so results do not drift with scipy
releases.
"""

from dataclasses import dataclass

from scipy import constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of constants with SI units throughout."""

    hbar: float = _sc.hbar
    h: float = _sc.h
    k_B: float = _sc.k
    mu_B: float = _sc.physical_constants["Bohr magneton"][0]
    mu_0: float = _sc.mu_0
    m_Rb87: float = 1.44316e-25
    A_hf: float = 6.835e9          # ground-state hyperfine splitting, Hz
    g_J: float = 2.002319          # electronic g-factor of 5S1/2
    I_nuc: float = 1.5             # Rb-87 nuclear spin
    J_elec: float = 0.5

    @property
    def B_hf(self) -> float:
        """Crossover field where the Zeeman energy reaches the hyperfine scale.

        Defined as A_hf*h/(g_J*mu_B) so that the low-field expansion of the
        exact level energies reproduces the linear Zeeman shifts computed
        from the Lande factors without a residual g_J/2 mismatch.
        """
        return self.A_hf * self.h / (self.g_J * self.mu_B)


CONST = PhysicalConstants()

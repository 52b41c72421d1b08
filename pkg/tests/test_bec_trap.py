import math

import numpy as np
import pytest

from beccool.bec_trap import (
    CHEMICAL_POTENTIAL_MODES,
    TrapParams,
    chemical_potential,
    condensate_model,
    detuning_fraction,
    in_resonance_window,
    resonance_shell,
    tf_radii,
    transition_rate,
    zeta,
    zeta_peak_x,
    zeta_prefactor,
    zeta_strict,
)
from beccool.constants import CONST
from beccool.errors import DomainError

TRAP = TrapParams(
    2 * math.pi * 250.0, 2 * math.pi * 250.0, 2 * math.pi * 19.0, 5_000_000
)
MU_REF = 1.9083082031999996e-30  # calibrated mu_c of TRAP, J


class TestChemicalPotential:
    def test_calibrated_anchor(self):
        mu = chemical_potential(TRAP)
        assert mu == pytest.approx(2 * math.pi * 2880.0 * CONST.hbar, rel=1e-12)
        assert mu == pytest.approx(MU_REF, rel=1e-12)

    def test_two_fifths_power_law_in_atom_number(self):
        doubled = TrapParams(TRAP.omega_x, TRAP.omega_y, TRAP.omega_z, 10_000_000)
        ratio = chemical_potential(doubled) / chemical_potential(TRAP)
        assert ratio == pytest.approx(2.0 ** 0.4, rel=1e-12)

    def test_two_fifths_power_law_in_frequency(self):
        stiff = TrapParams(2 * TRAP.omega_x, TRAP.omega_y, TRAP.omega_z, 5_000_000)
        ratio = chemical_potential(stiff) / chemical_potential(TRAP)
        assert ratio == pytest.approx(2.0 ** 0.4, rel=1e-12)

    def test_interacting_gas_mode(self):
        mu = chemical_potential(TRAP, "thomas_fermi")
        assert mu / (2 * math.pi * CONST.hbar) == pytest.approx(
            9018.07543686644, rel=1e-9
        )

    def test_mode_registry(self):
        assert set(CHEMICAL_POTENTIAL_MODES) == {"calibrated", "thomas_fermi"}
        with pytest.raises(DomainError):
            chemical_potential(TRAP, "free_gas")

    def test_trap_validation(self):
        with pytest.raises(DomainError):
            TrapParams(0.0, 1.0, 1.0, 100)
        with pytest.raises(DomainError):
            TrapParams(1.0, 1.0, 1.0, 0)
        with pytest.raises(DomainError):
            TrapParams(1.0, 1.0, 1.0, 2.5)


class TestGeometry:
    def test_tf_radii_reference(self):
        rx, ry, rz = tf_radii(TRAP, MU_REF)
        assert rx == pytest.approx(3.273875333983323e-06, rel=1e-9)
        assert ry == rx
        assert rz == pytest.approx(4.3077307026096354e-05, rel=1e-9)
        # cigar geometry: soft axis longer by the frequency ratio
        assert rz / rx == pytest.approx(250.0 / 19.0, rel=1e-12)

    def test_radii_scale_with_sqrt_mu(self):
        small = tf_radii(TRAP, MU_REF)
        large = tf_radii(TRAP, 4 * MU_REF)
        for s, l in zip(small, large):
            assert l == pytest.approx(2 * s, rel=1e-12)

    def test_condensate_model_bundles(self):
        model = condensate_model(TRAP)
        assert model.mode == "calibrated"
        assert model.mu_c == chemical_potential(TRAP)
        assert model.tf_radii == tf_radii(TRAP, model.mu_c)

    def test_resonance_shell_scaling(self):
        radii = tf_radii(TRAP, MU_REF)
        third = MU_REF / (3 * CONST.hbar)
        shell = resonance_shell(third, MU_REF, radii)
        for r, s in zip(radii, shell):
            assert s == pytest.approx(r / math.sqrt(3), rel=1e-12)
        edge = resonance_shell(MU_REF / CONST.hbar, MU_REF, radii)
        assert edge == pytest.approx(radii, rel=1e-12)
        center = resonance_shell(0.0, MU_REF, radii)
        assert center == (0.0, 0.0, 0.0)

    def test_resonance_shell_outside_window(self):
        radii = tf_radii(TRAP, MU_REF)
        with pytest.raises(DomainError):
            resonance_shell(-1.0, MU_REF, radii)
        with pytest.raises(DomainError):
            resonance_shell(1.01 * MU_REF / CONST.hbar, MU_REF, radii)


class TestSpectralWeight:
    def test_prefactor_reference(self):
        pre = zeta_prefactor(MU_REF)
        assert pre == pytest.approx(0.00032552083333333337, rel=1e-12)
        assert pre == pytest.approx(3.3e-4, rel=2e-2)

    def test_peak_value_reference(self):
        delta_star = MU_REF / (3 * CONST.hbar)
        assert zeta(delta_star, MU_REF) == pytest.approx(
            0.00012529302716788755, rel=1e-12
        )

    def test_vanishes_at_window_edges(self):
        assert zeta(0.0, MU_REF) == 0.0
        assert zeta(MU_REF / CONST.hbar, MU_REF) == pytest.approx(0.0, abs=1e-20)

    def test_zero_outside_window(self):
        assert zeta(-1.0, MU_REF) == 0.0
        assert zeta(2 * MU_REF / CONST.hbar, MU_REF) == 0.0

    def test_strict_variant_raises_outside(self):
        with pytest.raises(DomainError):
            zeta_strict(-1.0, MU_REF)
        with pytest.raises(DomainError):
            zeta_strict(2 * MU_REF / CONST.hbar, MU_REF)
        delta_star = MU_REF / (3 * CONST.hbar)
        assert zeta_strict(delta_star, MU_REF) == zeta(delta_star, MU_REF)

    def test_peak_location_numeric(self):
        assert abs(zeta_peak_x() - 1.0 / 3.0) <= 1e-8

    def test_peak_dominates_random_detunings(self):
        rng = np.random.default_rng(20260814)
        delta_star = MU_REF / (3 * CONST.hbar)
        best = zeta(delta_star, MU_REF)
        for x in rng.uniform(0.0, 1.0, size=1000):
            assert zeta(x * MU_REF / CONST.hbar, MU_REF) <= best

    def test_window_helpers(self):
        assert in_resonance_window(0.0, MU_REF)
        assert in_resonance_window(MU_REF / CONST.hbar, MU_REF)
        assert not in_resonance_window(-1e-3, MU_REF)
        assert detuning_fraction(MU_REF / (2 * CONST.hbar), MU_REF) == pytest.approx(
            0.5, rel=1e-12
        )

    def test_bad_chemical_potential(self):
        with pytest.raises(DomainError):
            zeta(1.0, 0.0)
        with pytest.raises(DomainError):
            zeta_prefactor(-1e-30)


class TestTransitionRate:
    def test_quadratic_in_rabi(self):
        delta_star = MU_REF / (3 * CONST.hbar)
        g1 = transition_rate(delta_star, MU_REF, 100.0)
        g2 = transition_rate(delta_star, MU_REF, 200.0)
        assert g2 == pytest.approx(4 * g1, rel=1e-12)

    def test_kilohertz_scale_at_thermal_drive(self):
        # Omega_R ~ 5.13e3 rad/s on the peak gives Gamma ~ 3.3e3 1/s
        delta_star = MU_REF / (3 * CONST.hbar)
        gamma = transition_rate(delta_star, MU_REF, 5.13e3)
        assert gamma == pytest.approx(3.3e3, rel=1e-2)

    def test_zero_rabi(self):
        assert transition_rate(1.0, MU_REF, 0.0) == 0.0

    def test_negative_rabi_rejected(self):
        with pytest.raises(DomainError):
            transition_rate(1.0, MU_REF, -1.0)

    def test_off_resonance_shuts_off(self):
        assert transition_rate(-5.0, MU_REF, 1e4) == 0.0
        assert transition_rate(1.5 * MU_REF / CONST.hbar, MU_REF, 1e4) == 0.0

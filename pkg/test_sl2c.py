import math

import numpy as np
import pytest

from errors import DomainError, InvalidArgumentError, SingularityError
from numerics import Grid
from sl2c import (
    Case,
    Sl2cFamily,
    bridge_superpotential,
    constraint_residual,
    eval_F_G,
    family_spectrum,
    partner_family,
    potential_Vm,
    potential_Vm_closed_form,
    shape_invariance_residual,
)
from susy import is_pt_symmetric, partner_potentials


# ============================================================================
# FAMILIES
# ============================================================================

@pytest.mark.parametrize("gamma", [math.pi / 4, -0.8, 1.0])
def test_gamma_out_of_range_rejected(gamma):
    with pytest.raises(InvalidArgumentError):
        Sl2cFamily(Case.I, m=1.0, gamma=gamma)


def test_family_validation():
    assert Sl2cFamily(Case.I, m=1.0, gamma=0.2).gamma == 0.2
    assert Sl2cFamily(Case.I, m=1.0, gamma=-math.pi / 4).gamma == -math.pi / 4
    with pytest.raises(InvalidArgumentError):
        Sl2cFamily("IV", m=1.0)
    with pytest.raises(InvalidArgumentError):
        Sl2cFamily(Case.III, m=1.0, sign=0)
    with pytest.raises(InvalidArgumentError):
        Sl2cFamily(Case.I, m=math.nan)


def test_partner_family_lowers_m():
    family = Sl2cFamily(Case.II, m=2.5, b_I=0.5, c=1.0)
    partner = partner_family(family)
    assert partner.m == 1.5
    assert (partner.case, partner.b, partner.c) == (family.case, family.b, family.c)


def test_eval_F_G_scalar_values():
    F, G = eval_F_G(Sl2cFamily(Case.I, m=1.0, b_I=1.0), 0.0)
    assert F == 0.0
    assert G == 1j
    F, G = eval_F_G(Sl2cFamily(Case.III, m=1.0, b_R=2.0, sign=-1), 1.0)
    assert F == -1.0
    assert G == pytest.approx(2.0 * math.e)


def test_case_II_singular_point():
    family = Sl2cFamily(Case.II, m=1.0, b_I=0.5, c=1.0)
    with pytest.raises(SingularityError, match="x = 1.0"):
        eval_F_G(family, np.array([0.5, 1.0, 1.5]))
    # the imaginary shift moves the pole off the real axis
    F, G = eval_F_G(Sl2cFamily(Case.II, m=1.0, b_I=0.5, c=1.0, gamma=0.2), 1.0)
    assert math.isfinite(abs(F)) and math.isfinite(abs(G))


def test_non_finite_values_name_the_point():
    with pytest.raises(DomainError):
        eval_F_G(Sl2cFamily(Case.III, m=1.0, b_I=1.0), np.array([0.0, -800.0]))


# ============================================================================
# CONSTRAINTS AND POTENTIALS
# ============================================================================

@pytest.mark.parametrize("family, grid", [
    (Sl2cFamily(Case.I, m=2.0, b_R=0.3, b_I=0.5, c=0.2, gamma=0.3), Grid(-5.0, 5.0, 10001)),
    (Sl2cFamily(Case.II, m=1.5, b_I=0.5, gamma=0.2), Grid(1.5, 10.0, 8501)),
    (Sl2cFamily(Case.II, m=1.5, b_I=0.5), Grid(1.5, 6.0, 4501)),
    (Sl2cFamily(Case.III, m=1.5, b_R=0.3, b_I=0.4, sign=1), Grid(-1.0, 1.0, 2001)),
    (Sl2cFamily(Case.III, m=1.5, b_I=0.5, sign=-1), Grid(-1.0, 1.0, 2001)),
])
def test_constraint_odes_hold(family, grid):
    rF, rG = constraint_residual(family, grid)
    assert rF < 1e-6
    assert rG < 1e-6


def test_perturbed_F_breaks_constraint():
    family = Sl2cFamily(Case.I, m=2.0, b_I=0.5)
    rF, _ = constraint_residual(family, Grid(-5.0, 5.0, 10001), perturb=1e-2)
    assert rF > 1e-2


def test_case_I_potential_at_origin():
    grid = Grid(-10.0, 10.0, 2001)
    v = potential_Vm(Sl2cFamily(Case.I, m=1.0, b_I=1.0), grid)
    assert v.values[1000] == pytest.approx(-1.75 + 0j, abs=1e-12)


def test_hermitian_limit_is_real():
    v = potential_Vm(Sl2cFamily(Case.I, m=2.0), Grid(-10.0, 10.0, 2001))
    assert np.all(v.imag == 0.0)


@pytest.mark.parametrize("family, grid", [
    (Sl2cFamily(Case.I, m=2.5, b_R=0.3, b_I=0.7, gamma=0.2), Grid(-10.0, 10.0, 2001)),
    (Sl2cFamily(Case.II, m=2.0, b_I=1.0), Grid(0.5, 10.0, 1901)),
    (Sl2cFamily(Case.III, m=2.0, b_I=1.0, sign=-1), Grid(-12.0, 3.0, 1501)),
])
def test_closed_forms_agree(family, grid):
    a = potential_Vm(family, grid).values
    b = potential_Vm_closed_form(family, grid).values
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


# ============================================================================
# SUSY BRIDGE
# ============================================================================

@pytest.mark.parametrize("family, grid", [
    (Sl2cFamily(Case.I, m=2.0, b_I=1.0), Grid(-10.0, 10.0, 2001)),
    (Sl2cFamily(Case.I, m=3.0, b_I=0.5, c=0.5), Grid(-10.0, 10.0, 2001)),
    (Sl2cFamily(Case.II, m=3.0, b_I=0.5), Grid(0.5, 10.0, 1901)),
    (Sl2cFamily(Case.II, m=1.5, b_R=0.2, b_I=0.4, gamma=0.1), Grid(0.5, 10.0, 1901)),
    (Sl2cFamily(Case.III, m=2.5, b_I=2.0), Grid(-3.0, 12.0, 1501)),
    (Sl2cFamily(Case.III, m=1.5, b_R=0.5, b_I=0.5), Grid(-3.0, 12.0, 1501)),
])
def test_shape_invariance(family, grid):
    assert shape_invariance_residual(family, grid) < 1e-10


def test_bridge_upper_partner_is_Vm():
    family = Sl2cFamily(Case.I, m=2.0, b_I=0.5)
    grid = Grid(-10.0, 10.0, 2001)
    w = bridge_superpotential(family)
    assert w.E_R == pytest.approx(-2.25)
    pair = partner_potentials(w, grid)
    np.testing.assert_allclose(pair.v_plus.values, potential_Vm(family, grid).values, atol=1e-12)


def test_pt_symmetry_of_scarf_partners_only():
    grid = Grid(-10.0, 10.0, 2000)
    scarf = partner_potentials(bridge_superpotential(Sl2cFamily(Case.I, m=2.0, b_I=0.5)), grid)
    assert is_pt_symmetric(scarf.v_plus) and is_pt_symmetric(scarf.v_minus)
    shifted = partner_potentials(bridge_superpotential(Sl2cFamily(Case.III, m=2.0, b_I=0.5)), grid)
    assert not is_pt_symmetric(shifted.v_plus)


# ============================================================================
# SPECTRA
# ============================================================================

@pytest.mark.parametrize("m, expected", [
    (2.0, [-2.25, -0.25]),
    (1.0, [-0.25]),
    (0.6, [-0.01]),
    (0.4, []),
    (0.5, []),
])
def test_family_spectrum(m, expected):
    assert family_spectrum(m).energies == pytest.approx(expected)


def test_partner_spectrum_drops_ground_state():
    assert family_spectrum(3.2).energies[1:] == pytest.approx(family_spectrum(2.2).energies)

import math

import numpy as np
import pytest

from errors import InvalidArgumentError
from numerics import Grid, SampledFunction, refine_root
from sl2c import Case, Sl2cFamily, bridge_superpotential, family_spectrum
from spectral import (
    Boundary,
    SpectralProblem,
    compare_levels,
    count_nodes,
    eigenfunction,
    find_spectrum,
    operator_residual,
    shoot,
    shoot_many,
    well_bottom_index,
)
from susy import partner_potentials


def square_well(n=1001):
    grid = Grid(0.0, math.pi, n)
    return SampledFunction(grid, np.zeros(n))


def oscillator(x_min=-8.0, x_max=8.0, n=2001):
    grid = Grid(x_min, x_max, n)
    return SampledFunction(grid, grid.points**2)


# ============================================================================
# PROBLEM SET-UP
# ============================================================================

@pytest.mark.parametrize("kwargs", [
    {"energy_window": (2.0, 1.0)},
    {"energy_window": (0.0, math.inf)},
    {"scan_points": 5},
    {"boundary": "periodic"},
    {"match_index": 1},
    {"workers": 0},
])
def test_problem_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        SpectralProblem(square_well(), **kwargs)


def test_problem_rejects_singular_samples():
    grid = Grid(0.0, 1.0, 101)
    values = np.zeros(101)
    values[0] = np.inf
    with pytest.raises(InvalidArgumentError):
        SpectralProblem(SampledFunction(grid, values, singular_endpoints=True))


def test_matching_index_defaults_to_midpoint_of_a_flat_well():
    problem = SpectralProblem(square_well(101))
    assert problem.matching_index == 50
    assert problem.domain == Grid(0.0, math.pi, 101)


def test_shoot_vanishes_at_eigenvalue():
    problem = SpectralProblem(square_well(), energy_window=(0.5, 10.0))
    assert abs(shoot(problem, 4.0)) < 1e-8
    assert abs(shoot(problem, 2.5)) > 1e-2


def test_matching_index_sits_at_the_bottom_of_an_off_centre_well():
    grid = Grid(-12.0, 12.0, 3001)
    problem = SpectralProblem(SampledFunction(grid, (grid.points - 4.0) ** 2))
    assert problem.matching_index == 2000
    assert SpectralProblem(problem.potential, energy_window=(20.0, 30.0)).matching_index == 1500
    assert SpectralProblem(oscillator(), energy_window=(0.0, 6.0)).matching_index == 1000
    half_line = SpectralProblem(oscillator(0.0, 8.0, 1001), Boundary.DIRICHLET_LEFT_DECAY_RIGHT)
    assert half_line.matching_index == 2
    assert well_bottom_index(half_line.potential) == 2
    assert SpectralProblem(square_well(101), match_index=10).matching_index == 10


def test_shoot_vanishes_at_scarf_level():
    grid = Grid(-12.0, 12.0, 4001)
    pair = partner_potentials(bridge_superpotential(Sl2cFamily(Case.I, m=2.0, b_I=0.5)), grid)
    problem = SpectralProblem(pair.v_plus, energy_window=(-3.0, -0.01))
    assert abs(shoot(problem, -0.25)) < 1e-4
    assert abs(shoot(problem, -1.0)) > 1e-2


def test_refine_root_on_oscillator_mismatch():
    problem = SpectralProblem(oscillator(), energy_window=(0.0, 6.0))
    E = refine_root(lambda E: shoot(problem, E).real, (0.9, 1.1))
    assert E == pytest.approx(1.0, abs=1e-6)


def test_mismatch_is_continuous_across_the_scan():
    problem = SpectralProblem(square_well(), energy_window=(0.5, 10.0))
    coarse = np.abs(shoot_many(problem, np.linspace(0.5, 10.0, 1001)))
    fine = np.abs(shoot_many(problem, np.linspace(0.5, 10.0, 2001)))
    assert np.max(np.abs(np.diff(fine))) < 0.05
    assert np.max(np.abs(np.diff(fine))) < 0.6 * np.max(np.abs(np.diff(coarse)))


# ============================================================================
# SPECTRA
# ============================================================================

def test_square_well_levels():
    result = find_spectrum(SpectralProblem(square_well(), energy_window=(0.5, 10.0)))
    assert result.energies == pytest.approx([1.0, 4.0, 9.0], abs=1e-6)
    assert [ev.n_nodes_real_part for ev in result.eigenvalues] == [0, 1, 2]
    assert all(ev.mismatch < 1e-5 for ev in result.eigenvalues)
    assert "3 accepted" in result.diagnostics


def test_oscillator_levels_and_nodes():
    result = find_spectrum(SpectralProblem(oscillator(), energy_window=(0.0, 6.0)))
    error, unmatched = compare_levels(result.energies, [1.0, 3.0, 5.0])
    assert len(result.eigenvalues) == 3
    assert error < 1e-5
    assert unmatched == []
    assert [ev.n_nodes_real_part for ev in result.eigenvalues] == [0, 1, 2]


def test_half_line_with_decaying_right_end():
    problem = SpectralProblem(oscillator(0.0, 8.0, 1001), Boundary.DIRICHLET_LEFT_DECAY_RIGHT,
                              energy_window=(0.5, 8.0))
    assert find_spectrum(problem).energies == pytest.approx([3.0, 7.0], abs=1e-5)


def test_off_centre_well_keeps_every_level():
    grid = Grid(-12.0, 12.0, 3001)
    problem = SpectralProblem(SampledFunction(grid, (grid.points - 4.0) ** 2), energy_window=(0.0, 6.0))
    result = find_spectrum(problem)
    assert result.energies == pytest.approx([1.0, 3.0, 5.0], abs=1e-5)
    assert [ev.n_nodes_real_part for ev in result.eigenvalues] == [0, 1, 2]
    assert "3 accepted" in result.diagnostics


def test_polished_levels_meet_the_acceptance_threshold():
    result = find_spectrum(SpectralProblem(oscillator(0.0, 8.0, 1001), Boundary.DIRICHLET_LEFT_DECAY_RIGHT,
                                           energy_window=(0.5, 8.0)))
    assert all(ev.mismatch < 1e-7 for ev in result.eigenvalues)
    assert "2 accepted" in result.diagnostics


def test_empty_window_reports_diagnostics():
    result = find_spectrum(SpectralProblem(square_well(), energy_window=(1.5, 3.5)))
    assert result.eigenvalues == ()
    assert "scanned 200 energies" in result.diagnostics


def test_threaded_scan_is_deterministic():
    serial = find_spectrum(SpectralProblem(square_well(), energy_window=(0.5, 10.0)))
    threaded = find_spectrum(SpectralProblem(square_well(), energy_window=(0.5, 10.0), workers=3))
    assert threaded.eigenvalues == serial.eigenvalues


def test_scarf_partners_are_isospectral_except_ground_state():
    family = Sl2cFamily(Case.I, m=2.0, b_I=0.5)
    grid = Grid(-12.0, 12.0, 4001)
    pair = partner_potentials(bridge_superpotential(family), grid)
    plus = find_spectrum(SpectralProblem(pair.v_plus, energy_window=(-3.0, -0.01))).energies
    minus = find_spectrum(SpectralProblem(pair.v_minus, energy_window=(-3.0, -0.01))).energies
    assert plus == pytest.approx(family_spectrum(2.0).energies, abs=1e-4)
    assert minus == pytest.approx([-0.25], abs=1e-4)


# ============================================================================
# LEVEL COMPARISON
# ============================================================================

def test_compare_levels():
    assert compare_levels([-2.25001, -0.25], [-2.25, -0.25]) == (pytest.approx(1e-5), [])
    assert compare_levels([], []) == (0.0, [])
    error, unmatched = compare_levels([], [-0.01])
    assert math.isinf(error) and unmatched == [-0.01]
    error, unmatched = compare_levels([-2.25], [-2.25, -0.25], tol=1e-3)
    assert error == pytest.approx(2.0)
    assert unmatched == [-0.25]


# ============================================================================
# EIGENFUNCTIONS
# ============================================================================

def test_eigenfunction_is_normalised_and_solves_the_equation():
    potential = oscillator()
    problem = SpectralProblem(potential, energy_window=(0.0, 6.0))
    E = find_spectrum(problem).energies[1]
    psi = eigenfunction(problem, E)
    assert np.sum(np.abs(psi.values) ** 2) * psi.grid.spacing == pytest.approx(1.0, rel=1e-6)
    assert count_nodes(psi) == 1
    assert operator_residual(potential, psi, E) < 1e-3
    peak = psi.values[np.argmax(np.abs(psi.values))]
    assert peak.imag == pytest.approx(0.0, abs=1e-12) and peak.real > 0.0


def test_count_nodes_ignores_tiny_samples():
    grid = Grid(0.0, 3.0 * math.pi, 301)
    psi = SampledFunction(grid, np.sin(grid.points))
    assert count_nodes(psi) == 2
    assert count_nodes(SampledFunction(grid, np.zeros(301))) == 0

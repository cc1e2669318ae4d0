"""
Real-energy shooting solver for −ψ″ + V(x)ψ = Eψ with complex V.

Solutions are integrated from both ends of the grid to a matching point and
compared through their normalised Wronskian. Eigenvalues are the zeros of
that mismatch along the real energy axis.
"""
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from errors import BracketError, IntegrationOverflowError, InvalidArgumentError, SolverError
from numerics import Direction, SampledFunction, refine_root, rk4_integrate, same_grid, second_difference

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================

DEFAULT_SCAN_POINTS = 200
MIN_SCAN_POINTS = 10
SCAN_CHUNK = 64
RENORMALIZE_EVERY = 100
ACCEPT_MISMATCH = 1e-5
POLISH_RTOL = 1e-12
DUPLICATE_TOL = 1e-6
NODE_THRESHOLD = 1e-6
MATCH_TIE_RTOL = 1e-9


class Boundary:
    """Boundary condition constants"""
    DIRICHLET_BOTH = "dirichlet_both"
    DIRICHLET_LEFT_DECAY_RIGHT = "dirichlet_left_decay_right"
    ALL = (DIRICHLET_BOTH, DIRICHLET_LEFT_DECAY_RIGHT)


# ============================================================================
# PROBLEM AND RESULT TYPES
# ============================================================================

@dataclass(frozen=True)
class SpectralProblem:
    """
    A potential on a grid plus the search settings.

    match_index defaults to the grid midpoint. When Re V there lies above the
    bottom of the energy window the midpoint is classically forbidden for
    some levels, and the default moves to the bottom of the well instead.
    workers > 1 spreads the energy scan over threads without changing the
    result.
    """

    potential: SampledFunction
    boundary: str = Boundary.DIRICHLET_BOTH
    energy_window: tuple = (0.0, 1.0)
    scan_points: int = DEFAULT_SCAN_POINTS
    match_index: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        E_lo, E_hi = self.energy_window
        if not (math.isfinite(E_lo) and math.isfinite(E_hi) and E_lo < E_hi):
            raise InvalidArgumentError(f"energy window must satisfy E_lo < E_hi, got {self.energy_window}")
        if self.scan_points < MIN_SCAN_POINTS:
            raise InvalidArgumentError(f"scan_points must be at least {MIN_SCAN_POINTS}")
        if self.boundary not in Boundary.ALL:
            raise InvalidArgumentError(f"unknown boundary {self.boundary!r}")
        if not np.all(np.isfinite(self.potential.values)):
            raise InvalidArgumentError("potential must be finite on the whole grid")
        n = self.domain.n_points
        if not 2 <= self.matching_index <= n - 3:
            raise InvalidArgumentError(f"match index {self.matching_index} too close to the ends")
        if self.workers < 1:
            raise InvalidArgumentError("workers must be positive")

    @property
    def domain(self):
        return self.potential.grid

    @property
    def matching_index(self):
        if self.match_index is not None:
            return self.match_index
        mid = self.domain.n_points // 2
        if self.potential.real[mid] > self.energy_window[0]:
            return well_bottom_index(self.potential)
        return mid


def well_bottom_index(potential):
    """Index of the minimum of Re V, nearest the midpoint on ties, clear of the ends."""
    re = potential.real
    n = len(re)
    bottom = np.min(re)
    ties = np.flatnonzero(re <= bottom + MATCH_TIE_RTOL * max(1.0, float(np.ptp(re))))
    i = int(ties[np.argmin(np.abs(ties - n // 2))])
    return min(max(i, 2), n - 3)


@dataclass(frozen=True)
class Eigenvalue:
    E: float
    mismatch: float
    n_nodes_real_part: int


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: tuple = ()
    diagnostics: str = ""
    rejected: tuple = field(default=(), repr=False)

    @property
    def energies(self):
        return [ev.E for ev in self.eigenvalues]


# ============================================================================
# SHOOTING
# ============================================================================

def _half_step_potential(values):
    """V at grid points (even slots) and cubic-interpolated midpoints (odd slots)."""
    v = values
    mid = np.empty(len(v) - 1, dtype=complex)
    mid[1:-1] = (-v[:-3] + 9.0 * v[1:-2] + 9.0 * v[2:-1] - v[3:]) / 16.0
    mid[0] = (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0
    mid[-1] = (5.0 * v[-1] + 15.0 * v[-2] - 5.0 * v[-3] + v[-4]) / 16.0
    half = np.empty(2 * len(v) - 1, dtype=complex)
    half[0::2] = v
    half[1::2] = mid
    return half


def _make_rhs(problem, energies):
    grid = problem.domain
    half = _half_step_potential(problem.potential.values)
    x0 = grid.x_min
    scale = 2.0 / grid.spacing

    def rhs(x, y):
        V = half[int(round((x - x0) * scale))]
        out = np.empty_like(y)
        out[0] = y[1]
        out[1] = (V - energies) * y[0]
        return out

    return rhs


def _integrate_sides(problem, energies, renormalize_every):
    grid = problem.domain
    h = grid.spacing
    m = problem.matching_index
    n = grid.n_points
    energies = np.asarray(energies, dtype=float)
    rhs = _make_rhs(problem, energies)

    zeros = np.zeros(energies.shape, dtype=complex)
    left0 = np.stack([zeros, np.full(energies.shape, h, dtype=complex)])
    if problem.boundary == Boundary.DIRICHLET_BOTH:
        right0 = np.stack([zeros, np.full(energies.shape, h, dtype=complex)])
    else:
        kappa = np.sqrt(problem.potential.values[-1] - energies + 0j)
        right0 = np.stack([np.full(energies.shape, h, dtype=complex), -kappa * h])

    left = rk4_integrate(rhs, left0, grid.subgrid(0, m), Direction.FORWARD, renormalize_every)
    right = rk4_integrate(rhs, right0, grid.subgrid(m, n - 1), Direction.BACKWARD, renormalize_every)
    return left, right


def _mismatch(left, right):
    psi_l, dpsi_l = left[-1]
    psi_r, dpsi_r = right[0]
    wronskian = psi_l * dpsi_r - psi_r * dpsi_l
    norm = np.hypot(np.abs(psi_l), np.abs(dpsi_l)) * np.hypot(np.abs(psi_r), np.abs(dpsi_r))
    return wronskian / norm


def shoot_many(problem, energies):
    """Normalised Wronskian mismatch for each energy (vectorised)."""
    try:
        left, right = _integrate_sides(problem, energies, RENORMALIZE_EVERY)
    except IntegrationOverflowError as e:
        logger.debug("overflow at index %d, retrying with per-step renormalisation", e.index)
        try:
            left, right = _integrate_sides(problem, energies, 1)
        except IntegrationOverflowError as e2:
            raise SolverError(f"integration overflows at grid index {e2.index}") from e2
    return _mismatch(left, right)


def shoot(problem, E):
    """
    Mismatch W(E) = (ψ_L ψ′_R − ψ_R ψ′_L) / (‖(ψ_L, ψ′_L)‖ ‖(ψ_R, ψ′_R)‖)
    at the matching point. Zero exactly at an eigenvalue.
    """
    return complex(shoot_many(problem, np.array([float(E)]))[0])


# ============================================================================
# SPECTRUM SEARCH
# ============================================================================

def _scan(problem, energies):
    """|W| over the scan energies, chunked and optionally threaded."""
    chunks = [energies[i:i + SCAN_CHUNK] for i in range(0, len(energies), SCAN_CHUNK)]
    results = [None] * len(chunks)
    errors = []

    def worker(offset):
        for idx in range(offset, len(chunks), problem.workers):
            try:
                results[idx] = np.abs(shoot_many(problem, chunks[idx]))
            except Exception as e:
                errors.append(e)
                return

    if problem.workers == 1 or len(chunks) == 1:
        worker(0)
        if errors:
            raise errors[0]
        return np.concatenate(results)

    threads = []
    for offset in range(min(problem.workers, len(chunks))):
        thread = threading.Thread(target=worker, args=(offset,), daemon=True)
        thread.start()
        threads.append(thread)
    for thread in threads:
        thread.join()
    if errors:
        raise errors[0]
    return np.concatenate(results)


def _polish(problem, lo, hi, guess, scanned):
    """
    Minimise |W| on [lo, hi] starting from the scan point.

    Returns:
        (E, |W(E)|); the scan point itself when the bracket holds no
        interior minimum or polishing ends above it
    """
    def magnitude(E):
        return abs(shoot(problem, E))

    try:
        E = refine_root(magnitude, (lo, hi), rtol=POLISH_RTOL, guess=guess)
    except BracketError:
        logger.debug("no interior minimum of |W| on [%.10g, %.10g]", lo, hi)
        return guess, scanned
    polished = magnitude(E)
    if polished > scanned:
        return guess, scanned
    return E, polished


def find_spectrum(problem):
    """
    Scan the energy window, polish every local minimum of |W| and keep
    those whose mismatch drops below the acceptance threshold.

    Returns:
        SpectrumResult sorted by energy; empty (with diagnostics) when nothing
        is accepted
    """
    E_lo, E_hi = problem.energy_window
    energies = np.linspace(E_lo, E_hi, problem.scan_points)
    mags = _scan(problem, energies)

    interior = np.arange(1, len(energies) - 1)
    m, left, right = mags[interior], mags[interior - 1], mags[interior + 1]
    is_min = ((m < left) & (m <= right)) | ((m <= left) & (m < right))
    idx = interior[is_min]
    logger.debug("scanned %d energies on [%g, %g], %d candidate minima",
                 len(energies), E_lo, E_hi, len(idx))
    if len(idx) == 0:
        return SpectrumResult((), f"scanned {len(energies)} energies, no local minimum of |W|")

    polished = [_polish(problem, energies[i - 1], energies[i + 1], energies[i], mags[i]) for i in idx]

    accepted = []
    rejected = []
    for E, w in sorted((float(E), float(w)) for E, w in polished):
        if w >= ACCEPT_MISMATCH:
            logger.debug("rejected candidate E=%.10g with |W|=%.3e", E, w)
            rejected.append((E, w))
            continue
        if accepted and abs(E - accepted[-1][0]) <= DUPLICATE_TOL * max(1.0, abs(E)):
            if w < accepted[-1][1]:
                accepted[-1] = (E, w)
            continue
        accepted.append((E, w))

    eigenvalues = tuple(Eigenvalue(E, w, _nodes_at(problem, E)) for E, w in accepted)
    diagnostics = (f"scanned {len(energies)} energies, {len(idx)} candidates, "
                   f"{len(eigenvalues)} accepted, {len(rejected)} rejected")
    logger.info(diagnostics)
    return SpectrumResult(eigenvalues, diagnostics, tuple(rejected))


def compare_levels(found, predicted, tol=math.inf):
    """
    Pair each predicted level with the nearest found one.

    Returns:
        (max_abs_error, unmatched) where unmatched lists the predicted levels
        with no found level within tol; max_abs_error is 0.0 when nothing is
        predicted and inf when something is predicted but nothing found
    """
    found = list(found)
    if not found:
        return (math.inf if predicted else 0.0), list(predicted)
    errors = [min(abs(E - F) for F in found) for E in predicted]
    unmatched = [E for E, err in zip(predicted, errors) if err > tol]
    return (max(errors) if errors else 0.0), unmatched


# ============================================================================
# EIGENFUNCTIONS AND RESIDUALS
# ============================================================================

def eigenfunction(problem, E):
    """
    Stitched solution at energy E, unit L² norm, phase fixed so the sample of
    largest modulus is real and positive.
    """
    try:
        left, right = _integrate_sides(problem, np.array([float(E)]), None)
    except IntegrationOverflowError as e:
        raise SolverError(f"eigenfunction at E={E} overflows at index {e.index}") from e

    psi_l, dpsi_l = left[:, 0, 0], left[:, 1, 0]
    psi_r, dpsi_r = right[:, 0, 0], right[:, 1, 0]
    if abs(psi_r[0]) >= abs(dpsi_r[0]) * problem.domain.spacing:
        ratio = psi_l[-1] / psi_r[0]
    else:
        ratio = dpsi_l[-1] / dpsi_r[0]
    psi = np.concatenate([psi_l, ratio * psi_r[1:]])

    peak = psi[np.argmax(np.abs(psi))]
    psi = psi * (abs(peak) / peak)
    psi = psi / math.sqrt(trapezoid(np.abs(psi) ** 2, dx=problem.domain.spacing))
    return SampledFunction(problem.domain, psi)


def count_nodes(psi, threshold=NODE_THRESHOLD):
    """Sign changes of Re ψ, ignoring samples below threshold·max|Re ψ|."""
    re = psi.values.real
    scale = np.max(np.abs(re))
    if scale == 0.0:
        return 0
    signs = np.sign(re[np.abs(re) >= threshold * scale])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _nodes_at(problem, E):
    try:
        return count_nodes(eigenfunction(problem, E))
    except SolverError as e:
        logger.debug("no node count at E=%.10g: %s", E, e)
        return -1


def operator_residual(potential, psi, E):
    """‖(−D² + V − E)ψ‖ / ‖ψ‖ over the interior points."""
    same_grid(potential, psi)
    h = psi.grid.spacing
    residual = -second_difference(psi.values, h) + (potential.values - E) * psi.values
    return float(np.linalg.norm(residual[1:-1]) / np.linalg.norm(psi.values[1:-1]))

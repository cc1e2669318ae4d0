"""
Complex superpotentials and their SUSY partner potentials.

W(x) = f(x) + i g(x) factorizes H± = −d²/dx² + V± − E with
A = d/dx + W, A† = −d/dx + W and V± = W² ∓ W′ + E.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import trapezoid

from errors import DomainError, InvalidArgumentError
from numerics import (
    Grid,
    SampledFunction,
    central_derivative,
    same_grid,
    second_difference,
    trapezoid_cumulative,
)

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================

PT_TOLERANCE = 1e-9
SECTOR_MARGIN = 3.0
DECAY_THRESHOLD = 1e-3
RESIDUAL_MARGIN = 2
DEFAULT_SECTOR_GRID = Grid(-10.0, 10.0, 2001)


class Sector:
    """Zero-mode sector constants"""
    PLUS = "plus"
    MINUS = "minus"
    NEITHER = "neither"


# ============================================================================
# SUPERPOTENTIALS
# ============================================================================

def _sample(func, x):
    """Evaluate func on x, broadcasting constant results."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = np.asarray(func(x))
    return np.broadcast_to(values, np.shape(x)).copy()


@dataclass(frozen=True)
class SuperpotentialSpec:
    """
    W = f + i g together with the factorization energy E = E_R + i E_I.

    df, dg are optional analytic derivatives; when missing, central
    differences are used. f_integral, g_integral are optional antiderivatives
    used by the zero-mode construction.
    """

    f: Callable
    g: Callable
    E_R: float = 0.0
    E_I: float = 0.0
    df: Optional[Callable] = None
    dg: Optional[Callable] = None
    f_integral: Optional[Callable] = None
    g_integral: Optional[Callable] = None
    label: str = ""

    def __post_init__(self):
        if not (callable(self.f) and callable(self.g)):
            raise InvalidArgumentError("f and g must be callables")
        if not (np.isfinite(self.E_R) and np.isfinite(self.E_I)):
            raise InvalidArgumentError("factorization energy must be finite")

    @classmethod
    def from_complex(cls, w, dw=None, w_integral=None, E_R=0.0, E_I=0.0, label=""):
        """Build from a complex callable W(x), optionally with W′ and ∫W."""
        def part(func, take):
            if func is None:
                return None
            return lambda x: take(np.asarray(func(x), dtype=complex))

        return cls(
            f=part(w, np.real), g=part(w, np.imag), E_R=E_R, E_I=E_I,
            df=part(dw, np.real), dg=part(dw, np.imag),
            f_integral=part(w_integral, np.real), g_integral=part(w_integral, np.imag),
            label=label,
        )

    @property
    def energy(self):
        return complex(self.E_R, self.E_I)

    @property
    def has_analytic_derivatives(self):
        return self.df is not None and self.dg is not None

    def w(self, x):
        return _sample(self.f, x) + 1j * _sample(self.g, x)

    def dw(self, x):
        """Analytic W′, or None when the descriptor carries no derivatives."""
        if not self.has_analytic_derivatives:
            return None
        return _sample(self.df, x) + 1j * _sample(self.dg, x)


def reflect_superpotential(w):
    """W → −W. The partner potentials V+ and V− trade places."""
    def neg(func):
        return None if func is None else (lambda x: -_sample(func, x))

    return SuperpotentialSpec(
        f=neg(w.f), g=neg(w.g), E_R=w.E_R, E_I=w.E_I,
        df=neg(w.df), dg=neg(w.dg),
        f_integral=neg(w.f_integral), g_integral=neg(w.g_integral),
        label=f"-({w.label})" if w.label else "",
    )


# ============================================================================
# PARTNER POTENTIALS
# ============================================================================

@dataclass(frozen=True)
class PartnerPair:
    """Real and imaginary parts of V+ and V− on a common grid."""

    v_plus_R: SampledFunction
    v_plus_I: SampledFunction
    v_minus_R: SampledFunction
    v_minus_I: SampledFunction

    @property
    def grid(self):
        return self.v_plus_R.grid

    @property
    def v_plus(self):
        return self.v_plus_R.with_values(self.v_plus_R.real + 1j * self.v_plus_I.real)

    @property
    def v_minus(self):
        return self.v_minus_R.with_values(self.v_minus_R.real + 1j * self.v_minus_I.real)


def _derivative(analytic, values, grid, singular_endpoints):
    if analytic is not None:
        return _sample(analytic, grid.points)
    return central_derivative(SampledFunction(grid, values, singular_endpoints)).real


def partner_potentials(w, grid, singular_endpoints=False):
    """
    Sample V± = f² − g² ∓ f′ + E_R  +  i (2fg ∓ g′ + E_I) on a grid.

    Args:
        w: SuperpotentialSpec
        grid: Grid
        singular_endpoints: Allow non-finite values at the two end points

    Returns:
        PartnerPair
    """
    x = grid.points
    f = _sample(w.f, x).astype(float)
    g = _sample(w.g, x).astype(float)
    df = _derivative(w.df, f, grid, singular_endpoints)
    dg = _derivative(w.dg, g, grid, singular_endpoints)

    with np.errstate(invalid="ignore", over="ignore"):
        base_R = f * f - g * g + w.E_R
        base_I = 2.0 * f * g + w.E_I
        parts = (base_R - df, base_I - dg, base_R + df, base_I + dg)

    try:
        samples = [SampledFunction(grid, p, singular_endpoints) for p in parts]
    except DomainError as e:
        raise DomainError(f"partner potential of {w.label or 'W'} is not finite: {e}") from e
    return PartnerPair(*samples)


# ============================================================================
# LADDER OPERATORS
# ============================================================================

def _w_values(w, grid):
    if isinstance(w, SampledFunction):
        if w.grid != grid:
            raise InvalidArgumentError(f"grid mismatch: {w.grid} vs {grid}")
        return w.values
    return w.w(grid.points)


def apply_A(w, psi):
    """(d/dx + W)ψ. w may be a SuperpotentialSpec or W sampled on psi's grid."""
    values = np.gradient(psi.values, psi.grid.spacing, edge_order=2) + _w_values(w, psi.grid) * psi.values
    return psi.with_values(values)


def apply_A_dagger(w, psi):
    """(−d/dx + W)ψ."""
    values = -np.gradient(psi.values, psi.grid.spacing, edge_order=2) + _w_values(w, psi.grid) * psi.values
    return psi.with_values(values)


def apply_hamiltonian(potential, psi, E=0.0):
    """(−d²/dx² + V − E)ψ with the central second difference."""
    same_grid(potential, psi)
    values = -second_difference(psi.values, psi.grid.spacing) + (potential.values - E) * psi.values
    return psi.with_values(values)


def _relative_norm(residual, psi, margin=RESIDUAL_MARGIN):
    inner = slice(margin, -margin)
    denom = np.linalg.norm(psi.values[inner])
    if denom == 0.0:
        raise InvalidArgumentError("test function vanishes on the interior")
    return float(np.linalg.norm(residual.values[inner]) / denom)


def intertwining_residual(w, psi):
    """‖(A H₊ − H₋ A)ψ‖ / ‖ψ‖ over the interior of the grid."""
    pair = partner_potentials(w, psi.grid)
    E = w.energy
    lhs = apply_A(w, apply_hamiltonian(pair.v_plus, psi, E))
    rhs = apply_hamiltonian(pair.v_minus, apply_A(w, psi), E)
    return _relative_norm(lhs.with_values(lhs.values - rhs.values), psi)


def adjoint_intertwining_residual(w, psi):
    """‖(H₊ A† − A† H₋)ψ‖ / ‖ψ‖ over the interior of the grid."""
    pair = partner_potentials(w, psi.grid)
    E = w.energy
    lhs = apply_hamiltonian(pair.v_plus, apply_A_dagger(w, psi), E)
    rhs = apply_A_dagger(w, apply_hamiltonian(pair.v_minus, psi, E))
    return _relative_norm(lhs.with_values(lhs.values - rhs.values), psi)


# ============================================================================
# ZERO MODES
# ============================================================================

@dataclass(frozen=True, eq=False)
class ZeroMode(SampledFunction):
    """Zero-energy state annihilated by A (plus) or A† (minus)."""

    normalizable: bool = True
    sector: str = Sector.PLUS


def _integral_of_w(w, grid):
    """∫W from x_min, using the descriptor's antiderivatives when present."""
    x = grid.points
    parts = []
    for func, antiderivative in ((w.f, w.f_integral), (w.g, w.g_integral)):
        if antiderivative is not None:
            values = _sample(antiderivative, x).astype(float)
            parts.append(values - values[0])
        else:
            sampled = SampledFunction(grid, _sample(func, x))
            parts.append(trapezoid_cumulative(sampled).real)
    return parts[0] + 1j * parts[1]


def zero_mode(w, grid, sector):
    """
    ψ = K exp(∓∫W) for the plus/minus sector.

    Normalised to unit L² norm when both ends have decayed below 1e−3 of the
    peak; otherwise scaled to peak modulus 1 and flagged as not normalizable.
    The phase makes ψ at the grid midpoint real and positive, averaging the
    two central samples when n is even.
    """
    if sector not in (Sector.PLUS, Sector.MINUS):
        raise InvalidArgumentError(f"zero modes exist only in the plus/minus sectors, got {sector!r}")
    integral = _integral_of_w(w, grid)
    if not np.all(np.isfinite(integral)):
        raise DomainError(f"∫W is not finite on [{grid.x_min}, {grid.x_max}]")

    log_psi = -integral if sector == Sector.PLUS else integral
    log_psi = log_psi - np.max(log_psi.real)
    psi = np.exp(log_psi)

    normalizable = bool(abs(psi[0]) < DECAY_THRESHOLD and abs(psi[-1]) < DECAY_THRESHOLD)
    if normalizable:
        psi = psi / np.sqrt(trapezoid(np.abs(psi) ** 2, dx=grid.spacing))
    else:
        logger.debug("zero mode (%s) does not decay at both ends, keeping max-modulus scaling", sector)

    n = grid.n_points
    mid = psi[n // 2] if n % 2 else 0.5 * (psi[n // 2 - 1] + psi[n // 2])
    if abs(mid) > 0.0:
        psi = psi * (abs(mid) / mid)
    return ZeroMode(grid, psi, normalizable=normalizable, sector=sector)


def sector_selector(w, grid=DEFAULT_SECTOR_GRID, margin=SECTOR_MARGIN):
    """
    Decide which zero mode can be normalizable.

    Returns:
        Sector.PLUS when Re∫W rises by more than `margin` towards both ends,
        Sector.MINUS when it falls towards both ends, Sector.NEITHER otherwise.
    """
    F = _integral_of_w(w, grid).real
    if not np.all(np.isfinite(F)):
        return Sector.NEITHER
    interior = F[1:-1]
    if F[0] - interior.min() > margin and F[-1] - interior.min() > margin:
        return Sector.PLUS
    if interior.max() - F[0] > margin and interior.max() - F[-1] > margin:
        return Sector.MINUS
    return Sector.NEITHER


# ============================================================================
# PT SYMMETRY
# ============================================================================

def pt_asymmetry(potential, center=None, exclude=0.0):
    """
    max|V(x₀+s) − conj V(x₀−s)| / max|V| with x₀ the grid midpoint.

    Args:
        potential: SampledFunction on a grid symmetric about the mirror
        center: Expected mirror position; checked against the grid midpoint
        exclude: Samples with |s| < exclude are left out of both the
            difference and the scale (a singular point at the mirror)
    """
    grid = potential.grid
    if center is not None and abs(grid.midpoint - center) > 1e-9 * max(1.0, abs(center)):
        raise InvalidArgumentError(f"grid is centred at {grid.midpoint}, not at {center}")
    if exclude < 0.0:
        raise InvalidArgumentError(f"exclude must be non-negative, got {exclude}")
    v = potential.values
    mirror = np.conj(v[::-1])
    kept = np.isfinite(v) & np.isfinite(mirror) & (np.abs(grid.points - grid.midpoint) >= exclude)
    if not np.any(kept):
        raise InvalidArgumentError(f"no samples left outside |s| < {exclude}")
    scale = np.max(np.abs(v[kept]))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(v[kept] - mirror[kept])) / scale)


def is_pt_symmetric(potential, center=None, tol=PT_TOLERANCE, exclude=0.0):
    return pt_asymmetry(potential, center, exclude) < tol

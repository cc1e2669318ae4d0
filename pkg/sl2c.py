"""
The three sl(2,C) potential families V_m built from solutions (F, G) of

    F′ = 1 − F²,    G′ = −F G,

and their SUSY bridge W = (m − ½)F − G, whose partner is the m − 1 member.
"""
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from errors import DomainError, InvalidArgumentError, SingularityError
from numerics import SampledFunction, central_derivative
from susy import SuperpotentialSpec, partner_potentials

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================

GAMMA_MIN = -math.pi / 4
GAMMA_MAX = math.pi / 4


class Case:
    """Family constants"""
    I = "I"
    II = "II"
    III = "III"
    ALL = (I, II, III)


# ============================================================================
# FAMILIES
# ============================================================================

@dataclass(frozen=True)
class Sl2cFamily:
    """
    One member of a family, b = b_R + i b_I.

    Cases I and II are evaluated at the shifted argument x − c − iγ; the sign
    only selects the case III branch F = ±1, G = b e^{∓x}.
    """

    case: str
    m: float
    b_R: float = 0.0
    b_I: float = 0.0
    c: float = 0.0
    gamma: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.case not in Case.ALL:
            raise InvalidArgumentError(f"unknown case {self.case!r}, expected one of {Case.ALL}")
        for name in ("m", "b_R", "b_I", "c", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")
        if not GAMMA_MIN <= self.gamma < GAMMA_MAX:
            raise InvalidArgumentError(f"gamma = {self.gamma} outside [-pi/4, pi/4)")
        if self.sign not in (1, -1):
            raise InvalidArgumentError(f"sign must be +1 or -1, got {self.sign!r}")

    @property
    def b(self):
        return complex(self.b_R, self.b_I)

    @property
    def label(self):
        return f"case {self.case}, m={self.m:g}, b={self.b:g}"


def partner_family(family):
    """The family member m − 1 (the SUSY partner of the bridge)."""
    return replace(family, m=family.m - 1.0)


def eval_F_G(family, x):
    """
    Evaluate (F, G) for a family.

    Args:
        family: Sl2cFamily
        x: Scalar or array of real points

    Returns:
        (F, G) as complex scalars or arrays shaped like x
    """
    xs = np.asarray(x, dtype=float)
    b = family.b
    u = xs - family.c - 1j * family.gamma

    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if family.case == Case.I:
            F = np.tanh(u)
            G = b / np.cosh(u)
        elif family.case == Case.II:
            if family.gamma == 0.0 and np.any(xs == family.c):
                raise SingularityError(f"case II is singular at x = {family.c!r}")
            s = np.sinh(u)
            F = np.cosh(u) / s
            G = b / s
        else:
            F = np.full(xs.shape, complex(family.sign))
            G = b * np.exp(-family.sign * xs)

    bad = ~(np.isfinite(F) & np.isfinite(G))
    if np.any(bad):
        where = np.atleast_1d(xs)[np.flatnonzero(np.atleast_1d(bad))[0]]
        raise DomainError(f"F, G not finite at x = {where!r} ({family.label})")
    if xs.ndim == 0:
        return complex(F), complex(G)
    return F, G


def constraint_residual(family, grid, perturb=0.0):
    """
    (max|F′ − (1 − F²)|, max|G′ + F G|) with F′, G′ by central differences.

    perturb is a constant added to F before differencing; any nonzero value
    turns F into a non-solution.
    """
    F, G = eval_F_G(family, grid.points)
    F = F + perturb
    dF = central_derivative(SampledFunction(grid, F)).values
    dG = central_derivative(SampledFunction(grid, G)).values
    return (
        float(np.max(np.abs(dF - (1.0 - F * F)))),
        float(np.max(np.abs(dG + F * G))),
    )


# ============================================================================
# POTENTIALS
# ============================================================================

def potential_Vm(family, grid):
    """V_m = −(m − ½)(m + ½)(1 − F²) − 2m F G + G²."""
    m = family.m
    F, G = eval_F_G(family, grid.points)
    values = -(m - 0.5) * (m + 0.5) * (1.0 - F * F) - 2.0 * m * F * G + G * G
    return SampledFunction(grid, values)


def potential_Vm_closed_form(family, grid):
    """Explicit hyperbolic/exponential form of V_m for each case."""
    m, b = family.m, family.b
    x = grid.points
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if family.case == Case.III:
            e = np.exp(-family.sign * x)
            values = b * b * e * e - 2.0 * m * b * family.sign * e
        else:
            if family.case == Case.II and family.gamma == 0.0 and np.any(x == family.c):
                raise SingularityError(f"case II is singular at x = {family.c!r}")
            u = x - family.c - 1j * family.gamma
            if family.case == Case.I:
                s = 1.0 / np.cosh(u)
                values = (b * b - m * m + 0.25) * s * s - 2.0 * m * b * s * np.tanh(u)
            else:
                s = 1.0 / np.sinh(u)
                values = (b * b + m * m - 0.25) * s * s - 2.0 * m * b * s * np.cosh(u) / np.sinh(u)
    return SampledFunction(grid, values)


# ============================================================================
# SPECTRA
# ============================================================================

@dataclass(frozen=True)
class FamilySpectrum:
    """Bound levels E_n = −(m − n − ½)² with m − n − ½ > 0."""

    m: float
    levels: tuple

    @property
    def energies(self):
        return [E for _, E in self.levels]


def family_spectrum(m):
    levels = []
    n = 0
    while m - n - 0.5 > 0.0:
        levels.append((n, -((m - n - 0.5) ** 2)))
        n += 1
    return FamilySpectrum(m, tuple(levels))


# ============================================================================
# SUSY BRIDGE
# ============================================================================

def bridge_superpotential(family):
    """
    W = (m − ½)F − G with E_R = −(m − ½)².

    V+ of this W is V_m and V− is V_{m−1}. W′ is supplied analytically from
    the constraint equations.
    """
    k = family.m - 0.5

    def w(x):
        F, G = eval_F_G(family, x)
        return k * F - G

    def dw(x):
        F, G = eval_F_G(family, x)
        return k * (1.0 - F * F) + F * G

    return SuperpotentialSpec.from_complex(w, dw=dw, E_R=-(k * k), label=family.label)


def shape_invariance_residual(family, grid):
    """max|V−(bridge W of m) − V_{m−1}| on the grid."""
    pair = partner_potentials(bridge_superpotential(family), grid)
    target = potential_Vm(partner_family(family), grid)
    residual = float(np.max(np.abs(pair.v_minus.values - target.values)))
    logger.debug("shape invariance residual %.3e (%s)", residual, family.label)
    return residual

"""
Weierstrass ℘ partner potentials.

For a factorization energy E_R and a nonzero constant a, the imaginary part
g of the superpotential solves

    (dg/dz)² = g ((4/3) g³ − 4 E_R g + a)

and is g = (a/4) / (℘(z) + E_R/3) with invariants g₂ = (4/3)E_R²,
g₃ = (8/27)E_R³ − a²/12. The real part f = g′/(2g) makes V+ real and V−
purely imaginary.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from errors import DomainError, InvalidArgumentError, SingularityError, UnsupportedRegimeError
from numerics import CubicRoots, Grid, SampledFunction, solve_depressed_cubic
from susy import PartnerPair, SuperpotentialSpec

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================

DEGENERACY_TOL = 1e-10
AGM_MAX_ITERATIONS = 60
SINGULAR_DENOMINATOR = 1e-300


class Regime:
    """Discriminant regimes"""
    POSITIVE = "nondegenerate_positive"
    NEGATIVE = "nondegenerate_negative"
    DEGENERATE = "degenerate"


# ============================================================================
# PARAMETERS AND INVARIANTS
# ============================================================================

@dataclass(frozen=True)
class EllipticParams:
    """Factorization energy E_R, integration constant a ≠ 0, shift z = x + c."""

    E_R: float
    a: float
    c: float = 0.0

    def __post_init__(self):
        for name in ("E_R", "a", "c"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")
        if self.a == 0.0:
            raise InvalidArgumentError("the integration constant a must be nonzero")

    def to_z(self, x):
        return np.asarray(x, dtype=float) + self.c


@dataclass(frozen=True)
class WeierstrassData:
    g2: float
    g3: float
    roots: CubicRoots
    D: float
    regime: str
    omega: float


PRESETS = {
    # g2 = 4, g3 = 0: roots 1, 0, -1
    "fig1": EllipticParams(math.sqrt(3.0), 4.0 * math.sqrt(2.0 / math.sqrt(3.0))),
    # g2 = 4, g3 = -8/3^(3/2): double root
    "fig2": EllipticParams(math.sqrt(3.0), 8.0 / 3.0**0.25),
}


def discriminant_threshold(E_R):
    """|a| at which D changes sign: D > 0 for |a| below it, D < 0 above."""
    if not E_R > 0.0:
        raise InvalidArgumentError(f"the threshold exists only for E_R > 0, got {E_R}")
    return 8.0 / 3.0 * E_R**1.5


def weierstrass_data(g2, g3):
    """Roots, discriminant, regime and real half-period for the invariants."""
    D = g2**3 - 27.0 * g3**2
    band = DEGENERACY_TOL * max(1.0, abs(g2) ** 3)

    if abs(D) < band:
        regime = Regime.DEGENERATE
        if g2 > 0.0 and g3 < 0.0:
            e = math.sqrt(g2 / 12.0)
            roots = CubicRoots(complex(e), complex(e), complex(-2.0 * e), True)
        else:
            roots = solve_depressed_cubic(g2, g3)
        omega = math.inf
    elif D > 0.0:
        regime = Regime.POSITIVE
        roots = solve_depressed_cubic(g2, g3)
        e1, e2, e3 = roots.real_values()
        lam = e1 - e3
        omega = complete_elliptic_k(math.sqrt((e2 - e3) / lam), math.sqrt((e1 - e2) / lam)) / math.sqrt(lam)
    else:
        regime = Regime.NEGATIVE
        roots = solve_depressed_cubic(g2, g3)
        omega = math.nan

    logger.debug("g2=%r g3=%r D=%r -> %s", g2, g3, D, regime)
    return WeierstrassData(float(g2), float(g3), roots, float(D), regime, omega)


def invariants_from(params):
    E, a = params.E_R, params.a
    g2 = 4.0 / 3.0 * E * E
    g3 = 8.0 / 27.0 * E**3 - a * a / 12.0
    return weierstrass_data(g2, g3)


# ============================================================================
# ELLIPTIC INTEGRALS AND JACOBI FUNCTIONS
# ============================================================================

def agm(a, b):
    """Arithmetic-geometric mean of two nonnegative numbers."""
    if a < 0.0 or b < 0.0:
        raise DomainError("agm is defined for nonnegative arguments")
    for _ in range(AGM_MAX_ITERATIONS):
        if abs(a - b) <= 4.0 * np.finfo(float).eps * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_elliptic_k(k, k_prime=None):
    """
    K(k) = π / (2 agm(1, k′)).

    k_prime may be passed directly when it is known more accurately than
    √(1 − k²).
    """
    if k_prime is None:
        if not abs(k) < 1.0:
            raise DomainError(f"K(k) diverges for |k| >= 1, got k = {k}")
        k_prime = math.sqrt((1.0 - k) * (1.0 + k))
    if k_prime <= 0.0:
        raise DomainError("K(k) diverges for k' = 0")
    return math.pi / (2.0 * agm(1.0, k_prime))


def jacobi_sn_cn_dn(u, k, k_prime=None):
    """
    Jacobi sn, cn, dn for real u by the descending AGM (Landen) scheme.

    Args:
        u: Scalar or array
        k: Modulus, 0 <= k <= 1
        k_prime: Complementary modulus, if known more accurately than √(1 − k²)

    Returns:
        (sn, cn, dn) shaped like u
    """
    u = np.asarray(u, dtype=float)
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {k}")
    if k_prime is None:
        k_prime = math.sqrt((1.0 - k) * (1.0 + k))

    if k_prime == 0.0:
        sech = 1.0 / np.cosh(u)
        return np.tanh(u), sech, sech.copy()
    if k == 0.0:
        return np.sin(u), np.cos(u), np.ones_like(u)

    a_list = [1.0]
    c_list = [k]
    a, b = 1.0, k_prime
    for _ in range(AGM_MAX_ITERATIONS):
        if abs(c_list[-1]) <= np.finfo(float).eps:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_list.append(a)
        c_list.append(c)

    n = len(a_list) - 1
    phi = (2.0**n) * a_list[n] * u
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c_list[i] / a_list[i] * np.sin(phi)))

    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(k_prime * k_prime + k * k * cn * cn)
    return sn, cn, dn


# ============================================================================
# WEIERSTRASS ℘
# ============================================================================

def _check_z(z, upper=math.inf):
    z = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z <= 0.0) or np.any(z >= upper):
        raise DomainError(f"z must lie in (0, {upper}), got values in [{np.min(z)}, {np.max(z)}]")
    return z


def wp_jacobi(z, roots):
    """
    ℘ and ℘′ from three real roots: ℘ = e₃ + λ / sn²(√λ z, k).

    λ = e₁ − e₃, k² = (e₂ − e₃)/λ. |℘′| comes from the factored cubic and
    takes the sign of z − ω.
    """
    e1, e2, e3 = roots.real_values()
    lam = e1 - e3
    if not lam > 0.0:
        raise UnsupportedRegimeError("the root-based route needs e1 > e3")
    k = math.sqrt(max(e2 - e3, 0.0) / lam)
    k_prime = math.sqrt(max(e1 - e2, 0.0) / lam)
    root_lam = math.sqrt(lam)
    omega = complete_elliptic_k(k, k_prime) / root_lam if k_prime > 0.0 else math.inf

    z = np.asarray(z, dtype=float)
    sn, cn, dn = jacobi_sn_cn_dn(root_lam * z, k, k_prime)
    with np.errstate(divide="ignore"):
        inv_sn = 1.0 / np.abs(sn)
    value = e3 + lam * inv_sn**2
    magnitude = 2.0 * lam * root_lam * np.abs(cn) * dn * inv_sn**3
    derivative = np.sign(z - omega) * magnitude
    return value, derivative


def wp_degenerate(z, data):
    """
    ℘ = e + 3e cosech²(√(3e) z) for the double root e = √(g₂/12) (g₃ < 0).

    With g₂ = (4/3)E_R² this is E_R/3 + E_R cosech²(√E_R z).
    """
    if not (data.g2 > 0.0 and data.g3 < 0.0):
        raise UnsupportedRegimeError("degenerate ℘ is built only for a double root above the simple one",
                                     discriminant=data.D)
    z = np.asarray(z, dtype=float)
    e = math.sqrt(data.g2 / 12.0)
    s = math.sqrt(3.0 * e)
    with np.errstate(over="ignore"):
        sh = np.sinh(s * z)
        cosech2 = 1.0 / (sh * sh)
        coth = 1.0 / np.tanh(s * z)
    return e + 3.0 * e * cosech2, -6.0 * e * s * cosech2 * coth


def wp_and_prime(z, data):
    """(℘(z), ℘′(z)) for the supported regimes, with domain checks."""
    if data.regime == Regime.NEGATIVE:
        raise UnsupportedRegimeError(
            f"discriminant D = {data.D!r} < 0: potentials are not real-bounded", discriminant=data.D
        )
    if data.regime == Regime.DEGENERATE:
        return wp_degenerate(_check_z(z), data)
    return wp_jacobi(_check_z(z, 2.0 * data.omega), data.roots)


def wp(z, data):
    return wp_and_prime(z, data)[0]


def wp_prime(z, data):
    return wp_and_prime(z, data)[1]


def wp_second(z, data):
    """℘″ = 6℘² − g₂/2."""
    value = wp(z, data)
    return 6.0 * value * value - 0.5 * data.g2


def wp_laurent(z, data):
    """Small-z Laurent series of ℘ through z⁸."""
    z = np.asarray(z, dtype=float)
    g2, g3 = data.g2, data.g3
    z2 = z * z
    return (1.0 / z2 + g2 * z2 / 20.0 + g3 * z2**2 / 28.0
            + g2 * g2 * z2**3 / 1200.0 + 3.0 * g2 * g3 * z2**4 / 6160.0)


# ============================================================================
# SUPERPOTENTIAL PIECES
# ============================================================================

def _shifted_wp(z, params, data):
    """(P, ℘′) with P = ℘ + E_R/3, rejecting vanishing P."""
    value, derivative = wp_and_prime(z, data)
    P = value + params.E_R / 3.0
    if np.any(np.abs(P) < SINGULAR_DENOMINATOR):
        raise SingularityError("℘ + E_R/3 vanishes on the requested points")
    return P, derivative


def g_of_z(z, params, data):
    """g = (a/4) / (℘ + E_R/3)."""
    P, _ = _shifted_wp(z, params, data)
    return 0.25 * params.a / P


def f_of_z(z, params, data):
    """f = g′/(2g) = −℘′ / (2(℘ + E_R/3))."""
    P, derivative = _shifted_wp(z, params, data)
    return -derivative / (2.0 * P)


def dg_of_z(z, params, data):
    P, derivative = _shifted_wp(z, params, data)
    return -0.25 * params.a * derivative / (P * P)


def df_of_z(z, params, data):
    P, derivative = _shifted_wp(z, params, data)
    second = 6.0 * (P - params.E_R / 3.0) ** 2 - 0.5 * data.g2
    return -second / (2.0 * P) + derivative * derivative / (2.0 * P * P)


def g_ode_residual(params, data, grid, analytic=True):
    """
    max |(dg/dz)² − g((4/3)g³ − 4E_R g + a)| over a z-grid.

    With analytic=False, dg/dz is the central difference of the sampled g.
    """
    z = grid.points
    g = g_of_z(z, params, data)
    if analytic:
        dg = dg_of_z(z, params, data)
    else:
        dg = np.gradient(g, grid.spacing, edge_order=2)
    E, a = params.E_R, params.a
    residual = dg * dg - g * (4.0 / 3.0 * g**3 - 4.0 * E * g + a)
    return float(np.max(np.abs(residual)))


def elliptic_superpotential(params, data):
    """W = f + i g in the x variable (z = x + c), with analytic derivatives."""
    def at_z(func):
        return lambda x: func(params.to_z(x), params, data)

    g = at_z(g_of_z)
    return SuperpotentialSpec(
        f=at_z(f_of_z),
        g=g,
        E_R=params.E_R,
        df=at_z(df_of_z),
        dg=at_z(dg_of_z),
        f_integral=lambda x: 0.5 * np.log(np.abs(g(x))),
        label=f"elliptic E_R={params.E_R:g}, a={params.a:g}",
    )


# ============================================================================
# PARTNER POTENTIALS AND ZERO MODE
# ============================================================================

def elliptic_pair(params, data, grid):
    """
    V+ = 2P − a²/(12P²) (real) and V− = −i (a/2) ℘′/P² (imaginary),
    P = ℘ + E_R/3, sampled on a z-grid strictly inside the domain.
    """
    z = grid.points
    zeros = np.zeros(grid.n_points)
    if data.regime == Regime.DEGENERATE:
        E = params.E_R
        wp_and_prime(z, data)  # domain and branch checks
        s = math.sqrt(E)
        with np.errstate(over="ignore"):
            sh = np.sinh(s * z)
            C = 1.0 / (sh * sh)
            coth = 1.0 / np.tanh(s * z)
        q = 1.0 + 1.5 * C
        v_plus_R = 4.0 / 3.0 * E * (q - 1.0 / (q * q))
        v_minus_I = math.copysign(1.0, params.a) * 6.0 * E * C * coth / (q * q)
    else:
        P, derivative = _shifted_wp(z, params, data)
        a = params.a
        v_plus_R = 2.0 * P - a * a / (12.0 * P * P)
        v_minus_I = -0.5 * a * derivative / (P * P)

    return PartnerPair(
        SampledFunction(grid, v_plus_R),
        SampledFunction(grid, zeros),
        SampledFunction(grid, zeros),
        SampledFunction(grid, v_minus_I),
    )


def v_minus_on_period(params, data, n_points):
    """
    V− on the closed period [0, 2ω], walls included.

    ℘ has poles at both ends but V− does not: V−_I ~ a z there, so the wall
    samples take their limit 0.

    Raises:
        UnsupportedRegimeError: outside the positive-discriminant regime
    """
    if data.regime != Regime.POSITIVE:
        raise UnsupportedRegimeError(f"no real period in the {data.regime} regime", discriminant=data.D)
    grid = Grid(0.0, 2.0 * data.omega, n_points)
    values = np.zeros(n_points, dtype=complex)
    values[1:-1] = elliptic_pair(params, data, grid.subgrid(1, n_points - 2)).v_minus.values
    return SampledFunction(grid, values)


def zero_mode_modulus(params, data, grid, K=1.0):
    """
    |ψ₀⁽⁻⁾| = (|K| √|a| / 2) (℘ + E_R/3)^{−1/2}.

    Scaled to a peak of 1 in the nondegenerate regime; the degenerate one is
    returned unscaled so its plateau can be compared with
    (|K|/2)√(3|a|/(2E_R)).
    """
    P, _ = _shifted_wp(grid.points, params, data)
    modulus = 0.5 * abs(K) * math.sqrt(abs(params.a)) / np.sqrt(P)
    if data.regime != Regime.DEGENERATE:
        modulus = modulus / np.max(modulus)
    return SampledFunction(grid, modulus)


def degenerate_plateau(params, K=1.0):
    """Large-z limit of the degenerate zero-mode modulus."""
    return 0.5 * abs(K) * math.sqrt(3.0 * abs(params.a) / (2.0 * params.E_R))

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import bisect, minimize_scalar, newton

from errors import BracketError, DomainError, IntegrationOverflowError, InvalidArgumentError

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================

MIN_DERIVATIVE_POINTS = 5
ROOT_RTOL = 1e-12
BISECTION_RTOL = 1e-6
MINIMIZE_MAX_ITERATIONS = 500


class Direction:
    """Integration direction constants"""
    FORWARD = "forward"
    BACKWARD = "backward"


# ============================================================================
# GRIDS AND SAMPLED FUNCTIONS
# ============================================================================

@dataclass(frozen=True)
class Grid:
    """Uniform grid x_i = x_min + i*h on [x_min, x_max]."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if isinstance(self.n_points, bool) or int(self.n_points) != self.n_points:
            raise InvalidArgumentError(f"n_points must be an integer, got {self.n_points!r}")
        object.__setattr__(self, "n_points", int(self.n_points))
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        if self.n_points < 3:
            raise InvalidArgumentError(f"a grid needs at least 3 points, got {self.n_points}")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise InvalidArgumentError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise InvalidArgumentError(f"x_min ({self.x_min}) must be below x_max ({self.x_max})")

    @classmethod
    def interior(cls, a, b, n_points, offset=1):
        """
        Grid strictly inside (a, b), keeping `offset` spacings away from both ends.

        Used for singular endpoints (the 1/z² walls of the elliptic potentials).
        The points are symmetric about (a + b)/2.
        """
        if offset < 0:
            raise InvalidArgumentError("offset must be non-negative")
        h = (b - a) / (n_points - 1 + 2 * offset)
        return cls(a + offset * h, b - offset * h, n_points)

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self):
        return self.x_min + np.arange(self.n_points) * self.spacing

    @property
    def midpoint(self):
        return 0.5 * (self.x_min + self.x_max)

    def index_of(self, x):
        """Index of the grid point nearest to x."""
        i = int(round((x - self.x_min) / self.spacing))
        return min(max(i, 0), self.n_points - 1)

    def subgrid(self, start, stop):
        """Grid made of points start..stop (inclusive) of this grid."""
        if not 0 <= start < stop < self.n_points:
            raise InvalidArgumentError(f"invalid subgrid [{start}, {stop}] of {self.n_points} points")
        h = self.spacing
        return Grid(self.x_min + start * h, self.x_min + stop * h, stop - start + 1)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex-valued function tabulated on a Grid."""

    grid: Grid
    values: np.ndarray
    singular_endpoints: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise InvalidArgumentError(
                f"expected {self.grid.n_points} samples, got shape {values.shape}"
            )
        checked = values[1:-1] if self.singular_endpoints else values
        bad = np.flatnonzero(~np.isfinite(checked))
        if bad.size:
            i = int(bad[0]) + (1 if self.singular_endpoints else 0)
            x = self.grid.x_min + i * self.grid.spacing
            raise DomainError(f"non-finite sample at index {i} (x = {x!r})")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, func, grid, singular_endpoints=False):
        return cls(grid, func(grid.points), singular_endpoints)

    @property
    def x(self):
        return self.grid.points

    @property
    def real(self):
        return self.values.real

    @property
    def imag(self):
        return self.values.imag

    def with_values(self, values):
        return SampledFunction(self.grid, values, self.singular_endpoints)


def same_grid(*functions):
    """Raise InvalidArgumentError unless all sampled functions share one grid."""
    first = functions[0].grid
    for f in functions[1:]:
        if f.grid != first:
            raise InvalidArgumentError(f"grid mismatch: {first} vs {f.grid}")
    return first


# ============================================================================
# DIFFERENTIATION AND QUADRATURE
# ============================================================================

def second_difference(values, h):
    """Second derivative, central inside and one-sided second order at the ends."""
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / h**2
    out[0] = (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2] - values[3]) / h**2
    out[-1] = (2.0 * values[-1] - 5.0 * values[-2] + 4.0 * values[-3] - values[-4]) / h**2
    return out


def central_derivative(f, order=1):
    """
    Differentiate a sampled function.

    Args:
        f: SampledFunction with at least 5 points
        order: 1 or 2

    Returns:
        SampledFunction on the same grid, second-order accurate everywhere
    """
    grid = f.grid
    if grid.n_points < MIN_DERIVATIVE_POINTS:
        raise InvalidArgumentError(
            f"derivatives need at least {MIN_DERIVATIVE_POINTS} points, got {grid.n_points}"
        )
    h = grid.spacing
    if order == 1:
        out = np.gradient(f.values, h, edge_order=2)
    elif order == 2:
        out = second_difference(f.values, h)
    else:
        raise InvalidArgumentError(f"unsupported derivative order {order}")
    return SampledFunction(grid, out, f.singular_endpoints)


def trapezoid_cumulative(f):
    """Running trapezoid integral with F(x_min) = 0."""
    return SampledFunction(
        f.grid,
        cumulative_trapezoid(f.values, dx=f.grid.spacing, initial=0.0),
        f.singular_endpoints,
    )


# ============================================================================
# ODE STEPPING
# ============================================================================

def rk4_integrate(rhs, y0, grid, direction=Direction.FORWARD, renormalize_every=None):
    """
    Classical fixed-step Runge-Kutta integration along a grid.

    Args:
        rhs: Callable rhs(x, y) -> dy/dx. y has the shape of y0; extra
            trailing axes are independent systems integrated side by side.
        y0: Initial state at x_min (forward) or x_max (backward)
        grid: Grid whose points are the steps
        direction: Direction.FORWARD or Direction.BACKWARD
        renormalize_every: If set, every that many steps each trailing column
            is divided by its largest modulus. Only ratios within a column
            survive, which is all a shooting solver needs.

    Returns:
        Complex array of shape (n_points, *y0.shape); row i is the state at x_i.
    """
    if direction not in (Direction.FORWARD, Direction.BACKWARD):
        raise InvalidArgumentError(f"unknown direction {direction!r}")
    y = np.array(y0, dtype=complex)
    x = grid.points
    n = grid.n_points
    h = grid.spacing
    out = np.empty((n,) + y.shape, dtype=complex)

    if direction == Direction.FORWARD:
        indices = range(0, n - 1)
        step = 1
    else:
        indices = range(n - 1, 0, -1)
        step = -1
    out[indices[0]] = y
    dx = step * h
    half = 0.5 * dx

    for count, i in enumerate(indices, start=1):
        xi = x[i]
        k1 = rhs(xi, y)
        k2 = rhs(xi + half, y + half * k1)
        k3 = rhs(xi + half, y + half * k2)
        k4 = rhs(x[i + step], y + dx * k3)
        y = y + (dx / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        if not np.all(np.isfinite(y)):
            raise IntegrationOverflowError(i + step)
        if renormalize_every and count % renormalize_every == 0:
            scale = np.max(np.abs(y), axis=0)
            y = y / np.where(scale > 0.0, scale, 1.0)
        out[i + step] = y

    return out


# ============================================================================
# ROOT FINDING
# ============================================================================

@dataclass(frozen=True)
class CubicRoots:
    """Roots of 4σ³ − g₂σ − g₃ = 0.

    All real: e1 ≥ e2 ≥ e3. Otherwise e2 is the real root and e1, e3 are the
    conjugate pair with Im e1 > 0.
    """

    e1: complex
    e2: complex
    e3: complex
    all_real: bool

    def as_tuple(self):
        return (self.e1, self.e2, self.e3)

    def real_values(self):
        if not self.all_real:
            raise DomainError("roots are not all real")
        return (self.e1.real, self.e2.real, self.e3.real)


def solve_depressed_cubic(g2, g3):
    """
    Roots of 4σ³ − g₂σ − g₃ = 0 (trigonometric method when all roots are real,
    Cardano otherwise).
    """
    g2 = float(g2)
    g3 = float(g3)
    if not (math.isfinite(g2) and math.isfinite(g3)):
        raise InvalidArgumentError("cubic coefficients must be finite")

    if g2 == 0.0 and g3 == 0.0:
        return CubicRoots(0j, 0j, 0j, True)

    D = g2**3 - 27.0 * g3**2
    rounding = 64.0 * np.finfo(float).eps * max(1.0, abs(g2) ** 3, 27.0 * g3**2)

    if g2 > 0.0 and D >= -rounding:
        r = math.sqrt(g2 / 12.0)
        arg = min(1.0, max(-1.0, 3.0 * math.sqrt(3.0) * g3 / g2**1.5))
        theta = math.acos(arg) / 3.0
        roots = sorted(
            (2.0 * r * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)),
            reverse=True,
        )
        return CubicRoots(complex(roots[0]), complex(roots[1]), complex(roots[2]), True)

    # σ³ + pσ + q = 0 with a single real root
    p = -g2 / 4.0
    q = -g3 / 4.0
    s = math.sqrt(max((q / 2.0) ** 2 + (p / 3.0) ** 3, 0.0))
    u = float(np.cbrt(-q / 2.0 + s))
    v = float(np.cbrt(-q / 2.0 - s))
    t = u + v
    re = -0.5 * t
    im = 0.5 * math.sqrt(3.0) * abs(u - v)
    return CubicRoots(complex(re, im), complex(t), complex(re, -im), False)


def refine_root(f, bracket, rtol=ROOT_RTOL, guess=None):
    """
    Locate a root (sign change) or a minimiser of |f| inside a bracket.

    Sign changes are narrowed by bisection and polished with the secant
    method; without a sign change the interior minimum of |f|² is returned.
    A guess with |f(guess)| below both ends makes (a, guess, b) a Brent
    bracket, run until the abscissa is known to rtol·|x| + 1e−11.

    Args:
        f: Real scalar function
        bracket: (a, b) with a < b
        rtol: Relative tolerance on the abscissa
        guess: Optional interior point, typically the best point of a scan

    Returns:
        The located abscissa
    """
    a, b = (float(v) for v in bracket)
    if not a < b:
        raise InvalidArgumentError(f"bracket must satisfy a < b, got ({a}, {b})")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    scale = max(1.0, abs(a), abs(b))

    if np.sign(fa) != np.sign(fb):
        x0 = bisect(f, a, b, xtol=BISECTION_RTOL * scale * (b - a), rtol=4 * np.finfo(float).eps)
        f0 = f(x0)
        if f0 == 0.0:
            return x0
        try:
            x = newton(f, x0, x1=x0 + 1e-3 * BISECTION_RTOL * scale, tol=rtol * scale * 1e-3,
                       rtol=rtol, maxiter=50)
        except (RuntimeError, ZeroDivisionError, OverflowError):
            logger.debug("secant polish failed near %r, keeping bisection result", x0)
            return x0
        if not (a <= x <= b) or not abs(f(x)) <= abs(f0):
            return x0
        return float(x)

    def squared(x):
        return abs(f(x)) ** 2

    if guess is not None and a < guess < b and abs(f(guess)) < min(abs(fa), abs(fb)):
        result = minimize_scalar(squared, bracket=(a, float(guess), b), method="brent",
                                 options={"xtol": rtol, "maxiter": MINIMIZE_MAX_ITERATIONS})
    else:
        result = minimize_scalar(squared, bounds=(a, b), method="bounded",
                                 options={"xatol": rtol * scale, "maxiter": MINIMIZE_MAX_ITERATIONS})
    if not result.success:
        logger.debug("minimisation on (%r, %r) stopped early: %s", a, b, result.message)
    x = float(result.x)
    edge = 1e-6 * (b - a)
    if x - a < edge or b - x < edge or not abs(f(x)) < min(abs(fa), abs(fb)):
        raise BracketError(f"no sign change and no interior minimum on ({a}, {b})")
    return x

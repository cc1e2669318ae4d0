import argparse
import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional

from elliptic import PRESETS, EllipticParams, Regime, elliptic_pair, invariants_from, zero_mode_modulus
from errors import InvalidArgumentError, SusyToolkitError, UnsupportedRegimeError
from numerics import Grid
from report import OutputFormat, ReportType, clean_number, create_report, format_table, write_output
from sl2c import Case, Sl2cFamily, bridge_superpotential, family_spectrum, potential_Vm
from spectral import SpectralProblem, compare_levels, find_spectrum
from susy import partner_potentials
from verify import VerifyOptions, format_table as format_check_table, report_json, run_checks

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NUMERIC = 2
EXIT_USAGE = 64

DEFAULT_FAMILY_POINTS = 2001
DEFAULT_FAMILY_HALF_WIDTH = 10.0
DEFAULT_WEIERSTRASS_POINTS = 2001
DEFAULT_SPECTRUM_POINTS = 4001
DEFAULT_SPECTRUM_HALF_WIDTH = 12.0
DECAY_LENGTHS = 6.0
WINDOW_BELOW_E_R = 0.5
WINDOW_TOP = -1e-3
LEVEL_MATCH_TOL = 1e-3


class Command:
    """Subcommand constants"""
    FAMILY = "family"
    WEIERSTRASS = "weierstrass"
    SPECTRUM = "spectrum"
    VERIFY = "verify"


# ============================================================================
# RUN CONFIGURATION
# ============================================================================

@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, built once from the parsed arguments."""

    command: str
    case: str = Case.I
    m: float = 1.0
    b_R: float = 0.0
    b_I: float = 0.0
    c: float = 0.0
    gamma: float = 0.0
    sign: int = 1
    E_R: Optional[float] = None
    a: Optional[float] = None
    preset: Optional[str] = None
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    n_points: Optional[int] = None
    E_min: Optional[float] = None
    E_max: Optional[float] = None
    out: Optional[str] = None
    output_format: str = OutputFormat.CSV
    json_report: bool = False
    perturb: float = 0.0
    verbose: bool = False
    workers: int = 1

    @classmethod
    def from_args(cls, args):
        values = {"command": args.command}
        mapping = {
            "case": "case", "m": "m", "br": "b_R", "bi": "b_I", "c": "c", "gamma": "gamma",
            "er": "E_R", "a": "a", "preset": "preset", "xmin": "x_min", "xmax": "x_max",
            "n": "n_points", "emin": "E_min", "emax": "E_max", "out": "out",
            "format": "output_format", "json": "json_report", "perturb": "perturb",
            "verbose": "verbose", "workers": "workers",
        }
        for arg_name, field_name in mapping.items():
            if hasattr(args, arg_name):
                values[field_name] = getattr(args, arg_name)
        if hasattr(args, "sign"):
            values["sign"] = 1 if args.sign == "+" else -1
        return cls(**values)

    def family(self):
        return Sl2cFamily(self.case, self.m, self.b_R, self.b_I, self.c, self.gamma, self.sign)

    def elliptic_params(self):
        if self.preset is not None:
            if self.E_R is not None or self.a is not None:
                logger.warning("--preset %s overrides --er/--a", self.preset)
            return PRESETS[self.preset]
        if self.E_R is None or self.a is None:
            raise InvalidArgumentError("weierstrass needs --preset or both --er and --a")
        return EllipticParams(self.E_R, self.a)

    def grid(self, x_min, x_max, n_points):
        """Grid from the command line, falling back to the given defaults."""
        return Grid(
            self.x_min if self.x_min is not None else x_min,
            self.x_max if self.x_max is not None else x_max,
            self.n_points if self.n_points is not None else n_points,
        )


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_family(config):
    """Table of V+ and V- for the bridge superpotential of a family member."""
    family = config.family()
    if family.case == Case.II:
        grid = config.grid(family.c + 0.5, family.c + DEFAULT_FAMILY_HALF_WIDTH, DEFAULT_FAMILY_POINTS)
    else:
        grid = config.grid(family.c - DEFAULT_FAMILY_HALF_WIDTH, family.c + DEFAULT_FAMILY_HALF_WIDTH,
                           DEFAULT_FAMILY_POINTS)
    pair = partner_potentials(bridge_superpotential(family), grid)
    rows = zip(grid.points, pair.v_plus_R.real, pair.v_plus_I.real, pair.v_minus_R.real, pair.v_minus_I.real)
    text = format_table(["x", "ReV+", "ImV+", "ReV-", "ImV-"], rows, config.output_format)
    return EXIT_OK if write_output(text, config.out) else EXIT_NUMERIC


def cmd_weierstrass(config):
    """Table of V+R, V-I and |psi0| for the elliptic pair."""
    params = config.elliptic_params()
    data = invariants_from(params)
    n = config.n_points or DEFAULT_WEIERSTRASS_POINTS

    if data.regime == Regime.NEGATIVE:
        raise UnsupportedRegimeError(f"discriminant D = {data.D!r} is negative", discriminant=data.D)
    if data.regime == Regime.DEGENERATE:
        z_max = config.x_max if config.x_max is not None else 8.0 / math.sqrt(params.E_R)
        grid = Grid(config.x_min if config.x_min is not None else z_max / n, z_max, n)
    elif config.x_min is None and config.x_max is None:
        grid = Grid.interior(0.0, 2.0 * data.omega, n)
    else:
        grid = config.grid(0.0, 2.0 * data.omega, n)

    logger.info("g2=%r g3=%r D=%r regime=%s omega=%r", data.g2, data.g3, data.D, data.regime, data.omega)
    pair = elliptic_pair(params, data, grid)
    modulus = zero_mode_modulus(params, data, grid)
    rows = zip(grid.points, pair.v_plus_R.real, pair.v_minus_I.real, modulus.real)
    text = format_table(["z", "V+R", "V-I", "|psi0|"], rows, config.output_format)
    return EXIT_OK if write_output(text, config.out) else EXIT_NUMERIC


def cmd_spectrum(config):
    """Shooting spectrum of V_m compared against -(m - n - 1/2)^2."""
    family = config.family()
    if family.gamma != 0.0:
        logger.warning("gamma = %g: the predicted levels assume gamma = 0", family.gamma)
    predicted = family_spectrum(family.m).energies
    E_R = -((family.m - 0.5) ** 2)

    half_width = DEFAULT_SPECTRUM_HALF_WIDTH
    if predicted:
        half_width = max(half_width, DECAY_LENGTHS / math.sqrt(-max(predicted)))
    grid = config.grid(family.c - half_width, family.c + half_width, DEFAULT_SPECTRUM_POINTS)
    window = (
        config.E_min if config.E_min is not None else E_R - WINDOW_BELOW_E_R,
        config.E_max if config.E_max is not None else WINDOW_TOP,
    )

    problem = SpectralProblem(potential_Vm(family, grid), energy_window=window, workers=config.workers)
    result = find_spectrum(problem)
    error, unmatched = compare_levels(result.energies, predicted, LEVEL_MATCH_TOL)

    data = {
        "family": {
            "case": family.case, "m": family.m, "b_R": family.b_R, "b_I": family.b_I,
            "c": family.c, "gamma": family.gamma, "sign": family.sign,
        },
        "domain": [grid.x_min, grid.x_max, grid.n_points],
        "window": list(window),
        "predicted": predicted,
        "found": [[ev.E, ev.mismatch] for ev in result.eigenvalues],
        "max_abs_error": clean_number(error),
        "diagnostics": result.diagnostics,
    }
    if not write_output(create_report(ReportType.SPECTRUM, data), config.out):
        return EXIT_NUMERIC
    if unmatched:
        logger.error("predicted levels not found: %s (%s)", unmatched, result.diagnostics)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_verify(config):
    """Run the invariant suite; exit 0 only if every check passes."""
    results = run_checks(VerifyOptions(perturb=config.perturb, workers=config.workers))
    table = format_check_table(results)
    if config.json_report:
        if not write_output(report_json(results), config.out):
            return EXIT_NUMERIC
        stream = sys.stderr if config.out in (None, "-") else sys.stdout
        stream.write(table)
    elif not write_output(table, config.out):
        return EXIT_NUMERIC
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


COMMANDS = {
    Command.FAMILY: cmd_family,
    Command.WEIERSTRASS: cmd_weierstrass,
    Command.SPECTRUM: cmd_spectrum,
    Command.VERIFY: cmd_verify,
}


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    common = UsageErrorParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--workers", type=int, default=1, help="threads for the energy scan")

    family_args = UsageErrorParser(add_help=False)
    family_args.add_argument("--case", choices=Case.ALL, default=Case.I)
    family_args.add_argument("--m", type=float, default=1.0)
    family_args.add_argument("--br", type=float, default=0.0, help="real part of b")
    family_args.add_argument("--bi", type=float, default=0.0, help="imaginary part of b")
    family_args.add_argument("--c", type=float, default=0.0, help="shift")
    family_args.add_argument("--gamma", type=float, default=0.0, help="imaginary shift, in [-pi/4, pi/4)")
    family_args.add_argument("--sign", choices=["+", "-"], default="+", help="case III branch")

    grid_args = UsageErrorParser(add_help=False)
    grid_args.add_argument("--xmin", type=float, default=None)
    grid_args.add_argument("--xmax", type=float, default=None)
    grid_args.add_argument("--n", type=int, default=None, help="number of grid points")

    format_args = UsageErrorParser(add_help=False)
    format_args.add_argument("--format", choices=OutputFormat.ALL, default=OutputFormat.CSV)

    parser = UsageErrorParser(
        prog="main.py",
        description="SUSY partner potentials: sl(2,C) families, Weierstrass pairs and spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(Command.FAMILY, parents=[common, family_args, grid_args, format_args],
                   help="tabulate V+ and V- of a family member")

    weierstrass = sub.add_parser(Command.WEIERSTRASS, parents=[common, grid_args, format_args],
                                 help="tabulate the Weierstrass partner pair")
    weierstrass.add_argument("--er", type=float, default=None, help="factorization energy E_R")
    weierstrass.add_argument("--a", type=float, default=None, help="integration constant a")
    weierstrass.add_argument("--preset", choices=sorted(PRESETS), default=None)

    spectrum = sub.add_parser(Command.SPECTRUM, parents=[common, family_args, grid_args],
                              help="shooting spectrum against the predicted levels")
    spectrum.add_argument("--emin", type=float, default=None)
    spectrum.add_argument("--emax", type=float, default=None)

    verify = sub.add_parser(Command.VERIFY, parents=[common], help="run the invariant suite")
    verify.add_argument("--json", action="store_true", help="machine-readable report")
    verify.add_argument("--perturb", type=float, default=0.0, help="offset added to F in the constraint checks")

    return parser


def configure_logging(verbose=False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="[%(levelname)s] %(message)s",
        stream=sys.stderr,
        force=True,
    )


# ============================================================================
# MAIN PROGRAM
# ============================================================================

def main(argv=None):
    """
    Parse arguments, run one command and return the process exit code.

    0 success, 1 verification failure, 2 solver or numeric failure, 64 usage error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except InvalidArgumentError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except UnsupportedRegimeError as e:
        logger.error("%s (D = %r)", e, e.discriminant)
        return EXIT_NUMERIC
    except SusyToolkitError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_NUMERIC


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n[SHUTDOWN] Interrupted by user", file=sys.stderr)
        sys.exit(130)

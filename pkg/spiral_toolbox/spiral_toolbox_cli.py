"""
spiral-toolbox command line

    spiral-toolbox generate --profile euler.json --step 1e-3 --output euler.csv --plot-data
    spiral-toolbox estimate --input euler.csv --output euler_intrinsics.csv
    spiral-toolbox classify --input euler.csv --output euler.json
    spiral-toolbox check --profile p.json --check developable --coeffs 1,0,0,1 --output report.json
    spiral-toolbox surface --profile p.json --coeffs 1,0,0,1 --grid 256,32 --output patch.obj --numeric
"""
import argparse
import logging
import sys
from dataclasses import dataclass, field

from spiral_toolbox import spiral_toolbox_commands as stc
from spiral_toolbox import spiral_toolbox_utils as stu
from spiral_toolbox.spiral_toolbox_errors import DomainError, SpiralToolboxError
from spiral_toolbox.spiral_toolbox_utils import lk

log = logging.getLogger(__name__)

COMMANDS = ("generate", "estimate", "classify", "check", "surface")
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass
class JobSpec(object):
    command: str
    output_path: str
    profile_path: str = None
    input_paths: list = field(default_factory=list)
    tol: float = None
    step: float = None
    check_name: str = None
    coeffs: tuple = None
    indicatrix: str = "tangent"
    include_endpoints: bool = False
    plot_data: bool = False
    derived: list = field(default_factory=list)
    numeric: bool = False
    tol_k: float = None
    v_range: tuple = None
    grid: tuple = None
    jobs: int = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError("unknown command '{}'".format(self.command))
        for name in ("tol", "step", "tol_k"):
            value = getattr(self, name)
            if value is not None and not value > 0.0:
                raise DomainError("--{} must be positive, got {}".format(name.replace("_", "-"), value))
        if self.coeffs is not None and len(self.coeffs) not in (4, 5):
            raise DomainError("--coeffs takes a,b,c,d or a,b,c,d,lambda")
        if self.grid is not None and (len(self.grid) != 2 or min(self.grid) < 2):
            raise DomainError("--grid takes ns,nv with both at least 2")


def _float_list(count, name):
    def parse(text):
        try:
            return tuple(stu.parse_float_list(text, count=count, name=name))
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    return parse


def build_parser():
    parser = argparse.ArgumentParser(prog="spiral-toolbox",
                                     description="Synthesize, estimate and classify spiral space curves")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="errors only")
    parser.add_argument("--settings", help="ini file overriding the user settings")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", required=True, help="output file (directory for batch classify)")
    common.add_argument("--tol", type=float)

    profile = argparse.ArgumentParser(add_help=False)
    profile.add_argument("--profile", help="JSON profile spec")

    surface = argparse.ArgumentParser(add_help=False)
    surface.add_argument("--step", type=float, help="integration step, defaults to span / step_divisions")
    surface.add_argument("--v-range", type=_float_list(2, "--v-range"))
    surface.add_argument("--grid", type=_float_list(2, "--grid"))
    surface.add_argument("--numeric", action="store_true", help="also estimate Gaussian curvature on the patch")
    surface.add_argument("--tol-k", type=float, help="Gaussian curvature tolerance")

    subparsers = parser.add_subparsers(dest="command", required=True)

    generate = subparsers.add_parser("generate", parents=[common, profile], help="integrate a profile pair")
    generate.add_argument("--step", type=float)
    generate.add_argument("--plot-data", action="store_true", help="also write <stem>_plot.csv")
    generate.add_argument("--derived", action="append", default=[], choices=sorted(stc.DERIVED_CURVES),
                          help="also write <stem>_<name>.csv, repeatable")
    generate.add_argument("--coeffs", type=_float_list((4, 5), "--coeffs"),
                          help="a,b,c,d[,lambda], also write the offset curve <stem>_beta.csv")

    estimate = subparsers.add_parser("estimate", parents=[common], help="estimate kappa, tau from a curve")
    estimate.add_argument("--input", action="append", default=[], required=True)
    estimate.add_argument("--include-endpoints", action="store_true")

    classify = subparsers.add_parser("classify", parents=[common, profile], help="label a curve")
    classify.add_argument("--input", action="append", default=[], help="curve or intrinsics CSV, repeatable")
    classify.add_argument("--include-endpoints", action="store_true")
    classify.add_argument("--jobs", type=int, help="worker threads for several inputs")

    check = subparsers.add_parser("check", parents=[common, profile, surface], help="run a theorem check")
    check.add_argument("--check", required=True, dest="check_name")
    check.add_argument("--coeffs", type=_float_list((4, 5), "--coeffs"))
    check.add_argument("--indicatrix", choices=("tangent", "binormal"), default="tangent")

    surface_cmd = subparsers.add_parser("surface", parents=[common, profile, surface], help="export a ruled surface")
    surface_cmd.add_argument("--coeffs", type=_float_list((4, 5), "--coeffs"), required=True)

    return parser


def job_from_args(args):
    grid = tuple(int(n) for n in args.grid) if getattr(args, "grid", None) else None
    return JobSpec(command=args.command,
                   output_path=args.output,
                   profile_path=getattr(args, "profile", None),
                   input_paths=list(getattr(args, "input", None) or []),
                   tol=args.tol,
                   step=getattr(args, "step", None),
                   check_name=getattr(args, "check_name", None),
                   coeffs=getattr(args, "coeffs", None),
                   indicatrix=getattr(args, "indicatrix", "tangent"),
                   include_endpoints=getattr(args, "include_endpoints", False),
                   plot_data=getattr(args, "plot_data", False),
                   derived=list(getattr(args, "derived", None) or []),
                   numeric=getattr(args, "numeric", False),
                   tol_k=getattr(args, "tol_k", None),
                   v_range=getattr(args, "v_range", None),
                   grid=grid,
                   jobs=getattr(args, "jobs", None))


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def run(job):
    """Execute one JobSpec and return the exit code"""
    return stc.get_command(job).run()


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    if args.settings:
        lk.use_settings_file(args.settings)

    try:
        return run(job_from_args(args))
    except (SpiralToolboxError, OSError) as e:
        log.error("%s: %s", type(e).__name__, " ".join(str(e).split()))
        return stc.EXIT_INPUT_ERROR

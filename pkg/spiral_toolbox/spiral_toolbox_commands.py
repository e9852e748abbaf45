"""
One class per CLI command. run(job) writes the command's files and returns the exit code.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor

from spiral_toolbox import spiral_toolbox_checks as stc
from spiral_toolbox import spiral_toolbox_utils as stu
from spiral_toolbox.formats import curve_csv, report_json, surface_obj
from spiral_toolbox.geometry import classifiers, constructions, discrete_geometry, frenet_integrator
from spiral_toolbox.spiral_toolbox_errors import DomainError, ParseError
from spiral_toolbox.spiral_toolbox_utils import lk

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

DERIVED_CURVES = {
    "darboux": constructions.darboux_curve,
    "reciprocal": constructions.reciprocal_curve,
    "tangent": constructions.tangent_indicatrix,
    "binormal": constructions.binormal_indicatrix,
}


def sibling_path(path, suffix, extension=None):
    """out/curve.csv -> out/curve_<suffix>.csv"""
    stem, ext = os.path.splitext(path)
    return "{}_{}{}".format(stem, suffix, ext if extension is None else extension)


def read_header(path):
    with open(path, "r") as fp:
        return [name.strip() for name in fp.readline().split(",")]


def load_intrinsics(path, include_endpoints=False):
    """Intrinsic samples from an s,kappa,tau file, or estimated from a curve file"""
    if read_header(path) == curve_csv.INTRINSICS_HEADER:
        return curve_csv.read_intrinsics_csv(path)
    curve = curve_csv.read_curve_csv(path)
    return discrete_geometry.estimate_curvature_torsion(curve, include_endpoints=include_endpoints)


def write_outputs(outputs):
    """outputs: (writer, path, value) triples, written only once every value is built"""
    for writer, path, value in outputs:
        writer(path, value)
        log.debug("wrote %s", path)


def integration_step(job, pp):
    if job.step is not None:
        return job.step
    return pp.span / lk.get(lk.step_divisions)


class CommandBase(object):
    COMMAND_NAME = None
    NEEDS_PROFILE = False
    NEEDS_INPUT = False

    def __init__(self, job):
        self.job = job

    def validate(self):
        if self.NEEDS_PROFILE and self.job.profile_path is None:
            raise DomainError("'{}' needs --profile".format(self.COMMAND_NAME))
        if self.NEEDS_INPUT and not self.job.input_paths:
            raise DomainError("'{}' needs --input".format(self.COMMAND_NAME))

    def profile_pair(self):
        return report_json.read_profile_spec(self.job.profile_path)

    def run(self):
        raise NotImplementedError("'run' not implemented: {}".format(self.COMMAND_NAME))


class GenerateCommand(CommandBase):
    COMMAND_NAME = "generate"
    NEEDS_PROFILE = True

    def run(self):
        job = self.job
        pp = self.profile_pair()
        curve = frenet_integrator.integrate_frenet(pp, step=integration_step(job, pp))
        outputs = [(curve_csv.write_curve_csv, job.output_path, curve)]

        if job.plot_data:
            outputs.append((curve_csv.write_plot_csv, sibling_path(job.output_path, "plot"), curve))

        for name in job.derived:
            outputs.append((curve_csv.write_curve_csv, sibling_path(job.output_path, name),
                            DERIVED_CURVES[name](curve)))

        if job.coeffs is not None:
            a, b, c, d = job.coeffs[:4]
            lam = job.coeffs[4] if len(job.coeffs) > 4 else 0.0
            beta = constructions.offset_curve_beta(curve, a, b, c, d, lam)
            outputs.append((curve_csv.write_curve_csv, sibling_path(job.output_path, "beta"), beta))

        write_outputs(outputs)
        return EXIT_OK


class EstimateCommand(CommandBase):
    COMMAND_NAME = "estimate"
    NEEDS_INPUT = True

    def validate(self):
        super(EstimateCommand, self).validate()
        if len(self.job.input_paths) > 1:
            raise DomainError("'estimate' takes a single --input, got {}".format(len(self.job.input_paths)))

    def run(self):
        curve = curve_csv.read_curve_csv(self.job.input_paths[0])
        samples = discrete_geometry.estimate_curvature_torsion(curve, include_endpoints=self.job.include_endpoints)
        curve_csv.write_intrinsics_csv(self.job.output_path, samples)
        return EXIT_OK


class ClassifyCommand(CommandBase):
    COMMAND_NAME = "classify"

    def validate(self):
        job = self.job
        if (job.profile_path is None) == (not job.input_paths):
            raise DomainError("'classify' needs either --profile or --input")

    def classify_file(self, input_path):
        samples = load_intrinsics(input_path, include_endpoints=self.job.include_endpoints)
        tol = self.job.tol if self.job.tol is not None else lk.get(lk.samples_tolerance)
        return classifiers.classify(samples, tol=tol)

    def run(self):
        job = self.job
        if job.profile_path is not None:
            tol = job.tol if job.tol is not None else lk.get(lk.profile_tolerance)
            report_json.write_report(job.output_path, classifiers.classify(self.profile_pair(), tol=tol))
            return EXIT_OK

        if len(job.input_paths) == 1:
            report_json.write_report(job.output_path, self.classify_file(job.input_paths[0]))
            return EXIT_OK

        # several inputs: output_path is a directory, one report per input
        stems = [os.path.splitext(os.path.basename(p))[0] for p in job.input_paths]
        if len(set(stems)) != len(stems):
            raise DomainError("input file names must be unique to share an output directory")

        paths = [os.path.join(job.output_path, "{}_classify.json".format(stem)) for stem in stems]
        jobs = job.jobs if job.jobs is not None else lk.get(lk.classify_jobs)
        with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
            # list() re-raises the first failure
            reports = list(executor.map(self.classify_file, job.input_paths))

        if not os.path.isdir(job.output_path):
            os.makedirs(job.output_path)
        write_outputs([(report_json.write_report, path, report) for path, report in zip(paths, reports)])
        return EXIT_OK


class CheckCommand(CommandBase):
    COMMAND_NAME = "check"
    NEEDS_PROFILE = True

    def validate(self):
        super(CheckCommand, self).validate()
        if not self.job.check_name:
            raise DomainError("'check' needs --check")

    def run(self):
        job = self.job
        check = stc.get_check(job.check_name)
        tol = job.tol if job.tol is not None else lk.get(lk.profile_tolerance)
        report = check.run(self.profile_pair(), tol, coeffs=job.coeffs,
                           indicatrix=job.indicatrix, numeric=job.numeric,
                           tol_k=job.tol_k, v_range=surface_v_range(job), grid=surface_grid(job))
        report_json.write_report(job.output_path, report)
        log.info("check %s %s (max violation %.3e, tol %g)", report.name,
                 "passed" if report.passed else "failed", report.max_violation, report.tol)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def surface_v_range(job):
    return tuple(job.v_range if job.v_range is not None else lk.get(lk.surface_v_range))


def surface_grid(job):
    grid = job.grid if job.grid is not None else lk.get(lk.surface_grid)
    return tuple(int(n) for n in grid)


class SurfaceCommand(CommandBase):
    COMMAND_NAME = "surface"
    NEEDS_PROFILE = True

    def run(self):
        job = self.job
        if job.coeffs is None:
            raise DomainError("'surface' needs --coeffs a,b,c,d")
        a, b, c, d = job.coeffs[:4]

        pp = self.profile_pair()
        curve = frenet_integrator.integrate_frenet(pp, step=integration_step(job, pp))
        v_min, v_max = surface_v_range(job)
        n_s, n_v = surface_grid(job)
        patch = constructions.ruled_surface(curve, a, b, c, d, v_min, v_max, n_v, n_s=n_s)
        outputs = [(surface_obj.write_obj, job.output_path, patch)]

        tol = job.tol if job.tol is not None else lk.get(lk.profile_tolerance)
        report = constructions.check_developable(pp, a, b, c, d, tol)
        if job.numeric:
            tol_k = job.tol_k if job.tol_k is not None else \
                lk.get(lk.surface_gaussian_tol) * max(1.0, patch.diameter ** 2)
            numeric = constructions.check_developable_numeric(pp, a, b, c, d, tol_k=tol_k,
                                                              v_range=(v_min, v_max), grid=(n_s, n_v),
                                                              curve=curve)
            outputs.append((report_json.write_report, sibling_path(job.output_path, "gaussian", ".json"), numeric))
        outputs.append((report_json.write_report, sibling_path(job.output_path, "check", ".json"), report))

        write_outputs(outputs)
        return EXIT_OK


def get_command_classes():
    return {cls.COMMAND_NAME: cls for cls in stu.all_subclasses(CommandBase) if cls.COMMAND_NAME}


def get_command(job):
    command_classes = get_command_classes()
    if job.command not in command_classes:
        raise ParseError("unknown command '{}'".format(job.command), field="command")
    command = command_classes[job.command](job)
    command.validate()
    return command

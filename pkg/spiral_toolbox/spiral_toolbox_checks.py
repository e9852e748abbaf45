"""
Theorem checks available to the `check` command.

Any subclass of TheoremCheckBase is picked up by name, including subclasses defined
in extension modules (see spiral_toolbox_utils.import_extra_modules).
"""
from spiral_toolbox import spiral_toolbox_utils as stu
from spiral_toolbox.geometry import constructions
from spiral_toolbox.spiral_toolbox_errors import DomainError


class TheoremCheckBase(object):
    CHECK_NAME = None
    COEFF_COUNT = 0  # how many of (a, b, c, d, lambda) run() expects

    def run(self, pp, tol, coeffs=(), **options):
        raise NotImplementedError("'run' not implemented: {}".format(self.CHECK_NAME))

    @classmethod
    def validate_coeffs(cls, coeffs):
        coeffs = tuple(coeffs or ())
        if len(coeffs) < cls.COEFF_COUNT:
            raise DomainError("check '{}' needs --coeffs with {} values, got {}".format(
                cls.CHECK_NAME, cls.COEFF_COUNT, len(coeffs)))
        return coeffs[:cls.COEFF_COUNT]


class DarbouxGeodesicCheck(TheoremCheckBase):
    CHECK_NAME = "darboux"

    def run(self, pp, tol, coeffs=(), **options):
        return constructions.check_darboux_geodesic(pp, tol)


class ReciprocalDarbouxCheck(TheoremCheckBase):
    CHECK_NAME = "reciprocal"

    def run(self, pp, tol, coeffs=(), **options):
        return constructions.reciprocal_darboux_check(pp, tol)


class InvoluteEvoluteCheck(TheoremCheckBase):
    CHECK_NAME = "involute"
    COEFF_COUNT = 4

    def run(self, pp, tol, coeffs=(), indicatrix=constructions.TANGENT, **options):
        a, b, c, d = self.validate_coeffs(coeffs)
        return constructions.check_involute_evolute(pp, a, b, c, d, tol, indicatrix=indicatrix)


class DevelopableCheck(TheoremCheckBase):
    CHECK_NAME = "developable"
    COEFF_COUNT = 4

    def run(self, pp, tol, coeffs=(), numeric=False, **options):
        a, b, c, d = self.validate_coeffs(coeffs)
        report = constructions.check_developable(pp, a, b, c, d, tol)
        if numeric:
            numeric_report = constructions.check_developable_numeric(
                pp, a, b, c, d,
                tol_k=options.get("tol_k"),
                v_range=options.get("v_range", constructions.DEFAULT_V_RANGE),
                grid=options.get("grid", constructions.DEFAULT_SURFACE_GRID),
                curve=options.get("curve"))
            report.notes.append("numeric max |K| {:.3e} against tol {:.3e}: {}".format(
                numeric_report.max_violation, numeric_report.tol,
                "flat" if numeric_report.passed else "curved"))
        return report


def get_check_classes():
    stu.import_extra_modules()
    check_classes = {}
    for cls in stu.all_subclasses(TheoremCheckBase):
        if cls.CHECK_NAME:
            check_classes[cls.CHECK_NAME] = cls
    return check_classes


def get_check(check_name):
    check_classes = get_check_classes()
    if check_name not in check_classes:
        raise DomainError("unknown check '{}', available: {}".format(check_name, ", ".join(sorted(check_classes))))
    return check_classes[check_name]()

"""
Spiral taxonomy: decide which curve classes a ProfilePair or a set of estimated
intrinsic samples belongs to, by fitting each class's defining relation.
"""
import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from spiral_toolbox.geometry import discrete_geometry as dg
from spiral_toolbox.geometry import profiles
from spiral_toolbox.geometry.discrete_geometry import FitResult, IntrinsicSamples
from spiral_toolbox.geometry.profiles import ProfileFamily, ProfilePair
from spiral_toolbox.spiral_toolbox_errors import (
    DomainError, InsufficientDataError, RankError, SpiralToolboxError,
)

log = logging.getLogger(__name__)

PROFILE_TOLERANCE = 1e-9
SAMPLES_TOLERANCE = 1e-3
PROFILE_SAMPLE_COUNT = 257
MIN_CLASSIFY_ROWS = 6


class Label(enum.Enum):
    PLANAR_CORNU = "PlanarCornu"
    EULER_SPIRAL = "EulerSpiral"
    LOGARITHMIC_SPIRAL = "LogarithmicSpiral"
    GENERALIZED_EULER = "GeneralizedEuler"
    GENERAL_HELIX = "GeneralHelix"
    RECTIFYING = "Rectifying"
    BERTRAND = "Bertrand"

    def __str__(self):
        return self.value


KAPPA_OVER_TAU = "kappa/tau"
TAU_OVER_KAPPA = "tau/kappa"

# (implying label, implied label)
IMPLICATIONS = (
    (Label.EULER_SPIRAL, Label.GENERALIZED_EULER),
    (Label.LOGARITHMIC_SPIRAL, Label.GENERALIZED_EULER),
    (Label.GENERAL_HELIX, Label.GENERALIZED_EULER),
    (Label.EULER_SPIRAL, Label.BERTRAND),
)


@dataclass
class ClassificationReport(object):
    labels: frozenset
    fits: dict
    tol_used: float
    ratio_orientation: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def sorted_labels(self):
        return [label for label in Label if label in self.labels]

    def to_dict(self):
        return {
            "labels": [str(label) for label in self.sorted_labels],
            "fits": {key: fit.to_dict() for key, fit in sorted(self.fits.items())},
            "tol": self.tol_used,
            "ratio_orientation": dict(sorted(self.ratio_orientation.items())),
            "notes": list(self.notes),
        }


def _intrinsics(source, count=PROFILE_SAMPLE_COUNT):
    if isinstance(source, ProfilePair):
        return IntrinsicSamples.from_profile_pair(source, count)
    if isinstance(source, IntrinsicSamples):
        return source
    raise DomainError("expected a ProfilePair or IntrinsicSamples, got {}".format(type(source).__name__))


def _scale(values):
    return max(1.0, float(np.max(np.abs(values)))) if len(values) else 1.0


def _accepts(fit, values, tol):
    return fit is not None and fit.max_residual <= tol * _scale(values)


def _quotient(numerator, denominator):
    """numerator/denominator on the rows where the denominator is not (numerically) zero"""
    limit = 1e-12 * max(float(np.max(np.abs(denominator))), 1e-300)
    mask = np.abs(denominator) > limit
    if np.count_nonzero(mask) < 4 or float(np.max(np.abs(denominator))) == 0.0:
        return None, mask
    return numerator[mask] / denominator[mask], mask


def _try_fit(fit_func, s, values):
    try:
        return fit_func(dg.samples_to_pairs(s, values))
    except SpiralToolboxError as e:
        log.debug("%s skipped: %s", fit_func.__name__, e)
        return None


def fit_bertrand(source):
    """
    Least-squares (lambda, mu) for lambda*kappa + mu*tau = 1.

    Stored as a = lambda, b = mu (c = 0, d = 1). When kappa and tau are proportional
    only constant profiles admit a solution, and the minimum norm one is reported.
    """
    samples = _intrinsics(source)
    design = np.column_stack([samples.kappa, samples.tau])
    ones = np.ones(len(samples))

    if not np.any(design):
        raise RankError("kappa and tau are both identically zero")

    solution, _, rank, _ = np.linalg.lstsq(design, ones, rcond=1e-10)
    residual = design @ solution - ones
    if rank < 2 and np.max(np.abs(residual)) > 1e-9:
        raise RankError("kappa and tau samples are collinear through the origin, no lambda, mu exist")

    lam, mu = solution
    coefficients = profiles.RationalLinearProfile(float(lam), float(mu), 0.0, 1.0)
    return FitResult(family=ProfileFamily.LINEAR,
                     coefficients=coefficients,
                     rms_residual=float(np.sqrt(np.mean(residual ** 2))),
                     max_residual=float(np.max(np.abs(residual))),
                     n_points=len(samples))


class _Classifier(object):
    """Collects fits and labels for one classify() call"""

    def __init__(self, samples, tol):
        self.s = samples.s
        self.kappa = samples.kappa
        self.tau = samples.tau
        self.tol = tol
        self.labels = set()
        self.fits = {}
        self.orientation = {}
        self.notes = []

    def linear_and_constant(self, s, values):
        return _try_fit(dg.fit_linear, s, values), _try_fit(dg.fit_constant, s, values)

    def is_linear(self, s, values):
        linear, constant = self.linear_and_constant(s, values)
        linear_ok = _accepts(linear, values, self.tol)
        nonconstant = not _accepts(constant, values, self.tol)
        return linear, linear_ok, nonconstant

    def run(self):
        kappa_fit, kappa_linear, kappa_moves = self.is_linear(self.s, self.kappa)
        tau_fit, tau_linear, tau_moves = self.is_linear(self.s, self.tau)
        tau_vanishes = float(np.max(np.abs(self.tau))) <= self.tol

        if tau_vanishes and kappa_linear and kappa_moves:
            self.add(Label.PLANAR_CORNU, kappa_fit)

        if kappa_linear and tau_linear:
            self.add(Label.EULER_SPIRAL, kappa_fit)
            self.fits["EulerSpiral.tau"] = tau_fit

        self.check_logarithmic()
        self.check_tau_over_kappa(tau_vanishes)
        self.check_generalized()
        self.check_bertrand()
        self.enforce_implications()

        return ClassificationReport(labels=frozenset(self.labels),
                                    fits=self.fits,
                                    tol_used=self.tol,
                                    ratio_orientation=self.orientation,
                                    notes=self.notes)

    def add(self, label, fit=None, orientation=None):
        self.labels.add(label)
        if fit is not None:
            self.fits[str(label)] = fit
        if orientation is not None:
            self.orientation[str(label)] = orientation

    def check_logarithmic(self):
        # both radii must exist everywhere
        if float(np.min(np.abs(self.kappa))) <= self.tol or float(np.min(np.abs(self.tau))) <= self.tol:
            return

        radius_kappa = 1.0 / self.kappa
        radius_tau = 1.0 / self.tau
        rk_fit, rk_linear, rk_moves = self.is_linear(self.s, radius_kappa)
        rt_fit, rt_linear, rt_moves = self.is_linear(self.s, radius_tau)

        if rk_linear and rt_linear and (rk_moves or rt_moves):
            self.add(Label.LOGARITHMIC_SPIRAL, rk_fit)
            self.fits["LogarithmicSpiral.tau"] = rt_fit

    def check_tau_over_kappa(self, tau_vanishes):
        if tau_vanishes:
            return  # plane curves are not helices
        ratio, mask = _quotient(self.tau, self.kappa)
        if ratio is None:
            return

        s = self.s[mask]
        linear, linear_ok, moves = self.is_linear(s, ratio)
        if not linear_ok:
            return
        if moves:
            self.add(Label.RECTIFYING, linear, TAU_OVER_KAPPA)
        else:
            self.add(Label.GENERAL_HELIX, _try_fit(dg.fit_constant, s, ratio), TAU_OVER_KAPPA)

    def check_generalized(self):
        best = None
        for orientation, numerator, denominator in ((KAPPA_OVER_TAU, self.kappa, self.tau),
                                                    (TAU_OVER_KAPPA, self.tau, self.kappa)):
            ratio, mask = _quotient(numerator, denominator)
            if ratio is None:
                continue
            fit = _try_fit(dg.fit_rational_linear, self.s[mask], ratio)
            if not _accepts(fit, ratio, self.tol):
                continue
            relative = fit.max_residual / _scale(ratio)
            if best is None or relative < best[0]:
                best = (relative, fit, orientation)

        if best is not None:
            self.add(Label.GENERALIZED_EULER, best[1], best[2])

    def check_bertrand(self):
        try:
            fit = fit_bertrand(IntrinsicSamples(self.s, self.kappa, self.tau))
        except RankError as e:
            log.debug("no Bertrand relation: %s", e)
            return
        if fit.max_residual <= self.tol:
            self.add(Label.BERTRAND, fit)
        else:
            self.fits[str(Label.BERTRAND)] = fit

    def enforce_implications(self):
        for premise, conclusion in IMPLICATIONS:
            if premise in self.labels and conclusion not in self.labels:
                self.labels.add(conclusion)
                self.notes.append("{} implied by {}; its own fit did not reach tol {:g}".format(
                    conclusion, premise, self.tol))


def classify(source, tol=None):
    """
    Label a ProfilePair (default tol 1e-9) or estimated IntrinsicSamples (default tol 1e-3)
    with every curve class whose defining relation fits within tol.
    """
    if isinstance(source, IntrinsicSamples) and len(source) < MIN_CLASSIFY_ROWS:
        raise InsufficientDataError("classification needs at least {} rows, got {}".format(
            MIN_CLASSIFY_ROWS, len(source)))
    if tol is None:
        tol = PROFILE_TOLERANCE if isinstance(source, ProfilePair) else SAMPLES_TOLERANCE
    if not tol > 0.0:
        raise DomainError("tolerance must be positive, got {}".format(tol))

    report = _Classifier(_intrinsics(source), tol).run()
    log.debug("classified as %s", ", ".join(str(label) for label in report.sorted_labels))
    return report

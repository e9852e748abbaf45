"""
Scalar curvature / torsion profiles of the form s -> (a*s + b) / (c*s + d)

Constant, linear (Euler / Cornu spirals) and reciprocal-linear (logarithmic spirals)
profiles are all special cases of the same four coefficients.
"""
import enum
import logging
from dataclasses import dataclass

import numpy as np

from spiral_toolbox.spiral_toolbox_errors import PoleError, FamilyError, ProfileDomainError

log = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-12
ZERO_SLOPE_SNAP = 1e-15


class ProfileFamily(enum.Enum):
    CONSTANT = "Constant"
    LINEAR = "Linear"
    RECIPROCAL_LINEAR = "ReciprocalLinear"
    RATIONAL_LINEAR = "RationalLinear"

    def __str__(self):
        return self.value


def _canonical_coefficients(a, b, c, d):
    a, b, c, d = float(a), float(b), float(c), float(d)
    if not all(np.isfinite([a, b, c, d])):
        raise ProfileDomainError("profile coefficients must be finite: {}".format((a, b, c, d)))

    sup = max(abs(a), abs(b), abs(c), abs(d))
    if sup == 0.0:
        raise ProfileDomainError("profile coefficients are all zero")

    if abs(c) <= ZERO_SLOPE_SNAP * sup:
        c = 0.0

    if c == 0.0:
        if d == 0.0:
            raise PoleError("denominator is identically zero")
        return a / d, b / d, 0.0, 1.0

    # first nonzero of (c, d) is positive
    scale = sup if c > 0 else -sup
    return a / scale, b / scale, c / scale, d / scale


@dataclass(frozen=True)
class RationalLinearProfile(object):
    """
    (a*s + b) / (c*s + d), always stored canonically.

    Build through make_profile (or the family factories below) rather than the
    raw constructor so the coefficients get normalized.
    """
    a: float
    b: float
    c: float = 0.0
    d: float = 1.0

    @property
    def coefficients(self):
        return self.a, self.b, self.c, self.d

    @property
    def is_canonical(self):
        return _canonical_coefficients(*self.coefficients) == self.coefficients

    def canonical(self):
        return RationalLinearProfile(*_canonical_coefficients(*self.coefficients))

    def denominator(self, s):
        return self.c * np.asarray(s, dtype=float) + self.d

    def __call__(self, s):
        return eval_profile(self, s)

    def derivative(self, s, order=1):
        """
        Closed form derivatives: f' = (ad - bc)/(cs+d)^2, f'' = -2c(ad - bc)/(cs+d)^3
        """
        if order == 0:
            return eval_profile(self, s)

        den = self._checked_denominator(s)
        det = self.a * self.d - self.b * self.c
        if order == 1:
            return _unwrap(det / den ** 2)
        if order == 2:
            return _unwrap(-2.0 * self.c * det / den ** 3)
        raise ValueError("derivative order must be 0, 1 or 2, not {}".format(order))

    def reciprocal(self):
        """1/f, the radius profile of a curvature profile"""
        if self.a == 0.0 and self.b == 0.0:
            raise PoleError("reciprocal of the zero profile")
        return make_profile(self.c, self.d, self.a, self.b)

    def _checked_denominator(self, s):
        s = np.asarray(s, dtype=float)
        den = self.c * s + self.d
        limit = POLE_TOLERANCE * np.maximum(1.0, np.abs(self.c) * np.abs(s))
        if np.any(np.abs(den) < limit):
            bad = np.atleast_1d(s)[np.atleast_1d(np.abs(den) < limit)]
            raise PoleError("profile {} has a pole at s={}".format(self, float(bad[0])))
        return den

    def to_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def __str__(self):
        if self.c == 0.0:
            return "({:g}*s + {:g})".format(self.a, self.b)
        return "({:g}*s + {:g})/({:g}*s + {:g})".format(*self.coefficients)


def _unwrap(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def make_profile(a, b, c=0.0, d=1.0):
    return RationalLinearProfile(*_canonical_coefficients(a, b, c, d))


def constant_profile(value):
    return make_profile(0.0, value)


def linear_profile(a, b):
    return make_profile(a, b)


def reciprocal_linear_profile(a, b):
    """1 / (a*s + b)"""
    return make_profile(0.0, 1.0, a, b)


def eval_profile(p, s):
    den = p._checked_denominator(s)
    return _unwrap((p.a * np.asarray(s, dtype=float) + p.b) / den)


def _root_in_interval(slope, intercept, s_min, s_max):
    if slope == 0.0:
        return []
    root = -intercept / slope
    if s_min <= root <= s_max:
        return [root]
    return []


def poles(p, s_min, s_max):
    if not s_min < s_max:
        raise ProfileDomainError("empty interval [{}, {}]".format(s_min, s_max))
    return _root_in_interval(p.c, p.d, s_min, s_max)


def zeros(p, s_min, s_max):
    """Roots of the numerator inside [s_min, s_max] (empty for the zero profile)"""
    if not s_min < s_max:
        raise ProfileDomainError("empty interval [{}, {}]".format(s_min, s_max))
    return _root_in_interval(p.a, p.b, s_min, s_max)


def detect_family(p, tol=1e-8):
    """Most specific family, decided on canonical coefficients"""
    a, b, c, d = p.canonical().coefficients
    if abs(c) <= tol:
        return ProfileFamily.CONSTANT if abs(a) <= tol else ProfileFamily.LINEAR
    if abs(a * d - b * c) <= tol:
        return ProfileFamily.CONSTANT
    if abs(a) <= tol:
        return ProfileFamily.RECIPROCAL_LINEAR
    return ProfileFamily.RATIONAL_LINEAR


def is_linear(p):
    return p.c == 0.0


@dataclass(frozen=True)
class ProfilePair(object):
    """
    Intrinsic data of a curve: kappa(s), tau(s) on [s_min, s_max].
    Validated on construction.
    """
    kappa: RationalLinearProfile
    tau: RationalLinearProfile
    s_min: float
    s_max: float

    def __post_init__(self):
        if not self.s_min < self.s_max:
            raise ProfileDomainError("s_min must be below s_max, got [{}, {}]".format(self.s_min, self.s_max))

        for name, profile in (("kappa", self.kappa), ("tau", self.tau)):
            pole_list = poles(profile, self.s_min, self.s_max)
            if pole_list:
                raise ProfileDomainError("{} has a pole at s={} inside [{}, {}]".format(
                    name, pole_list[0], self.s_min, self.s_max))

        # rational-linear functions are monotone between poles, so the endpoints decide positivity
        k_lo, k_hi = self.kappa(self.s_min), self.kappa(self.s_max)
        if k_lo < 0.0 or k_hi < 0.0 or (k_lo == 0.0 and k_hi == 0.0):
            raise ProfileDomainError("kappa must be positive on [{}, {}], got kappa={} .. {}".format(
                self.s_min, self.s_max, k_lo, k_hi))

    @property
    def span(self):
        return self.s_max - self.s_min

    def grid(self, count=257):
        return np.linspace(self.s_min, self.s_max, count)

    def kappa_tau(self, s):
        return self.kappa(s), self.tau(s)


def ratio_profile(pp):
    """kappa / tau as a single rational-linear profile (both inputs must be linear)"""
    for name, profile in (("kappa", pp.kappa), ("tau", pp.tau)):
        if not is_linear(profile):
            raise FamilyError("ratio_profile needs linear profiles, {} is {}".format(name, detect_family(profile)))
    if pp.tau.a == 0.0 and pp.tau.b == 0.0:
        raise PoleError("tau is identically zero, kappa/tau is undefined")
    return make_profile(pp.kappa.a, pp.kappa.b, pp.tau.a, pp.tau.b)

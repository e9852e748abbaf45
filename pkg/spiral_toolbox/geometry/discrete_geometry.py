"""
Curvature / torsion estimation from sampled curves, and least-squares fits of the
profile families back onto the estimates.
"""
import logging
from dataclasses import dataclass

import numpy as np

from spiral_toolbox.geometry import geometry_utils as gu
from spiral_toolbox.geometry import profiles
from spiral_toolbox.geometry.profiles import ProfileFamily
from spiral_toolbox.spiral_toolbox_errors import (
    DegenerateError, DomainError, InsufficientDataError, PoleError, ProfileDomainError, RankError,
)

log = logging.getLogger(__name__)

MIN_ESTIMATION_SAMPLES = 5
DEGENERATE_CROSS_NORM = 1e-10
FAMILY_TOLERANCE = 1e-8
SINGULAR_VALUE_RATIO = 1e-10


class IntrinsicSamples(object):
    """Rows of (s, kappa_hat, tau_hat), strictly increasing in s"""

    def __init__(self, s, kappa, tau):
        self.s = np.array(s, dtype=float)
        self.kappa = np.array(kappa, dtype=float)
        self.tau = np.array(tau, dtype=float)

        if not (self.s.ndim == 1 and self.s.shape == self.kappa.shape == self.tau.shape):
            raise DomainError("s, kappa and tau must be 1-d arrays of the same length")
        if np.any(np.diff(self.s) <= 0.0):
            raise DomainError("intrinsic samples must be strictly increasing in s")
        if np.any(self.kappa < 0.0):
            raise DomainError("estimated curvature must be non-negative")

        for array in (self.s, self.kappa, self.tau):
            array.setflags(write=False)

    @classmethod
    def from_profile_pair(cls, pp, count=257):
        s = pp.grid(count)
        return cls(s, pp.kappa(s), pp.tau(s))

    def __len__(self):
        return len(self.s)

    @property
    def rows(self):
        return list(zip(self.s.tolist(), self.kappa.tolist(), self.tau.tolist()))

    def interpolate(self, s):
        """kappa, tau linearly interpolated onto other arc length samples"""
        return np.interp(s, self.s, self.kappa), np.interp(s, self.s, self.tau)


@dataclass(frozen=True)
class FitResult(object):
    family: ProfileFamily
    coefficients: profiles.RationalLinearProfile
    rms_residual: float
    max_residual: float
    n_points: int

    def to_dict(self):
        return {
            "family": str(self.family),
            "coefficients": list(self.coefficients.coefficients),
            "rms": self.rms_residual,
            "max": self.max_residual,
            "n": self.n_points,
        }


def _as_arrays(xs):
    data = np.asarray(xs, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise DomainError("expected (s, value) pairs, got array of shape {}".format(data.shape))
    if not np.all(np.isfinite(data)):
        raise DomainError("fit input contains non-finite values")
    return data[:, 0], data[:, 1]


def _fit_result(family, coefficients, s, values):
    residual = values - coefficients(s)
    return FitResult(family=family,
                     coefficients=coefficients,
                     rms_residual=float(np.sqrt(np.mean(residual ** 2))),
                     max_residual=float(np.max(np.abs(residual))),
                     n_points=len(s))


def fit_constant(xs):
    s, values = _as_arrays(xs)
    if len(s) == 0:
        raise InsufficientDataError("cannot fit a constant to no data")
    return _fit_result(ProfileFamily.CONSTANT, profiles.constant_profile(np.mean(values)), s, values)


def fit_linear(xs, tol=FAMILY_TOLERANCE):
    """Least-squares value = a*s + b; demoted to Constant when |a| < tol"""
    s, values = _as_arrays(xs)
    if len(np.unique(s)) < 2:
        raise RankError("a line needs at least two distinct s values")

    center = np.mean(s)
    design = np.column_stack([s - center, np.ones_like(s)])
    (slope, intercept), _, _, _ = np.linalg.lstsq(design, values, rcond=None)
    coefficients = profiles.linear_profile(slope, intercept - slope * center)

    family = ProfileFamily.CONSTANT if abs(slope) < tol else ProfileFamily.LINEAR
    return _fit_result(family, coefficients, s, values)


def _rational_candidate(s, values, center, half_width):
    u = (s - center) / half_width
    value_scale = np.max(np.abs(values))
    w = values / value_scale

    # w*(c*u + d) - (a*u + b) = 0
    design = np.column_stack([-u, -np.ones_like(u), w * u, w])
    _, singular_values, vt = np.linalg.svd(design, full_matrices=False)
    rank = int(np.sum(singular_values > SINGULAR_VALUE_RATIO * singular_values[0]))
    log.debug("rational-linear design singular values %s (rank %d)", singular_values, rank)
    if rank < 3:
        return None, rank

    a_u, b_u, c_u, d_u = vt[-1]
    a = value_scale * a_u / half_width
    b = value_scale * (b_u - a_u * center / half_width)
    c = c_u / half_width
    d = d_u - c_u * center / half_width
    try:
        return profiles.make_profile(a, b, c, d), rank
    except (PoleError, ProfileDomainError):
        return None, rank


def fit_rational_linear(xs, tol=FAMILY_TOLERANCE):
    """
    Fit value = (a*s + b)/(c*s + d) through the linearized homogeneous system
    value*(c*s + d) - (a*s + b) = 0, solved by the smallest right singular vector.
    Residuals are reported on the true quotient.
    """
    s, values = _as_arrays(xs)
    if len(np.unique(s)) < 4:
        raise RankError("a rational-linear fit needs at least four distinct s values")

    value_scale = np.max(np.abs(values))
    if value_scale == 0.0 or np.ptp(values) <= 1e-12 * value_scale:
        return fit_constant(xs)

    center = 0.5 * (s.min() + s.max())
    half_width = 0.5 * (s.max() - s.min())
    candidate, rank = _rational_candidate(s, values, center, half_width)
    if rank < 3:
        raise RankError("rational-linear design matrix has rank {}".format(rank))

    fits = [fit_linear(xs, tol=tol)]
    if candidate is not None and not profiles.poles(candidate, s.min(), s.max()):
        try:
            fits.append(_fit_result(profiles.detect_family(candidate, tol), candidate, s, values))
        except PoleError:
            pass

    # linear lines are rational-linear too, keep whichever explains the data better
    best = min(fits, key=lambda fit: fit.rms_residual)
    log.debug("rational-linear fit %s (%s), rms %.3e", best.coefficients, best.family, best.rms_residual)
    return best


def _local_derivatives(s, position):
    """
    First three derivatives of the position from 5-point local quartic interpolation,
    centered where possible and one-sided at both ends.
    """
    n = len(s)
    starts = np.clip(np.arange(n) - 2, 0, n - 5)
    window = starts[:, None] + np.arange(5)

    spacing = (s[window[:, -1]] - s[window[:, 0]]) / 4.0
    u = (s[window] - s[:, None]) / spacing[:, None]
    vandermonde = u[:, :, None] ** np.arange(5)
    local = position[window] - position[:, None, :]
    coefficients = np.linalg.solve(vandermonde, local)

    h = spacing[:, None]
    first = coefficients[:, 1] / h
    second = 2.0 * coefficients[:, 2] / h ** 2
    third = 6.0 * coefficients[:, 3] / h ** 3
    return first, second, third


def estimate_curvature_torsion(curve, include_endpoints=False):
    """
    Estimate kappa and tau at every sample of a SampledCurve.

    With frames, kappa = |dT/ds| and tau = -<dB/ds, N> by central differences.
    Without frames, kappa = |a' x a''| / |a'|^3 and tau = <a' x a'', a'''> / |a' x a''|^2.
    The two endpoint rows (one-sided stencils) are dropped unless include_endpoints is set.
    """
    if len(curve) < MIN_ESTIMATION_SAMPLES:
        raise InsufficientDataError("need at least {} samples, got {}".format(MIN_ESTIMATION_SAMPLES, len(curve)))

    keep = slice(None) if include_endpoints else slice(1, -1)
    s = curve.s

    if curve.has_frames:
        d_tangent = np.gradient(curve.tangent, s, axis=0, edge_order=2)
        d_binormal = np.gradient(curve.binormal, s, axis=0, edge_order=2)
        kappa = np.linalg.norm(d_tangent, axis=1)
        tau = -gu.row_dot(d_binormal, curve.normal)
    else:
        first, second, third = _local_derivatives(s, curve.position)
        cross = np.cross(first, second)
        cross_norm = np.linalg.norm(cross, axis=1)

        degenerate = cross_norm[keep] < DEGENERATE_CROSS_NORM
        if np.any(degenerate):
            where = s[keep][degenerate][0]
            raise DegenerateError("curve straightens out near s={}, torsion is undefined".format(where))

        kappa = cross_norm / np.linalg.norm(first, axis=1) ** 3
        with np.errstate(divide="ignore", invalid="ignore"):
            tau = gu.row_dot(cross, third) / cross_norm ** 2

    return IntrinsicSamples(s[keep], kappa[keep], tau[keep])


def samples_to_pairs(s, values):
    return np.column_stack([np.asarray(s, dtype=float), np.asarray(values, dtype=float)])

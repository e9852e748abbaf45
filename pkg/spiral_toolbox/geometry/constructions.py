"""
Curves and surfaces derived from a Frenet frame, and the checks that characterize
spirals through them:

    Darboux curve      W = tau*T + kappa*B
    reciprocal curve   U = (1/kappa)*T + (1/tau)*B
    offset curve       beta = alpha + (a*s + b)*T + (c*s + d)*B + lam*N
    ruled surface      Phi(s, v) = alpha(s) + v*[(a*s + b)*T + (c*s + d)*B]
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from spiral_toolbox.geometry import frenet_integrator as fi
from spiral_toolbox.geometry import profiles
from spiral_toolbox.geometry.discrete_geometry import IntrinsicSamples
from spiral_toolbox.geometry.frenet_integrator import SampledCurve
from spiral_toolbox.spiral_toolbox_errors import (
    DegenerateError, DivisionError, DomainError, MissingIntrinsicsError,
)

log = logging.getLogger(__name__)

CHECK_SAMPLE_COUNT = 257
DEFAULT_V_RANGE = (-0.5, 0.5)
DEFAULT_SURFACE_GRID = (256, 32)
GAUSSIAN_TOLERANCE = 1e-6
HELIX_RATIO_TOLERANCE = 1e-12

TANGENT = "tangent"
BINORMAL = "binormal"

HELIX_FLAG = "general_helix"
EULER_READING_NOTE = ("passing forces linear kappa and tau, i.e. an Euler spiral; the weaker "
                      "generalized Euler reading (rational-linear ratio) is not implied")


@dataclass
class CheckReport(object):
    name: str
    passed: bool
    max_violation: float
    violation_profile: list
    tol: float
    flags: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    normal_profile: list = None

    @classmethod
    def from_samples(cls, name, s, violation, tol, **kwargs):
        violation = np.abs(np.asarray(violation, dtype=float))
        max_violation = float(np.max(violation))
        return cls(name=name,
                   passed=max_violation <= tol,
                   max_violation=max_violation,
                   violation_profile=[[float(x), float(y)] for x, y in zip(s, violation)],
                   tol=float(tol),
                   **kwargs)

    def to_dict(self):
        data = {
            "name": self.name,
            "passed": self.passed,
            "max_violation": self.max_violation,
            "tol": self.tol,
            "profile": self.violation_profile,
            "flags": list(self.flags),
            "notes": list(self.notes),
        }
        if self.normal_profile is not None:
            data["normal_profile"] = self.normal_profile
        return data


@dataclass(frozen=True, eq=False)
class RuledSurfacePatch(object):
    """Phi(s_i, v_j) for the sampled rows of a framed base curve; grid has shape (n_s, n_v, 3)"""
    base: SampledCurve
    director_coeffs: tuple
    v_min: float
    v_max: float
    s: np.ndarray
    v: np.ndarray
    grid: np.ndarray
    rows: np.ndarray

    @property
    def n_s(self):
        return self.grid.shape[0]

    @property
    def n_v(self):
        return self.grid.shape[1]

    @property
    def director(self):
        """X(s) = (a*s + b)*T + (c*s + d)*B on the sampled rows"""
        return _director(self.base, self.director_coeffs, self.rows)

    @property
    def diameter(self):
        points = self.grid.reshape(-1, 3)
        return float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))


def _require_frames(curve):
    if not curve.has_frames:
        raise DomainError("this construction needs a curve with Frenet frames")


def _curve_intrinsics(curve, intrinsics=None):
    """kappa, tau at every sample of the curve, from the given samples or the curve's own profile"""
    if isinstance(intrinsics, IntrinsicSamples):
        return intrinsics.interpolate(curve.s)
    if isinstance(intrinsics, profiles.ProfilePair):
        return intrinsics.kappa_tau(curve.s)
    if curve.profile is not None:
        return curve.profile.kappa_tau(curve.s)
    raise MissingIntrinsicsError("curve carries no curvature / torsion, pass a ProfilePair or IntrinsicSamples")


def _affine(slope, intercept, s):
    return slope * np.asarray(s, dtype=float) + intercept


def _director(curve, coeffs, rows=slice(None)):
    a, b, c, d = coeffs
    s = curve.s[rows][:, None]
    return _affine(a, b, s) * curve.tangent[rows] + _affine(c, d, s) * curve.binormal[rows]


def darboux_curve(curve, intrinsics=None):
    """Trace of W(s) = tau(s)*T(s) + kappa(s)*B(s), as positions"""
    _require_frames(curve)
    kappa, tau = _curve_intrinsics(curve, intrinsics)
    trace = np.asarray(tau)[:, None] * curve.tangent + np.asarray(kappa)[:, None] * curve.binormal
    return SampledCurve(curve.s, trace)


def reciprocal_curve(curve, intrinsics=None):
    """Trace of U(s) = T(s)/kappa(s) + B(s)/tau(s), as positions"""
    _require_frames(curve)
    kappa, tau = (np.asarray(x, dtype=float) for x in _curve_intrinsics(curve, intrinsics))
    if np.any(kappa == 0.0) or np.any(tau == 0.0):
        raise DivisionError("reciprocal curve needs nonvanishing kappa and tau")
    trace = curve.tangent / kappa[:, None] + curve.binormal / tau[:, None]
    return SampledCurve(curve.s, trace)


def tangent_indicatrix(curve):
    """T traced on the unit sphere, parametrized by the base curve's arc length"""
    _require_frames(curve)
    return SampledCurve(curve.s, curve.tangent)


def binormal_indicatrix(curve):
    _require_frames(curve)
    return SampledCurve(curve.s, curve.binormal)


def offset_curve_beta(curve, a, b, c, d, lam):
    """beta(s) = alpha(s) + (a*s + b)*T + (c*s + d)*B + lam*N"""
    _require_frames(curve)
    offset = _director(curve, (a, b, c, d)) + lam * curve.normal
    return SampledCurve(curve.s, curve.position + offset)


def beta_derivative(pp, a, b, c, d, lam, s):
    """
    (T, N, B) components of beta' from the Frenet equations:
    (1 + a - lam*kappa, kappa*(a*s + b) - tau*(c*s + d), c + lam*tau)
    """
    kappa, tau = pp.kappa_tau(s)
    along_t = 1.0 + a - lam * kappa
    along_n = kappa * _affine(a, b, s) - tau * _affine(c, d, s)
    along_b = c + lam * tau
    return np.stack(np.broadcast_arrays(along_t, along_n, along_b), axis=-1)


def _is_general_helix(pp, s):
    kappa, tau = pp.kappa_tau(s)
    if not np.any(tau):
        return False
    mask = kappa > 0.0
    ratio = tau[mask] / kappa[mask]
    return float(np.ptp(ratio)) <= HELIX_RATIO_TOLERANCE * max(1.0, float(np.max(np.abs(ratio))))


def _helix_flags(pp, s):
    if _is_general_helix(pp, s):
        return [HELIX_FLAG]
    return []


def check_darboux_geodesic(pp, tol):
    """
    W'' = tau''*T + (kappa*tau' - tau*kappa')*N + kappa''*B lies along N
    iff kappa'' and tau'' vanish, evaluated from the closed form derivatives.
    """
    s = pp.grid(CHECK_SAMPLE_COUNT)
    kappa_2 = pp.kappa.derivative(s, 2)
    tau_2 = pp.tau.derivative(s, 2)
    normal = pp.kappa(s) * pp.tau.derivative(s, 1) - pp.tau(s) * pp.kappa.derivative(s, 1)

    flags = _helix_flags(pp, s)
    notes = [EULER_READING_NOTE]
    if flags:
        notes.append("tau/kappa is constant, the Darboux curve degenerates and the result holds vacuously")

    report = CheckReport.from_samples("darboux", s, np.maximum(np.abs(kappa_2), np.abs(tau_2)), tol,
                                      flags=flags, notes=notes,
                                      normal_profile=[[float(x), float(y)] for x, y in zip(s, normal)])
    log.debug("darboux geodesic check: max violation %.3e (tol %g)", report.max_violation, tol)
    return report


def reciprocal_darboux_check(pp, tol):
    """
    U'' has N-coefficient (1/kappa)'*kappa - (1/tau)'*tau; U'' lies along N
    iff 1/kappa and 1/tau are affine in s.
    """
    for name, profile in (("kappa", pp.kappa), ("tau", pp.tau)):
        if (profile.a == 0.0 and profile.b == 0.0) or profiles.zeros(profile, pp.s_min, pp.s_max):
            raise DivisionError("{} vanishes on [{}, {}], its reciprocal is undefined".format(
                name, pp.s_min, pp.s_max))

    radius_kappa = pp.kappa.reciprocal()
    radius_tau = pp.tau.reciprocal()
    s = pp.grid(CHECK_SAMPLE_COUNT)
    violation = np.maximum(np.abs(radius_kappa.derivative(s, 2)), np.abs(radius_tau.derivative(s, 2)))
    normal = radius_kappa.derivative(s, 1) * pp.kappa(s) - radius_tau.derivative(s, 1) * pp.tau(s)

    flags = _helix_flags(pp, s)
    return CheckReport.from_samples("reciprocal", s, violation, tol, flags=flags,
                                    normal_profile=[[float(x), float(y)] for x, y in zip(s, normal)])


def check_involute_evolute(pp, a, b, c, d, tol, indicatrix=TANGENT):
    """
    <beta', N> = kappa*(a*s + b) - tau*(c*s + d) must vanish. The tangent indicatrix has
    tangent N and the binormal indicatrix -N, so both partners share the condition.
    """
    if indicatrix not in (TANGENT, BINORMAL):
        raise DomainError("indicatrix must be '{}' or '{}', not {!r}".format(TANGENT, BINORMAL, indicatrix))

    s = pp.grid(CHECK_SAMPLE_COUNT)
    kappa, tau = pp.kappa_tau(s)
    g = kappa * _affine(a, b, s) - tau * _affine(c, d, s)
    return CheckReport.from_samples("involute", s, g, tol,
                                    notes=["beta paired with the {} indicatrix".format(indicatrix)])


def ruled_surface(curve, a, b, c, d, v_min, v_max, n_v, n_s=None):
    """
    Sample Phi(s, v) = alpha(s) + v*X(s) on n_v evenly spaced v values.
    n_s picks that many evenly spaced rows of the base curve (all rows by default).
    """
    _require_frames(curve)
    if n_v < 2:
        raise DomainError("a ruled surface patch needs n_v >= 2, got {}".format(n_v))
    if v_max < v_min:
        raise DomainError("v_max must not be below v_min, got [{}, {}]".format(v_min, v_max))

    if n_s is None or n_s >= len(curve):
        rows = np.arange(len(curve))
    else:
        if n_s < 2:
            raise DomainError("a ruled surface patch needs n_s >= 2, got {}".format(n_s))
        rows = np.unique(np.round(np.linspace(0, len(curve) - 1, n_s)).astype(int))

    coeffs = tuple(float(x) for x in (a, b, c, d))
    v = np.linspace(v_min, v_max, n_v)
    director = _director(curve, coeffs, rows)
    grid = curve.position[rows][:, None, :] + v[None, :, None] * director[:, None, :]

    for array in (grid, v, rows):
        array.setflags(write=False)
    log.debug("ruled surface patch %d x %d, v in [%g, %g]", len(rows), n_v, v_min, v_max)
    return RuledSurfacePatch(base=curve, director_coeffs=coeffs, v_min=float(v_min), v_max=float(v_max),
                             s=curve.s[rows], v=v, grid=grid, rows=rows)


def gaussian_curvature(patch):
    """
    K = (L*N - M^2) / (E*G - F^2) from finite-difference fundamental forms.
    Rulings are straight lines, so Phi_vv = 0 and K = -M^2 / (E*G - F^2).
    """
    if patch.v_max == patch.v_min:
        raise DegenerateError("single-ruling strip has no surface area")

    phi_s = np.gradient(patch.grid, patch.s, axis=0, edge_order=2)
    phi_v = np.gradient(patch.grid, patch.v, axis=1, edge_order=2)
    phi_sv = np.gradient(phi_s, patch.v, axis=1, edge_order=2)

    normal = np.cross(phi_s, phi_v)
    area = np.linalg.norm(normal, axis=-1)
    if np.any(area < 1e-12):
        raise DegenerateError("ruled surface is singular on the patch (rulings tangent to the base)")
    normal /= area[..., None]

    first_e = np.einsum("ijk,ijk->ij", phi_s, phi_s)
    first_f = np.einsum("ijk,ijk->ij", phi_s, phi_v)
    first_g = np.einsum("ijk,ijk->ij", phi_v, phi_v)
    second_m = np.einsum("ijk,ijk->ij", phi_sv, normal)

    return -second_m ** 2 / (first_e * first_g - first_f ** 2)


def _check_coefficients(a, b, c, d):
    if a == 0.0 and b == 0.0 and c == 0.0 and d == 0.0:
        raise DomainError("ruling direction coefficients are all zero")


def check_developable(pp, a, b, c, d, tol):
    """
    det(T, X, X') = -(c*s + d)*[(a*s + b)*kappa - (c*s + d)*tau] with
    X' = a*T + [(a*s + b)*kappa - (c*s + d)*tau]*N + c*B.
    """
    _check_coefficients(a, b, c, d)
    s = pp.grid(CHECK_SAMPLE_COUNT)
    kappa, tau = pp.kappa_tau(s)
    bc = _affine(c, d, s)
    delta = -bc * (_affine(a, b, s) * kappa - bc * tau)

    notes = []
    if np.any(bc == 0.0):
        notes.append("c*s + d vanishes on the interval, the ruling is along T there")
    return CheckReport.from_samples("developable", s, delta, tol, notes=notes)


def check_developable_numeric(pp, a, b, c, d, tol_k=None, v_range=DEFAULT_V_RANGE, grid=DEFAULT_SURFACE_GRID,
                              curve=None):
    """
    Build the patch over a synthesized base curve and require max|K| <= tol_k,
    with tol_k defaulting to 1e-6 * max(1, diameter^2).
    """
    _check_coefficients(a, b, c, d)
    if curve is None:
        curve = fi.integrate_frenet(pp)
    n_s, n_v = grid
    patch = ruled_surface(curve, a, b, c, d, v_range[0], v_range[1], n_v, n_s=n_s)
    if tol_k is None:
        tol_k = GAUSSIAN_TOLERANCE * max(1.0, patch.diameter ** 2)

    gaussian = np.abs(gaussian_curvature(patch))
    report = CheckReport.from_samples("developable_numeric", patch.s, gaussian.max(axis=1), tol_k,
                                      notes=["max |K| per ruling on a {} x {} patch".format(patch.n_s, patch.n_v)])
    log.debug("numeric gaussian curvature max %.3e (tol %.3e)", report.max_violation, tol_k)
    return report

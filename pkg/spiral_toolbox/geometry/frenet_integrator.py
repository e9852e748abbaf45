"""
Frenet-Serret integration on the rotation group.

The frame F = [T N B] (columns) obeys F' = F * hat(omega) with the body-frame Darboux
vector omega(s) = (tau(s), 0, kappa(s)). Each step applies one exact rotation built
from fourth order Runge-Kutta-Munthe-Kaas stage increments, so the frame stays
orthonormal to round-off no matter how long the curve is.
"""
import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.spatial.transform import Rotation

from spiral_toolbox.geometry import geometry_utils as gu
from spiral_toolbox.spiral_toolbox_errors import (
    DomainError, ProfileDomainError, QuadratureError, StepError,
)

log = logging.getLogger(__name__)

FRAME_TOLERANCE = 1e-9
DEFAULT_STEP_DIVISIONS = 4096
QUADRATURE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FrenetState(object):
    s: float
    position: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    binormal: np.ndarray

    def frame_deviation(self):
        return max(gu.gram_deviation(self.tangent, self.normal, self.binormal),
                   gu.handedness_deviation(self.tangent, self.normal, self.binormal))

    def is_valid(self, tol=FRAME_TOLERANCE):
        return self.frame_deviation() <= tol


def canonical_frame(s=0.0):
    """Origin with T, N, B along the coordinate axes"""
    eye = np.eye(3)
    return FrenetState(float(s), np.zeros(3), eye[0].copy(), eye[1].copy(), eye[2].copy())


def _frozen(array):
    if array is None:
        return None
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


class SampledCurve(object):
    """
    Ordered arc-length samples of a space curve.

    Frames are optional (position-only polylines read from disk, or derived traces
    such as the Darboux curve). profile is set when the curve was synthesized.
    """

    def __init__(self, s, position, tangent=None, normal=None, binormal=None, profile=None,
                 frame_tol=FRAME_TOLERANCE):
        self.s = _frozen(s)
        self.position = _frozen(position)
        self.tangent = _frozen(tangent)
        self.normal = _frozen(normal)
        self.binormal = _frozen(binormal)
        self.profile = profile

        if self.s.ndim != 1 or len(self.s) < 2:
            raise DomainError("a sampled curve needs at least two samples")
        if self.position.shape != (len(self.s), 3):
            raise DomainError("positions must have shape ({}, 3), got {}".format(len(self.s), self.position.shape))
        if np.any(np.diff(self.s) <= 0.0):
            raise DomainError("arc length samples must be strictly increasing")

        frames = (self.tangent, self.normal, self.binormal)
        if any(f is not None for f in frames):
            if any(f is None or f.shape != self.position.shape for f in frames):
                raise DomainError("tangent, normal and binormal must be given together, one per sample")
            deviation = self.frame_deviation()
            if deviation > frame_tol:
                raise DomainError("frames are not right-handed orthonormal (deviation {:.3e})".format(deviation))

    def __len__(self):
        return len(self.s)

    def __getitem__(self, index):
        if not self.has_frames:
            raise DomainError("curve has no frames, use .position instead")
        return FrenetState(float(self.s[index]), self.position[index], self.tangent[index],
                           self.normal[index], self.binormal[index])

    @property
    def has_frames(self):
        return self.tangent is not None

    @property
    def states(self):
        return [self[i] for i in range(len(self))]

    @property
    def s_min(self):
        return float(self.s[0])

    @property
    def s_max(self):
        return float(self.s[-1])

    def frame_deviation(self):
        if not self.has_frames:
            return 0.0
        return max(gu.gram_deviation(self.tangent, self.normal, self.binormal),
                   gu.handedness_deviation(self.tangent, self.normal, self.binormal))

    def transformed(self, rotation, translation=(0.0, 0.0, 0.0)):
        """Rigid motion of the whole curve; rotation is a 3x3 matrix or a scipy Rotation"""
        if isinstance(rotation, Rotation):
            rotation = rotation.as_matrix()
        rotation = np.asarray(rotation, dtype=float)
        translation = gu.as_vector(translation)

        def rotate(vectors):
            return None if vectors is None else vectors @ rotation.T

        return SampledCurve(self.s, rotate(self.position) + translation, rotate(self.tangent),
                            rotate(self.normal), rotate(self.binormal), profile=self.profile)

    def without_frames(self):
        return SampledCurve(self.s, self.position, profile=self.profile)


def arc_length_grid(s_min, s_max, step):
    """s_min, s_min + step, ... with s_max as the final (possibly partial) step"""
    span = s_max - s_min
    if not step > 0.0:
        raise StepError("step must be positive, got {}".format(step))
    if step >= span:
        raise StepError("step {} must be smaller than the interval length {}".format(step, span))

    count = int(np.floor(span / step + 1e-9))
    grid = s_min + step * np.arange(count + 1)
    if s_max - grid[-1] > 1e-9 * step:
        grid = np.append(grid, s_max)
    else:
        grid[-1] = s_max
    return grid


def _body_darboux(pp, s):
    kappa = np.atleast_1d(pp.kappa(s))
    tau = np.atleast_1d(pp.tau(s))
    return np.column_stack([tau, np.zeros_like(tau), kappa]), kappa


def integrate_frenet(pp, step=None, init=None):
    """
    Integrate the Frenet-Serret system for a ProfilePair.

    :param pp: ProfilePair with the curvature and torsion profiles
    :param step: arc length step, defaults to span / 4096
    :param init: FrenetState at pp.s_min, defaults to the canonical frame at the origin
    :return: SampledCurve with frames
    """
    if step is None:
        step = pp.span / DEFAULT_STEP_DIVISIONS
    if init is None:
        init = canonical_frame(pp.s_min)
    if not init.is_valid():
        raise DomainError("initial frame is not right-handed orthonormal")

    grid = arc_length_grid(pp.s_min, pp.s_max, step)
    h = np.diff(grid)[:, None]

    omega_0, kappa_0 = _body_darboux(pp, grid[:-1])
    omega_half, kappa_half = _body_darboux(pp, grid[:-1] + 0.5 * h[:, 0])
    omega_1, kappa_1 = _body_darboux(pp, grid[1:])

    all_kappa = np.concatenate([kappa_0[1:], kappa_half, kappa_1[:-1]])
    if np.any(all_kappa <= 0.0) or kappa_0[0] < 0.0 or kappa_1[-1] < 0.0:
        raise ProfileDomainError("curvature must stay positive while integrating")

    # RKMK4 stage increments, all of them depend on s only
    k1 = h * omega_0
    k2 = h * gu.dexp_inverse(0.5 * k1, omega_half)
    k3 = h * gu.dexp_inverse(0.5 * k2, omega_half)
    k4 = h * gu.dexp_inverse(k3, omega_1)
    increments = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0

    step_rotations = gu.rotation_matrix(increments)

    # tangent at the stage frames, expressed in the frame at the start of the step
    e1 = np.array([1.0, 0.0, 0.0])
    stage_tangents = (e1
                      + 2.0 * Rotation.from_rotvec(0.5 * k1).apply(e1)
                      + 2.0 * Rotation.from_rotvec(0.5 * k2).apply(e1)
                      + Rotation.from_rotvec(k3).apply(e1))

    frames = np.empty((len(grid), 3, 3))
    frames[0] = gu.frame_matrices(init.tangent, init.normal, init.binormal)
    for i, step_rotation in enumerate(step_rotations):
        frames[i + 1] = frames[i] @ step_rotation

    displacement = (h / 6.0) * np.einsum("nij,nj->ni", frames[:-1], stage_tangents)
    position = np.empty((len(grid), 3))
    position[0] = init.position
    position[1:] = init.position + np.cumsum(displacement, axis=0)

    log.debug("integrated %d steps on [%g, %g] with step %g", len(h), pp.s_min, pp.s_max, step)
    return SampledCurve(grid, position, frames[:, :, 0], frames[:, :, 1], frames[:, :, 2], profile=pp)


def exact_helix(kappa0, tau0, s):
    """
    Closed form circular helix with constant curvature and torsion, starting in the
    canonical frame. Radius kappa0/(kappa0^2 + tau0^2), axial rate tau0/sqrt(kappa0^2 + tau0^2).
    """
    if not kappa0 > 0.0:
        raise DomainError("helix curvature must be positive, got {}".format(kappa0))

    s_values = np.atleast_1d(np.asarray(s, dtype=float))
    w = np.hypot(kappa0, tau0)
    axis = np.array([tau0, 0.0, kappa0]) / w
    radial = np.array([kappa0 ** 2, 0.0, -tau0 * kappa0]) / w ** 2  # part of e1 orthogonal to the axis
    swirl = np.array([0.0, kappa0 / w, 0.0])  # axis x e1

    ws = w * s_values[:, None]
    cos, sin = np.cos(ws), np.sin(ws)

    position = (tau0 / w) * s_values[:, None] * axis + sin / w * radial + (1.0 - cos) / w * swirl
    tangent = (tau0 / w) * axis + cos * radial + sin * swirl
    normal = (w / kappa0) * (-sin * radial + cos * swirl)
    binormal = np.cross(tangent, normal)

    if np.ndim(s) == 0:
        return FrenetState(float(s), position[0], tangent[0], normal[0], binormal[0])
    return SampledCurve(s_values, position, tangent, normal, binormal)


def planar_clothoid_reference(a, b, s):
    """
    (integral cos(theta), integral sin(theta)) over [0, s] with theta(t) = a t^2 / 2 + b t
    """
    if a == 0.0:
        raise DomainError("clothoid slope must be nonzero")

    def theta(t):
        return 0.5 * a * t * t + b * t

    results = []
    for func in (lambda t: np.cos(theta(t)), lambda t: np.sin(theta(t))):
        with warnings.catch_warnings():
            # judged on the returned error estimate instead
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            result = integrate.quad(func, 0.0, s, epsabs=1e-12, epsrel=1e-12, limit=500, full_output=1)
        value, error = result[0], result[1]
        if error > QUADRATURE_TOLERANCE:
            message = result[3] if len(result) > 3 else ""
            raise QuadratureError("clothoid quadrature error {:.2e} above {:.0e} at s={} {}".format(
                error, QUADRATURE_TOLERANCE, s, message).strip())
        results.append(value)
    return np.array(results)


def frame_deviation(curve):
    return curve.frame_deviation()

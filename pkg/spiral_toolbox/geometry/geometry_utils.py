import numpy as np
from scipy.spatial.transform import Rotation


def as_vector(value):
    vec = np.asarray(value, dtype=float)
    if vec.shape != (3,):
        raise ValueError("expected a 3-vector, got shape {}".format(vec.shape))
    return vec


def rotation_matrix(rotation_vector):
    """Exact angle-axis exponential of a rotation vector"""
    return Rotation.from_rotvec(rotation_vector).as_matrix()


def dexp_inverse(u, v):
    """
    Truncated inverse derivative of the exponential map on so(3), for frames that
    evolve as F' = F * hat(omega):  v + 1/2 u x v + 1/12 u x (u x v)
    """
    uv = np.cross(u, v)
    return v + 0.5 * uv + np.cross(u, uv) / 12.0


def frame_matrices(tangent, normal, binormal):
    """Stack (n, 3) arrays into (n, 3, 3) matrices with T, N, B as columns"""
    return np.stack([tangent, normal, binormal], axis=-1)


def gram_deviation(tangent, normal, binormal):
    """Largest |F^T F - I| entry over every frame"""
    frames = frame_matrices(np.atleast_2d(tangent), np.atleast_2d(normal), np.atleast_2d(binormal))
    gram = np.einsum("nki,nkj->nij", frames, frames)
    return float(np.max(np.abs(gram - np.eye(3))))


def handedness_deviation(tangent, normal, binormal):
    """Largest componentwise |B - T x N|"""
    return float(np.max(np.abs(np.atleast_2d(binormal) - np.cross(np.atleast_2d(tangent), np.atleast_2d(normal)))))


def row_dot(a, b):
    return np.einsum("ij,ij->i", a, b)

"""Wavefront OBJ export of ruled surface patches"""
import logging

import numpy as np

log = logging.getLogger(__name__)


def patch_faces(n_s, n_v):
    """1-based triangle indices over a row-major (n_s, n_v) vertex grid, two per quad"""
    index = np.arange(1, n_s * n_v + 1).reshape(n_s, n_v)
    corner = index[:-1, :-1].ravel()
    right = index[:-1, 1:].ravel()
    below = index[1:, :-1].ravel()
    diagonal = index[1:, 1:].ravel()
    first = np.column_stack([corner, below, diagonal])
    second = np.column_stack([corner, diagonal, right])
    return np.stack([first, second], axis=1).reshape(-1, 3)


def obj_lines(patch):
    lines = ["# ruled surface patch {} x {}".format(patch.n_s, patch.n_v)]
    for x, y, z in patch.grid.reshape(-1, 3):
        lines.append("v {:.16e} {:.16e} {:.16e}".format(x, y, z))
    for i, j, k in patch_faces(patch.n_s, patch.n_v):
        lines.append("f {} {} {}".format(i, j, k))
    return lines


def write_obj(path, patch):
    with open(path, "w") as fp:
        fp.write("\n".join(obj_lines(patch)) + "\n")
    log.info("wrote %d x %d patch to %s", patch.n_s, patch.n_v, path)

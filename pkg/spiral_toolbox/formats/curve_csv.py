"""
Comma separated curve files.

    s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz   framed curve
    s,x,y,z                              polyline
    s,kappa,tau                          intrinsic samples
    s,x,y,z,kappa,tau                    plot data
"""
import csv
import logging

import numpy as np

from spiral_toolbox.geometry.discrete_geometry import IntrinsicSamples
from spiral_toolbox.geometry.frenet_integrator import SampledCurve
from spiral_toolbox.spiral_toolbox_errors import ParseError

log = logging.getLogger(__name__)

FLOAT_FORMAT = "{:.16e}"

POSITION_HEADER = ["s", "x", "y", "z"]
FRAME_HEADER = POSITION_HEADER + ["tx", "ty", "tz", "nx", "ny", "nz", "bx", "by", "bz"]
INTRINSICS_HEADER = ["s", "kappa", "tau"]
PLOT_HEADER = POSITION_HEADER + ["kappa", "tau"]


def _write_rows(path, header, columns):
    table = np.column_stack(columns)
    with open(path, "w", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(header)
        for row in table:
            writer.writerow([FLOAT_FORMAT.format(value) for value in row])
    log.info("wrote %d rows to %s", len(table), path)


def _read_rows(path, accepted_headers):
    """Parse a numeric table, returning (header, (n, k) array)"""
    with open(path, "r", newline="") as fp:
        reader = csv.reader(fp)
        try:
            header = [name.strip() for name in next(reader)]
        except StopIteration:
            raise ParseError("empty file {}".format(path), line=1)

        if header not in accepted_headers:
            raise ParseError("unexpected header {}, expected one of {}".format(
                ",".join(header), [",".join(h) for h in accepted_headers]), line=1)

        rows = []
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            if len(row) != len(header):
                raise ParseError("expected {} values, got {}".format(len(header), len(row)), line=line)
            values = []
            for name, text in zip(header, row):
                try:
                    values.append(float(text))
                except ValueError:
                    raise ParseError("not a number: {!r}".format(text), field=name, line=line)
            rows.append(values)

    if not rows:
        raise ParseError("no data rows in {}".format(path), line=2)
    return header, np.array(rows, dtype=float)


def write_curve_csv(path, curve):
    if curve.has_frames:
        _write_rows(path, FRAME_HEADER,
                    [curve.s, curve.position, curve.tangent, curve.normal, curve.binormal])
    else:
        _write_rows(path, POSITION_HEADER, [curve.s, curve.position])


def read_curve_csv(path):
    header, table = _read_rows(path, [FRAME_HEADER, POSITION_HEADER])
    if header == FRAME_HEADER:
        return SampledCurve(table[:, 0], table[:, 1:4], table[:, 4:7], table[:, 7:10], table[:, 10:13])
    return SampledCurve(table[:, 0], table[:, 1:4])


def write_intrinsics_csv(path, samples):
    _write_rows(path, INTRINSICS_HEADER, [samples.s, samples.kappa, samples.tau])


def read_intrinsics_csv(path):
    _, table = _read_rows(path, [INTRINSICS_HEADER])
    return IntrinsicSamples(table[:, 0], table[:, 1], table[:, 2])


def write_plot_csv(path, curve):
    """Position and (kappa, tau) series of a synthesized curve for external plotting"""
    kappa, tau = curve.profile.kappa_tau(curve.s)
    _write_rows(path, PLOT_HEADER, [curve.s, curve.position, kappa, tau])

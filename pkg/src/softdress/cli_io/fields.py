"""CSV exchange format for :class:`~softdress.dressing_field.ScalarFieldSample`.

Three header lines describe the grid, then one ``i,j,k,value`` row per node
in C order::

    # origin=-1.0,-1.0,-1.0
    # spacing=0.125
    # shape=17,17,17
    i,j,k,value
    0,0,0,0.00000000000e+00
"""

from __future__ import annotations

import io

import numpy as np

from softdress.dressing_field import ScalarFieldSample
from softdress.errors import DomainError


def write_field_sample(f: ScalarFieldSample) -> bytes:
    buf = io.StringIO()
    buf.write("# origin=" + ",".join(repr(c) for c in f.origin) + "\n")
    buf.write(f"# spacing={f.spacing!r}\n")
    buf.write("# shape=" + ",".join(str(n) for n in f.shape) + "\n")
    buf.write("i,j,k,value\n")
    for idx in np.ndindex(*f.shape):
        buf.write(f"{idx[0]},{idx[1]},{idx[2]},{f.values[idx]:.17e}\n")
    return buf.getvalue().encode()


def read_field_sample(data: bytes) -> ScalarFieldSample:
    lines = data.decode().splitlines()
    header = {}
    for line in lines[:3]:
        if not line.startswith("# ") or "=" not in line:
            raise DomainError(f"bad grid header line {line!r}")
        k, _, v = line[2:].partition("=")
        header[k.strip()] = v
    try:
        origin = tuple(float(c) for c in header["origin"].split(","))
        spacing = float(header["spacing"])
        shape = tuple(int(c) for c in header["shape"].split(","))
    except (KeyError, ValueError) as exc:
        raise DomainError(f"incomplete grid header: {exc}") from None
    values = np.zeros(shape)
    for line in lines[4:]:
        if line.strip():
            i, j, k, val = line.split(",")
            values[int(i), int(j), int(k)] = float(val)
    return ScalarFieldSample(origin, spacing, values)

"""Strict reader for the attitude-harness CSV export.

The header is a fixed 46-column contract; anything off by a single name
is rejected with the offending column spelled out.  Kept as a literal
copy on purpose: this package talks to the simulator only through its
file formats.
"""

from __future__ import annotations

import io
from typing import Dict

import numpy as np

EXPECTED_HEADER = (
    "t",
    "R11", "R12", "R13", "R21", "R22", "R23", "R31", "R32", "R33",
    "Wx", "Wy", "Wz",
    "Rd11", "Rd12", "Rd13", "Rd21", "Rd22", "Rd23", "Rd31", "Rd32", "Rd33",
    "Wdx", "Wdy", "Wdz",
    "eRx", "eRy", "eRz",
    "eWx", "eWy", "eWz",
    "Psi",
    "ux", "uy", "uz",
    "Dx", "Dy", "Dz",
    "Jb11", "Jb12", "Jb13", "Jb22", "Jb23", "Jb33",
    "V", "Jtilde_F",
)


class SchemaError(ValueError):
    """The CSV does not match the harness export contract."""


def check_header(header_line: str) -> None:
    names = header_line.rstrip("\r\n").split(",")
    if len(names) != len(EXPECTED_HEADER):
        raise SchemaError(
            f"expected {len(EXPECTED_HEADER)} columns, found {len(names)}"
        )
    for i, (got, want) in enumerate(zip(names, EXPECTED_HEADER)):
        if got != want:
            raise SchemaError(
                f"column {i + 1} is named {got!r}, expected {want!r}"
            )


def load_timeseries(path) -> Dict[str, np.ndarray]:
    """Read a harness CSV into a column-name -> 1-D float array mapping."""
    with open(path) as f:
        header = f.readline()
        if not header:
            raise SchemaError("file is empty")
        check_header(header)
        body = f.read()
    if not body.strip():
        raise SchemaError("no data rows")
    try:
        data = np.loadtxt(io.StringIO(body), delimiter=",", ndmin=2)
    except ValueError as err:
        raise SchemaError(f"non-numeric data: {err}") from None
    if data.shape[1] != len(EXPECTED_HEADER):
        raise SchemaError(
            f"rows have {data.shape[1]} fields, header promises "
            f"{len(EXPECTED_HEADER)}"
        )
    return {name: data[:, i] for i, name in enumerate(EXPECTED_HEADER)}

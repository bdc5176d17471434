import numpy as np
import pytest

from so3figs.schema import EXPECTED_HEADER


def write_csv(path, rows=20, header=None):
    """Small synthetic file matching the export schema."""
    rng = np.random.default_rng(7)
    names = EXPECTED_HEADER if header is None else header
    with open(path, "w", newline="") as f:
        f.write(",".join(names) + "\n")
        for i in range(rows):
            vals = [0.01 * i] + list(rng.normal(size=len(names) - 1))
            f.write(",".join(f"{v:.17g}" for v in vals) + "\n")
    return path


@pytest.fixture
def valid_csv(tmp_path):
    return write_csv(tmp_path / "ok.csv")

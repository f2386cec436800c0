import sys

import numpy as np
import pytest

from bfamlab import Field, build_partition, make_grid


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance lines after the test summary, one per criterion."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, label, ok, detail in sorted(results):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {num:2d}: {label} ({detail})")


@pytest.fixture(scope="session")
def grid_pi():
    """Unit-circle grid: integer modes are exact grid frequencies."""
    return make_grid(np.pi, 256)


@pytest.fixture(scope="session")
def grid_lab():
    """Small laboratory grid: same L as the defaults, packets up to n=5."""
    return make_grid(64.0, 8192)


@pytest.fixture(scope="session")
def part_lab(grid_lab):
    return build_partition(grid_lab)


@pytest.fixture()
def rng():
    return np.random.default_rng(314159)


def band_limited(grid, rng, frac=0.25):
    raw = Field.from_samples(grid, rng.standard_normal(grid.N))
    keep = np.abs(grid.xi) <= frac * grid.nyquist
    return Field.from_spectrum(grid, raw.spectrum * keep)

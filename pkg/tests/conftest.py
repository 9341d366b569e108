import math

import numpy as np
import pytest

from deltoid import gamma_point, gamma_samples


@pytest.fixture(scope="session")
def deltoid_polygon():
    """Point-in-polygon oracle for the region, independent of the root test."""
    from matplotlib.path import Path

    pts = gamma_samples(4096)
    return Path(np.column_stack([pts.real, pts.imag]))


def distance_to_boundary(z: complex) -> float:
    """Distance from z to the boundary curve, via coarse scan plus refinement."""
    ts = np.linspace(0.0, 2.0 * math.pi, 20001)
    pts = (2.0 / 3.0) * np.exp(1j * ts) + (1.0 / 3.0) * np.exp(-2j * ts)
    k = int(np.argmin(np.abs(pts - z)))
    lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, ts.size - 1)]
    for _ in range(80):  # golden-section refine
        m1 = lo + 0.381966011250105 * (hi - lo)
        m2 = hi - 0.381966011250105 * (hi - lo)
        if abs(gamma_point(m1) - z) < abs(gamma_point(m2) - z):
            hi = m2
        else:
            lo = m1
    return abs(gamma_point(0.5 * (lo + hi)) - z)


def log_slope(errors: np.ndarray, first: int, last: int) -> float:
    """Least-squares slope of log(error) against the iteration index.

    `first` and `last` are 1-based iteration numbers, inclusive.
    """
    ks = np.arange(first, last + 1, dtype=float)
    ys = np.log(np.maximum(errors[first - 1:last], 1e-300))
    design = np.vstack([ks, np.ones_like(ks)]).T
    return float(np.linalg.lstsq(design, ys, rcond=None)[0][0])

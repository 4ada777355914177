"""Shared quadrature oracles for the density tests.

These integrate mixture products numerically and independently of the closed
forms they are used to check: plain trapezoid sums on point-doubling grids.
"""

import numpy as np
import pytest

from melc.kde import kde_eval


def trapezoid_product_integral(f, g, stds=8.0, rel_tol=1e-9, max_points=2**21):
    """Integral of f*g by trapezoid quadrature with point doubling.

    The window spans both center ranges padded by ``stds`` of the larger
    bandwidth; the grid doubles until two successive estimates agree to
    ``rel_tol`` relatively.
    """
    lo = min(f.centers.min(), g.centers.min()) - stds * max(f.bandwidth, g.bandwidth)
    hi = max(f.centers.max(), g.centers.max()) + stds * max(f.bandwidth, g.bandwidth)
    previous = None
    points = 1024
    while points <= max_points:
        grid = np.linspace(lo, hi, points + 1)
        estimate = np.trapezoid(kde_eval(f, grid) * kde_eval(g, grid), grid)
        if previous is not None and abs(estimate - previous) <= rel_tol * abs(estimate):
            return estimate
        previous = estimate
        points *= 2
    return previous


@pytest.fixture
def rng():
    return np.random.default_rng(42)

"""One-dimensional Gaussian-mixture kernel density estimation.

A ``Kde1d`` places one Gaussian kernel of a common bandwidth on every center
with uniform weight 1/N, so the density integrates to 1 analytically. Products
of two such mixtures integrate in closed form, which is what the objective
stack builds on: no quadrature is involved in ``cross_integral``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geometry import AffineMap1d

__all__ = [
    "Kde1d",
    "DegenerateBandwidthError",
    "silverman_bandwidth",
    "kde_eval",
    "cross_integral",
    "self_integral",
    "rescale_kde",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# exp(-50) ~ 2e-22 per kernel; beyond this distance (relative to the closest
# pair) a term cannot move the double sum by more than 1e-15 relative.
_CUTOFF_STDS = 10.0

_CHUNK = 128


class DegenerateBandwidthError(ValueError):
    """Raised when a data-driven bandwidth cannot be formed (too few samples
    or zero spread). Callers may substitute an explicit bandwidth instead."""


@dataclass(frozen=True)
class Kde1d:
    """Gaussian mixture density: uniform-weight kernels at ``centers`` with a
    single positive ``bandwidth``."""

    centers: np.ndarray
    bandwidth: float

    def __post_init__(self):
        centers = np.atleast_1d(np.asarray(self.centers, dtype=np.float64))
        if centers.ndim != 1 or centers.size < 1:
            raise ValueError("centers must be a nonempty 1-D array")
        if not np.all(np.isfinite(centers)):
            raise ValueError("centers must be finite")
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise ValueError("bandwidth must be a positive finite number")
        object.__setattr__(self, "centers", centers)

    @property
    def n_centers(self) -> int:
        return self.centers.size

    def support_window(self, stds: float = 8.0) -> tuple[float, float]:
        """Interval covering the centers padded by ``stds`` bandwidths."""
        return (
            float(self.centers.min()) - stds * self.bandwidth,
            float(self.centers.max()) + stds * self.bandwidth,
        )


def silverman_bandwidth(samples) -> float:
    """Rule-of-thumb bandwidth (4 / (3 N))^(1/5) * std for 1-D Gaussian KDE.

    Uses the population (divide-by-N) standard deviation. Raises
    ``DegenerateBandwidthError`` for fewer than two samples or zero spread.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size < 2:
        raise DegenerateBandwidthError(
            "degenerate bandwidth: need at least 2 samples"
        )
    std = float(samples.std())
    if std <= 0.0:
        raise DegenerateBandwidthError("degenerate bandwidth: zero standard deviation")
    return (4.0 / (3.0 * samples.size)) ** 0.2 * std


def kde_eval(f: Kde1d, x):
    """Evaluate the mixture density at ``x`` (scalar or array).

    Returns (1/N) * sum_i exp(-(c_i - x)^2 / (2 sigma^2)) / (sqrt(2 pi) sigma).
    """
    x_arr = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(x_arr).ravel()
    out = np.zeros(flat.size)
    inv2s2 = 0.5 / (f.bandwidth * f.bandwidth)
    buf = np.empty((min(_CHUNK, f.centers.size), flat.size))
    for i0 in range(0, f.centers.size, _CHUNK):
        block = f.centers[i0 : i0 + _CHUNK]
        w = buf[: block.size]
        np.subtract(block[:, None], flat[None, :], out=w)
        np.square(w, out=w)
        w *= -inv2s2
        np.exp(w, out=w)
        out += w.sum(axis=0)
    out /= f.centers.size * f.bandwidth * _SQRT_2PI
    if x_arr.ndim == 0:
        return float(out[0])
    return out.reshape(x_arr.shape)


def eval_on_sorted_grid(f: Kde1d, grid: np.ndarray, out=None) -> np.ndarray:
    """Density values on an ascending grid, skipping kernels farther than
    ``_CUTOFF_STDS`` bandwidths from a grid block (below 1e-15 relative)."""
    if out is None:
        out = np.zeros(grid.size)
    else:
        out[:] = 0.0
    centers = np.sort(f.centers)
    reach = _CUTOFF_STDS * f.bandwidth
    inv2s2 = 0.5 / (f.bandwidth * f.bandwidth)
    scratch = np.empty(min(_CHUNK, centers.size) * grid.size)
    for i0 in range(0, centers.size, _CHUNK):
        block = centers[i0 : i0 + _CHUNK]
        lo = np.searchsorted(grid, block[0] - reach, side="left")
        hi = np.searchsorted(grid, block[-1] + reach, side="right")
        if hi <= lo:
            continue
        w = scratch[: block.size * (hi - lo)].reshape(block.size, hi - lo)
        np.subtract(block[:, None], grid[None, lo:hi], out=w)
        np.square(w, out=w)
        w *= -inv2s2
        np.exp(w, out=w)
        out[lo:hi] += w.sum(axis=0)
    out /= centers.size * f.bandwidth * _SQRT_2PI
    return out


def _min_pair_distance(a_sorted: np.ndarray, b_sorted: np.ndarray) -> float:
    """Smallest |a_i - b_j| between two ascending arrays."""
    pos = np.searchsorted(a_sorted, b_sorted)
    best = np.inf
    left = pos > 0
    if np.any(left):
        best = min(best, float(np.min(b_sorted[left] - a_sorted[pos[left] - 1])))
    right = pos < a_sorted.size
    if np.any(right):
        best = min(best, float(np.min(a_sorted[pos[right]] - b_sorted[right])))
    return max(best, 0.0)


def _gauss_pair_sum(a: np.ndarray, b: np.ndarray, var_sum: float) -> float:
    """sum_ij exp(-(a_i - b_j)^2 / (2 var_sum)), truncating pairs whose
    contribution is below 1e-15 of the dominant term.

    The arguments are put into a canonical order first, so the summation
    grouping (and hence the rounding) is identical under argument swap and
    the result is exactly symmetric."""
    a = np.sort(a)
    b = np.sort(b)
    if (a.size, a.tobytes()) > (b.size, b.tobytes()):
        a, b = b, a
    s = math.sqrt(var_sum)
    reach = _min_pair_distance(a, b) + _CUTOFF_STDS * s
    inv2s2 = 0.5 / var_sum
    total = 0.0
    scratch = np.empty(min(_CHUNK, b.size) * a.size)
    for j0 in range(0, b.size, _CHUNK):
        block = b[j0 : j0 + _CHUNK]
        lo = np.searchsorted(a, block[0] - reach, side="left")
        hi = np.searchsorted(a, block[-1] + reach, side="right")
        if hi <= lo:
            continue
        w = scratch[: block.size * (hi - lo)].reshape(block.size, hi - lo)
        np.subtract(block[:, None], a[None, lo:hi], out=w)
        np.square(w, out=w)
        w *= -inv2s2
        np.exp(w, out=w)
        total += float(w.sum())
    return total


def cross_integral(f: Kde1d, g: Kde1d) -> float:
    """Integral over the real line of the product of two mixtures.

    Exact closed form: the product of two Gaussian kernels integrates to a
    Gaussian in the center difference with summed variances, so

        (1/(N_f N_g)) * sum_ij phi(c_i - d_j; sigma_f^2 + sigma_g^2),

    where phi(d; s^2) = exp(-d^2 / (2 s^2)) / sqrt(2 pi s^2).
    """
    var_sum = f.bandwidth * f.bandwidth + g.bandwidth * g.bandwidth
    total = _gauss_pair_sum(f.centers, g.centers, var_sum)
    norm = f.centers.size * g.centers.size * math.sqrt(2.0 * math.pi * var_sum)
    return total / norm


def self_integral(f: Kde1d) -> float:
    """Integral of the squared density, cross_integral(f, f)."""
    return cross_integral(f, f)


def rescale_kde(f: Kde1d, mapping: AffineMap1d) -> Kde1d:
    """Push the mixture through an affine map: centers are mapped, the
    bandwidth is multiplied by the scale, and the returned density g
    satisfies g(map(x)) = f(x) / map.scale pointwise."""
    return Kde1d(
        centers=mapping.apply(f.centers),
        bandwidth=f.bandwidth * mapping.scale,
    )

"""Quadrature and goodness-of-fit utilities used to validate samplers.

The integration routines here serve as independent oracles: expected bin
probabilities, normalizing masses, and region areas are always computed by
quadrature, never by sampling, so the checks stay decoupled from the
samplers they judge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import special
from scipy.stats import chi2

Rect = tuple[tuple[float, float], tuple[float, float]]


class QuadratureError(RuntimeError):
    """Adaptive subdivision failed to reach the requested tolerance."""


def quad_1d(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_depth: int = 50,
) -> float:
    """Integrate g over [lo, hi] by adaptive Simpson subdivision.

    tol is an absolute error target. Raises QuadratureError when an interval
    still misses its share of the tolerance at max_depth subdivisions.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return 0.0
    if lo > hi:
        return -quad_1d(g, hi, lo, tol, max_depth)
    fa = g(lo)
    fb = g(hi)
    m = 0.5 * (lo + hi)
    fm = g(m)
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_adapt(g, lo, hi, fa, fm, fb, whole, tol, max_depth)


def _simpson_adapt(g, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = g(lm)
    frm = g(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"subdivision depth exhausted on [{a}, {b}], residual {delta:.3e}"
        )
    half = 0.5 * tol
    return _simpson_adapt(g, a, m, fa, flm, fm, left, half, depth - 1) + _simpson_adapt(
        g, m, b, fm, frm, fb, right, half, depth - 1
    )


class Quad2DResult(NamedTuple):
    value: float
    error_estimate: float


def quad_2d_grid(
    g: Callable[[np.ndarray, np.ndarray], np.ndarray],
    rect: Rect,
    cells_per_axis: int,
) -> Quad2DResult:
    """Midpoint-rule tensor quadrature of g over a rectangle.

    g must broadcast over numpy arrays. The returned error estimate is the
    Richardson comparison against the half-resolution grid (midpoint rule is
    second order, so |I_h - I_2h| / 3 bounds the leading error term).
    """
    if cells_per_axis < 2:
        raise ValueError("cells_per_axis must be at least 2")
    fine = _midpoint_2d(g, rect, cells_per_axis)
    coarse = _midpoint_2d(g, rect, max(1, cells_per_axis // 2))
    return Quad2DResult(fine, abs(fine - coarse) / 3.0)


def _midpoint_2d(g, rect, n):
    (x_lo, x_hi), (y_lo, y_hi) = rect
    hx = (x_hi - x_lo) / n
    hy = (y_hi - y_lo) / n
    ys = y_lo + hy * (np.arange(n) + 0.5)
    total = 0.0
    # row-chunked so a 2000x2000 grid never materializes more than a band
    chunk = max(1, 4_000_000 // n)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        xs = x_lo + hx * (np.arange(start, stop) + 0.5)
        total += float(np.sum(g(xs[:, None], ys[None, :])))
    return total * hx * hy


def bin_probabilities_1d(
    mass: Callable[[float, float], float], edges: Sequence[float]
) -> np.ndarray:
    """Per-bin probabilities from a mass function, normalized to sum to 1."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2:
        raise ValueError("need at least two bin edges")
    probs = np.array([mass(a, b) for a, b in zip(edges[:-1], edges[1:])])
    total = probs.sum()
    if total <= 0:
        raise ValueError("mass function vanished on all bins")
    return probs / total


def bin_probabilities_2d(
    g: Callable[[np.ndarray, np.ndarray], np.ndarray],
    rect: Rect,
    bins_per_axis: int,
    cells_per_bin: int = 100,
) -> np.ndarray:
    """Quadrature bin probabilities of a 2-d density over a uniform grid.

    Each bin is integrated on its own cells_per_bin x cells_per_bin midpoint
    subgrid; the matrix is normalized so the probabilities sum to 1.
    """
    (x_lo, x_hi), (y_lo, y_hi) = rect
    n = bins_per_axis * cells_per_bin
    hx = (x_hi - x_lo) / n
    hy = (y_hi - y_lo) / n
    ys = y_lo + hy * (np.arange(n) + 0.5)
    masses = np.empty((bins_per_axis, bins_per_axis))
    for bx in range(bins_per_axis):
        xs = x_lo + hx * (np.arange(bx * cells_per_bin, (bx + 1) * cells_per_bin) + 0.5)
        band = g(xs[:, None], ys[None, :])
        masses[bx] = band.reshape(cells_per_bin, bins_per_axis, cells_per_bin).sum(
            axis=(0, 2)
        )
    return masses / masses.sum()


@dataclass(frozen=True)
class Histogram:
    """Multidimensional histogram with a density-scale view."""

    bin_edges: tuple[np.ndarray, ...]
    counts: np.ndarray
    total: int

    @property
    def dim(self) -> int:
        return len(self.bin_edges)

    @classmethod
    def from_samples(cls, samples, bin_edges) -> "Histogram":
        """Histogram points (array of shape (n,) or (n, d)) on given edges.

        Every sample must land inside the edges; silently dropping points
        would corrupt goodness-of-fit counts downstream.
        """
        pts = np.asarray(samples, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if isinstance(bin_edges, np.ndarray) and bin_edges.ndim == 1:
            bin_edges = (bin_edges,)
        edges = tuple(np.asarray(e, dtype=float) for e in bin_edges)
        if pts.shape[1] != len(edges):
            raise ValueError("sample dimension does not match bin_edges")
        counts, _ = np.histogramdd(pts, bins=edges)
        counts = counts.astype(np.int64)
        if counts.sum() != len(pts):
            raise ValueError("samples fall outside the bin range")
        return cls(edges, counts, len(pts))

    def density(self) -> np.ndarray:
        """counts / (total * bin volume), comparable to the target density."""
        vol = np.diff(self.bin_edges[0])
        for e in self.bin_edges[1:]:
            vol = np.multiply.outer(vol, np.diff(e))
        return self.counts / (self.total * vol)


@dataclass(frozen=True)
class GofReport:
    """Pearson chi-square result against quadrature bin probabilities."""

    statistic: float
    dof: int
    p_value: float
    bins_merged: int


def chi_square_gof(
    samples,
    bin_edges,
    expected_probs: np.ndarray,
    min_expected: float = 5.0,
) -> GofReport:
    """Chi-square goodness of fit of samples against expected probabilities.

    expected_probs must sum to 1 within 1e-9 and match the bin layout. Bins
    whose expected count falls below min_expected are pooled into one bin
    (folded into the smallest regular bin if the pool itself stays small),
    and the merge count is reported. Needs at least 2 effective bins.
    """
    expected_probs = np.asarray(expected_probs, dtype=float)
    if abs(expected_probs.sum() - 1.0) > 1e-9:
        raise ValueError("expected_probs must sum to 1")
    hist = Histogram.from_samples(samples, bin_edges)
    if hist.counts.shape != expected_probs.shape:
        raise ValueError("expected_probs shape does not match the bin grid")
    observed = hist.counts.ravel().astype(float)
    expected = expected_probs.ravel() * hist.total

    small = expected < min_expected
    bins_merged = int(small.sum())
    obs_eff = list(observed[~small])
    exp_eff = list(expected[~small])
    if bins_merged:
        pooled_obs = observed[small].sum()
        pooled_exp = expected[small].sum()
        if pooled_exp >= min_expected or not exp_eff:
            obs_eff.append(pooled_obs)
            exp_eff.append(pooled_exp)
        else:
            k = int(np.argmin(exp_eff))
            obs_eff[k] += pooled_obs
            exp_eff[k] += pooled_exp

    if len(exp_eff) < 2:
        raise ValueError("fewer than 2 effective bins after merging")
    obs_arr = np.asarray(obs_eff)
    exp_arr = np.asarray(exp_eff)
    statistic = float(((obs_arr - exp_arr) ** 2 / exp_arr).sum())
    dof = len(exp_arr) - 1
    return GofReport(statistic, dof, float(chi2.sf(statistic, dof)), bins_merged)


@dataclass(frozen=True)
class KsReport:
    statistic: float
    p_value: float


def ks_test_1d(samples, cdf: Callable[[float], float]) -> KsReport:
    """Two-sided Kolmogorov-Smirnov test with the asymptotic p-value."""
    xs = np.sort(np.asarray(samples, dtype=float))
    n = len(xs)
    if n == 0:
        raise ValueError("ks_test_1d needs at least one sample")
    f = np.array([cdf(x) for x in xs])
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - f))
    d_minus = float(np.max(f - (grid - 1.0 / n)))
    statistic = max(d_plus, d_minus)
    p_value = float(special.kolmogorov(math.sqrt(n) * statistic))
    return KsReport(statistic, p_value)

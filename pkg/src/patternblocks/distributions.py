"""Shipped densities and their block configurations.

Three targets:

* an arcsine-envelope density on (0, 1) with integrable singularities at
  both endpoints, modulated by 1 + sin(8 pi x) and covered by eight
  envelope strips (adoption rate exactly 2/3);
* a truncated two-component Gaussian mixture on [-4, 4]^2 covered by a
  slab, a superlevel block, and three cylinders (adoption rate ~ 0.3644);
* the half-normal with an equal-area ziggurat layout, the classical
  special case of the block construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numeric
from .blocks1d import ZigguratLayout, build_ziggurat, envelope_block, ziggurat_blockset
from .blocks2d import cylinder_block, slab_block, superlevel_block
from .core import BlockSet, Density
from .rng import UniformSource

# ---------------------------------------------------------------------------
# arcsine-modulated density on (0, 1)

ARCSINE_STRIPS = 8


def arcsine_pdf(x: float) -> float:
    """Beta(1/2, 1/2) density 1 / (pi sqrt(x (1 - x))); +inf at 0 and 1."""
    t = x * (1.0 - x)
    if t <= 0.0:
        return math.inf
    return 1.0 / (math.pi * math.sqrt(t))


def arcsine_cdf(x: float) -> float:
    """(2 / pi) arcsin(sqrt(x)) on [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("arcsine_cdf domain is [0, 1]")
    return (2.0 / math.pi) * math.asin(math.sqrt(x))


def arcsine_cdf_inv(p: float) -> float:
    """sin^2(pi p / 2) on [0, 1]; avoids cancellation near the endpoints."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("arcsine_cdf_inv domain is [0, 1]")
    s = math.sin(0.5 * math.pi * p)
    return s * s


def modulation(x: float) -> float:
    """1 + sin(8 pi x), the factor shaping the arcsine envelope."""
    return 1.0 + math.sin(8.0 * math.pi * x)


def arcsine_modulated_pdf(x: float) -> float:
    """Target density: modulation(x) * arcsine_pdf(x) on (0, 1), else 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return modulation(x) * arcsine_pdf(x)


def arcsine_modulated_density() -> Density:
    # total mass is exactly 1: the sine term integrates to zero against the
    # arcsine weight (antisymmetry under x -> 1 - x of the odd harmonic)
    return Density(
        dim=1,
        evaluate=lambda p: arcsine_modulated_pdf(p[0]),
        domain_bounds=((0.0, 1.0),),
        K=1.0,
        K_provenance="exact",
    )


def arcsine_strip_scale(i: int) -> float:
    """Envelope scale on strip i (1-based): 2 on odd strips, 1 on even."""
    return 2.0 if i % 2 == 1 else 1.0


def arcsine_modulated_blockset() -> BlockSet:
    """Eight envelope strips [(i-1)/8, i/8] under scale * arcsine_pdf.

    The scales dominate the modulation factor on each strip (the sine is
    nonpositive on even strips), so the strips jointly cover the subgraph;
    total measure is exactly 3/2, hence the 2/3 adoption rate.
    """
    blocks = []
    for i in range(1, ARCSINE_STRIPS + 1):
        blocks.append(
            envelope_block(
                (i - 1) / ARCSINE_STRIPS,
                i / ARCSINE_STRIPS,
                arcsine_strip_scale(i),
                arcsine_pdf,
                arcsine_cdf,
                arcsine_cdf_inv,
                label=f"strip {i}",
            )
        )
    return BlockSet(blocks)


def arcsine_modulated_mass(lo: float, hi: float, tol: float = 1e-10) -> float:
    """Integral of the modulated density over [lo, hi] in (0, 1).

    Uses the substitution x = sin^2(theta), which absorbs the arcsine
    weight into a constant and leaves a smooth bounded integrand, so the
    endpoint singularities never enter the quadrature.
    """
    if not 0.0 <= lo <= hi <= 1.0:
        raise ValueError("integration range must sit inside [0, 1]")
    t_lo = math.asin(math.sqrt(lo))
    t_hi = math.asin(math.sqrt(hi))

    def integrand(theta: float) -> float:
        s = math.sin(theta)
        return (2.0 / math.pi) * modulation(s * s)

    return numeric.quad_1d(integrand, t_lo, t_hi, tol=tol)


# ---------------------------------------------------------------------------
# two-component Gaussian mixture on [-4, 4]^2

MIX_COEFF = 2119.0 / 9970.0
MIX_DOMAIN = ((-4.0, 4.0), (-4.0, 4.0))
SUPERLEVEL_BOX = ((-2.0, 3.5), (-2.0, 3.5))


def gauss_mixture_xy(x1, x2):
    """Mixture density, broadcasting over numpy arrays."""
    return MIX_COEFF * (
        np.exp(-x1 * x1 - x2 * x2)
        + 0.5 * np.exp(-((x1 - 2.0) ** 2) - (x2 - 2.0) ** 2)
    )


def _gauss_mixture_scalar(x1: float, x2: float) -> float:
    return MIX_COEFF * (
        math.exp(-x1 * x1 - x2 * x2)
        + 0.5 * math.exp(-((x1 - 2.0) ** 2) - (x2 - 2.0) ** 2)
    )


@dataclass(frozen=True)
class LevelConstants:
    """Height levels and disk geometry of the mixture block cover.

    The five bands are [0, b0], [b0, b1], [b1, b2] twice (two disjoint
    disks share the band), and [b2, b3]; b3 is the density maximum, reached
    at the origin up to the exponentially small cross term.
    """

    b0: float = 1.0 / 40.0
    b1: float = 1.0 / 15.0
    b2: float = MIX_COEFF * (math.exp(-8.0) + 0.5)
    b3: float = MIX_COEFF * (1.0 + 0.5 * math.exp(-8.0))
    disk_centers: tuple[tuple[float, float], ...] = ((0.0, 0.0), (2.0, 2.0), (0.0, 0.0))
    disk_radii: tuple[float, ...] = (1.25, 1.0, 1.0)

    def __post_init__(self):
        if not 0.0 < self.b0 < self.b1 < self.b2 < self.b3:
            raise ValueError("levels must be strictly increasing and positive")

    @property
    def bands(self) -> tuple[tuple[float, float], ...]:
        return (
            (0.0, self.b0),
            (self.b0, self.b1),
            (self.b1, self.b2),
            (self.b1, self.b2),
            (self.b2, self.b3),
        )


DEFAULT_LEVELS = LevelConstants()


def gauss_mixture_density(cells_per_axis: int = 2000) -> Density:
    """Mixture density with its mass estimated by grid quadrature.

    The coefficient very nearly normalizes the truncated mixture, but only
    quadrature says how nearly, so K is marked as estimated.
    """
    mass = numeric.quad_2d_grid(gauss_mixture_xy, MIX_DOMAIN, cells_per_axis).value

    def evaluate(point):
        x1, x2 = point
        if not (-4.0 <= x1 <= 4.0 and -4.0 <= x2 <= 4.0):
            return 0.0
        return _gauss_mixture_scalar(x1, x2)

    return Density(
        dim=2,
        evaluate=evaluate,
        domain_bounds=MIX_DOMAIN,
        K=mass,
        K_provenance="quadrature",
    )


def gauss_mixture_blockset(
    levels: LevelConstants = DEFAULT_LEVELS, cells_per_axis: int = 2000
) -> BlockSet:
    """Slab + superlevel + three cylinders covering the mixture subgraph."""
    blocks = [
        slab_block(MIX_DOMAIN, 0.0, levels.b0, label="slab"),
        superlevel_block(
            levels.b0,
            SUPERLEVEL_BOX,
            gauss_mixture_xy,
            levels.b0,
            levels.b1,
            cells_per_axis=cells_per_axis,
            domain_rect=MIX_DOMAIN,
            label="superlevel",
        ),
    ]
    for (center, radius, band) in zip(
        levels.disk_centers, levels.disk_radii, levels.bands[2:]
    ):
        blocks.append(
            cylinder_block(
                center, radius, band[0], band[1],
                label=f"disk r={radius} at {center}",
            )
        )
    return BlockSet(blocks)


# ---------------------------------------------------------------------------
# half-normal and its ziggurat layout

HALF_NORMAL_PEAK = math.sqrt(2.0 / math.pi)


def half_normal_pdf(x: float) -> float:
    """sqrt(2 / pi) exp(-x^2 / 2) for x >= 0, zero below."""
    if x < 0.0:
        return 0.0
    return HALF_NORMAL_PEAK * math.exp(-0.5 * x * x)


def half_normal_cdf(x: float) -> float:
    if x <= 0.0:
        return 0.0
    return math.erf(x / math.sqrt(2.0))


def half_normal_pdf_inv(y: float) -> float:
    """Inverse of the pdf on [0, inf); defined for 0 < y <= the peak value."""
    if not 0.0 < y <= HALF_NORMAL_PEAK:
        raise ValueError("pdf value out of range")
    return math.sqrt(max(0.0, -2.0 * math.log(y / HALF_NORMAL_PEAK)))


def half_normal_tail_mass(r: float) -> float:
    """Integral of the pdf over [r, inf) = erfc(r / sqrt(2))."""
    return math.erfc(r / math.sqrt(2.0))


def half_normal_tail_sampler(r: float, source: UniformSource) -> float:
    """Exact draw from the half-normal restricted to [r, inf).

    Marsaglia's tail scheme: exponential proposals of rate r, accepted
    against the Gaussian curvature. log1p(-u) keeps u = 0 harmless.
    """
    if r <= 0.0:
        raise ValueError("tail start must be positive")
    while True:
        x = -math.log1p(-source.next_unit()) / r
        y = -math.log1p(-source.next_unit())
        if 2.0 * y >= x * x:
            return r + x


def half_normal_density() -> Density:
    return Density(
        dim=1,
        evaluate=lambda p: half_normal_pdf(p[0]),
        domain_bounds=((0.0, math.inf),),
        K=1.0,
        K_provenance="exact",
    )


def half_normal_ziggurat(n_layers: int = 128) -> ZigguratLayout:
    """Equal-area layout using the closed-form pdf inverse and tail mass."""
    return build_ziggurat(
        half_normal_pdf,
        n_layers,
        half_normal_tail_mass,
        f_inv=half_normal_pdf_inv,
        tail_sampler=half_normal_tail_sampler,
    )


def half_normal_ziggurat_blockset(n_layers: int = 128) -> BlockSet:
    return ziggurat_blockset(half_normal_ziggurat(n_layers), half_normal_pdf)

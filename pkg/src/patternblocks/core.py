"""Core pattern block machinery.

A pattern block is a region of the (point, height) space carrying its exact
measure and an exact uniform sampler. A block set stacks blocks into an
envelope of the region under a density's graph; sampling then draws a block
by measure-weighted selection, draws a uniform point of that block, and
accepts it when the height lies under the graph. The accepted points follow
the normalized density, and the acceptance probability of each attempt is
K / nu(B), the adoption rate.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .rng import UniformSource

Point = tuple[float, ...]

DEFAULT_REJECTION_CAP = 1_000_000


class RejectionCapError(RuntimeError):
    """Too many consecutive rejections; the block set is misconfigured
    (adoption rate effectively zero) or the restriction region unreachable."""


@dataclass(frozen=True)
class Density:
    """Nonnegative target function f with its total mass K = integral of f.

    evaluate maps a point (a 1- or 2-tuple of floats) to f(x) >= 0; f / K is
    the probability density the samplers aim at. K_provenance records
    whether K is known exactly or was estimated by quadrature.
    """

    dim: int
    evaluate: Callable[[Point], float]
    domain_bounds: tuple[tuple[float, float], ...]
    K: float
    K_provenance: str = "exact"

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("only dimensions 1 and 2 are supported")
        if len(self.domain_bounds) != self.dim:
            raise ValueError("domain_bounds must give one (lo, hi) per axis")
        if not (self.K > 0.0 and math.isfinite(self.K)):
            raise ValueError("K must be positive and finite")
        if self.K_provenance not in ("exact", "quadrature"):
            raise ValueError("K_provenance must be 'exact' or 'quadrature'")


@dataclass(frozen=True)
class PatternBlock:
    """Region with positive finite measure and an exact uniform sampler.

    sample_uniform consumes draws from a UniformSource and returns
    ((coords...), height) distributed uniformly over the region. contains is
    an optional membership test used by statistical validation; a block
    without one cannot be probed for cover/overlap.
    """

    measure: float
    sample_uniform: Callable[[UniformSource], tuple[Point, float]]
    contains: Optional[Callable[[Point, float], bool]] = None
    label: str = ""

    def __post_init__(self):
        if not (self.measure > 0.0 and math.isfinite(self.measure)):
            raise ValueError(f"block measure must be positive and finite, got {self.measure}")


class BlockSet:
    """Ordered pattern blocks with cumulative selection weights.

    The weights are block measures normalized by the total; the final
    cumulative entry is forced to exactly 1.0 so selection is total on
    [0, 1) despite floating-point summation. The constructor's contract
    (callers must supply blocks that overlap only on measure-zero sets and
    jointly cover the density's subgraph) is checked statistically by
    validate_blockset, not symbolically.
    """

    def __init__(self, blocks: Sequence[PatternBlock]):
        blocks = list(blocks)
        if not blocks:
            raise ValueError("a block set needs at least one block")
        total = math.fsum(b.measure for b in blocks)
        if not math.isfinite(total):
            raise ValueError("total measure must be finite")
        cumulative = []
        acc = 0.0
        for b in blocks:
            acc += b.measure
            cumulative.append(acc / total)
        cumulative[-1] = 1.0
        self.blocks = blocks
        self.cumulative = cumulative
        self.total_measure = total

    def __len__(self) -> int:
        return len(self.blocks)


def select_block(cumulative: Sequence[float], u: float) -> int:
    """Smallest 0-based index i with u < cumulative[i].

    Binary search over the nondecreasing cumulative weights. u must lie in
    [0, 1); since the last entry is 1.0 an index always exists.
    """
    return bisect_right(cumulative, u)


def exact_adoption_rate(density: Density, blockset: BlockSet) -> float:
    """K / nu(B): the probability that a single attempt is accepted."""
    return density.K / blockset.total_measure


@dataclass(frozen=True)
class CheckResult:
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    positivity: CheckResult
    cover: CheckResult
    overlap: CheckResult

    def all_passed(self) -> bool:
        return all(
            c.status == "pass" for c in (self.positivity, self.cover, self.overlap)
        )


def validate_blockset(
    blockset: BlockSet,
    density: Density,
    n_probe: int = 20_000,
    tolerance: float = 1e-12,
    probe_bounds: Optional[tuple[tuple[float, float], ...]] = None,
    seed: int = 0,
    height_strata: int = 8,
) -> ValidationReport:
    """Statistical validation of the block-set contract against a density.

    Three checks:
      positivity  every block measure is strictly positive (exact);
      cover       on a cell-centered quasi-grid of n_probe points x with
                  heights stratified in [0, f(x)], every probe (x, y) with
                  y <= f(x) - tolerance must lie in at least one block;
      overlap     Monte Carlo: uniform samples of each block must not land
                  in any other block (pairwise intersections have measure
                  zero, so interior double-hits indicate real overlap).

    Cover and overlap need membership tests on every block involved; when
    one is missing those checks are reported as "skipped", never passed.
    probe_bounds replaces density.domain_bounds for the cover grid and must
    be given when the domain is unbounded.
    """
    if n_probe < 1:
        raise ValueError("n_probe must be at least 1")

    measures = [b.measure for b in blockset.blocks]
    if all(m > 0.0 for m in measures):
        positivity = CheckResult("pass", f"{len(measures)} blocks, min measure {min(measures):.6g}")
    else:
        positivity = CheckResult("fail", "block with nonpositive measure")
        skipped = CheckResult("skipped", "selection weights unusable")
        return ValidationReport(positivity, skipped, skipped)

    have_contains = all(b.contains is not None for b in blockset.blocks)
    bounds = probe_bounds if probe_bounds is not None else density.domain_bounds
    finite = all(math.isfinite(lo) and math.isfinite(hi) for lo, hi in bounds)

    if not have_contains:
        cover = CheckResult("skipped", "missing membership test on some block")
        overlap = CheckResult("skipped", "missing membership test on some block")
        return ValidationReport(positivity, cover, overlap)
    if not finite:
        raise ValueError("cover probing needs finite probe_bounds for unbounded domains")

    cover = _cover_check(blockset, density, bounds, n_probe, tolerance, height_strata)
    overlap = _overlap_check(blockset, n_probe, tolerance, seed)
    return ValidationReport(positivity, cover, overlap)


def _probe_points(bounds, n_probe):
    if len(bounds) == 1:
        (lo, hi), = bounds
        step = (hi - lo) / n_probe
        for k in range(n_probe):
            yield (lo + (k + 0.5) * step,)
    else:
        (x_lo, x_hi), (y_lo, y_hi) = bounds
        per_axis = max(1, int(math.isqrt(n_probe)))
        sx = (x_hi - x_lo) / per_axis
        sy = (y_hi - y_lo) / per_axis
        for i in range(per_axis):
            x = x_lo + (i + 0.5) * sx
            for j in range(per_axis):
                yield (x, y_lo + (j + 0.5) * sy)


def _cover_check(blockset, density, bounds, n_probe, tolerance, height_strata):
    blocks = blockset.blocks
    evaluate = density.evaluate
    violations = 0
    worst = 0.0
    checked = 0
    for point in _probe_points(bounds, n_probe):
        fx = evaluate(point)
        if not (fx > tolerance) or math.isinf(fx):
            continue
        for j in range(height_strata):
            y = fx * (j + 0.5) / height_strata
            if y > fx - tolerance:
                continue
            checked += 1
            if not any(b.contains(point, y) for b in blocks):
                violations += 1
                worst = max(worst, fx - y)
    if violations == 0:
        return CheckResult("pass", f"{checked} probes, 0 uncovered")
    return CheckResult(
        "fail", f"{violations} of {checked} probes uncovered, worst gap {worst:.3e}"
    )


def _overlap_check(blockset, n_probe, tolerance, seed):
    blocks = blockset.blocks
    if len(blocks) == 1:
        return CheckResult("pass", "single block")
    source = UniformSource(seed)
    per_block = max(100, n_probe // len(blocks))
    total = blockset.total_measure
    hits = 0
    weighted = 0.0
    for i, block in enumerate(blocks):
        block_hits = 0
        for _ in range(per_block):
            point, y = block.sample_uniform(source)
            for j, other in enumerate(blocks):
                if j != i and other.contains(point, y):
                    block_hits += 1
        hits += block_hits
        # ordered-pair estimate of nu(B_i n B_j); halved below for i < j sums
        weighted += block.measure * block_hits / per_block
    estimate = weighted / (2.0 * total)
    if estimate <= tolerance:
        return CheckResult("pass", f"{per_block} probes/block, {hits} double-hits")
    return CheckResult(
        "fail", f"{hits} double-hits, overlap fraction estimate {estimate:.3e}"
    )


class PatternBlockSampler:
    """Accept/reject sampler over a validated block set.

    Each attempt draws one selection uniform, samples the selected block
    uniformly, and accepts when the height lies under the density graph
    (inclusive comparison; the boundary has measure zero, the choice is
    fixed for determinism). attempts counts loop iterations and accepted
    counts returned samples, so accepted / attempts estimates the adoption
    rate. One sampler per thread; the underlying source must not be shared.
    """

    def __init__(
        self,
        density: Density,
        blockset: BlockSet,
        source: UniformSource,
        rejection_cap: int = DEFAULT_REJECTION_CAP,
    ):
        self.density = density
        self.blockset = blockset
        self.source = source
        self.rejection_cap = rejection_cap
        self.attempts = 0
        self.accepted = 0

    def sample_one(self) -> Point:
        evaluate = self.density.evaluate
        blocks = self.blockset.blocks
        cumulative = self.blockset.cumulative
        next_unit = self.source.next_unit
        consecutive = 0
        while True:
            u = next_unit()
            block = blocks[bisect_right(cumulative, u)]
            point, w = block.sample_uniform(self.source)
            self.attempts += 1
            if w <= evaluate(point):
                self.accepted += 1
                return point
            consecutive += 1
            if consecutive >= self.rejection_cap:
                raise RejectionCapError(
                    f"{consecutive} consecutive rejections; "
                    "block set does not match the density"
                )

    def sample_many(self, n: int) -> list[Point]:
        if n < 0:
            raise ValueError("n must be nonnegative")
        return [self.sample_one() for _ in range(n)]

    @property
    def empirical_rate(self) -> float:
        return self.accepted / self.attempts if self.attempts else float("nan")

import numpy as np
import pytest
from scipy.stats import chi2

from patternblocks.rng import UniformSource, derive_stream_seed


@pytest.fixture(scope="module")
def million_draws():
    source = UniformSource(12345)
    return np.array([source.next_unit() for _ in range(1_000_000)])


def test_same_seed_same_sequence():
    a = UniformSource(42)
    b = UniformSource(42)
    assert [a.next_unit() for _ in range(1000)] == [b.next_unit() for _ in range(1000)]


def test_different_seeds_differ():
    a = UniformSource(1)
    b = UniformSource(2)
    xs = [a.next_unit() for _ in range(1000)]
    ys = [b.next_unit() for _ in range(1000)]
    assert xs != ys


def test_range_contract(million_draws):
    assert million_draws.min() >= 0.0
    assert million_draws.max() < 1.0


def test_uniform_mean(million_draws):
    assert abs(million_draws.mean() - 0.5) < 0.002


def test_uniform_quantile(million_draws):
    assert abs(np.mean(million_draws < 0.25) - 0.25) < 0.002


def test_draw_counter():
    source = UniformSource(7)
    for _ in range(3):
        source.next_unit()
    assert source.draws_issued == 3


def test_equidistribution_chi_square(million_draws):
    counts, _ = np.histogram(million_draws, bins=100, range=(0.0, 1.0))
    expected = len(million_draws) / 100
    statistic = ((counts - expected) ** 2 / expected).sum()
    assert chi2.sf(statistic, 99) > 0.001


def test_stream_seeds_decorrelate():
    seeds = {derive_stream_seed(9, k) for k in range(100)}
    assert len(seeds) == 100
    a = UniformSource(derive_stream_seed(9, 0))
    b = UniformSource(derive_stream_seed(9, 1))
    assert [a.next_unit() for _ in range(100)] != [b.next_unit() for _ in range(100)]


def test_spawn_matches_derived_seed():
    parent = UniformSource(9)
    child = parent.spawn(3)
    direct = UniformSource(derive_stream_seed(9, 3))
    assert [child.next_unit() for _ in range(50)] == [
        direct.next_unit() for _ in range(50)
    ]

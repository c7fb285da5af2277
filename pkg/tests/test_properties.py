"""Seeded randomized checks of structural properties."""

import numpy as np
import pytest

from peulab.core.prospects import ChanceInfo, IntervalBounds, PointDistribution, Prospect, eu, eu_bounds, hurwicz
from peulab.ellsberg.two_stage import PLAN_ORDER, Strategy, UrnComposition, monte_carlo, win_probability
from peulab.social.peu import Marginal, PeuParams, SocialOption, compare

CASES = 1000
TOL = 1e-9


def random_chance(rng):
    lo, hi = sorted(rng.uniform(0.0, 1.0, size=2))
    return ChanceInfo.interval(float(lo), float(hi))


def random_binary(rng):
    success, failure = rng.uniform(-50.0, 150.0, size=2)
    return Prospect.binary(float(success), float(failure), random_chance(rng))


def random_marginals(rng):
    return [Marginal(*map(float, rng.uniform(0.0, 100.0, size=2)), random_chance(rng)) for _ in range(2)]


def random_option(rng, name):
    return SocialOption.from_marginals(name, ("Ann", "Bea"), random_marginals(rng))


def shifted(marginals, shift):
    return [Marginal(m.success + shift, m.failure + shift, m.chance) for m in marginals]


def test_hurwicz_is_monotone_in_alpha():
    rng = np.random.default_rng(1)
    for _ in range(CASES):
        prospect = random_binary(rng)
        low, high = sorted(rng.uniform(0.0, 1.0, size=2))
        assert hurwicz(prospect, float(high)) <= hurwicz(prospect, float(low)) + TOL


def test_hurwicz_is_translation_equivariant():
    rng = np.random.default_rng(2)
    for _ in range(CASES):
        values = rng.uniform(-100.0, 100.0, size=3)
        shift = float(rng.uniform(-50.0, 50.0))
        alpha = float(rng.uniform(0.0, 1.0))
        credal = IntervalBounds((ChanceInfo(0.1, 0.5), ChanceInfo(0.2, 0.4), ChanceInfo(0.1, 0.6)))
        base = Prospect(tuple((float(v),) for v in values), credal)
        moved = Prospect(tuple((float(v) + shift,) for v in values), credal)
        assert hurwicz(moved, alpha) == pytest.approx(hurwicz(base, alpha) + shift, abs=1e-7)


def test_aa_win_probability_is_color_symmetric():
    rng = np.random.default_rng(3)
    for p in rng.uniform(0.0, 1.0, size=CASES):
        p = float(p)
        assert win_probability(Strategy.AA, UrnComposition(p)) == pytest.approx(
            win_probability(Strategy.AA, UrnComposition(1.0 - p)), abs=TOL)


def test_compare_is_antisymmetric():
    rng = np.random.default_rng(4)
    for _ in range(CASES):
        params = PeuParams(*map(float, rng.uniform(0.0, 1.0, size=3)))
        left, right = random_option(rng, "left"), random_option(rng, "right")
        forward, backward = compare(left, right, params), compare(right, left, params)
        assert backward.margin == pytest.approx(-forward.margin, abs=1e-7)
        assert backward.relation is forward.relation.mirrored()


def test_common_shift_keeps_verdict():
    rng = np.random.default_rng(5)
    for _ in range(CASES):
        params = PeuParams(*map(float, rng.uniform(0.0, 1.0, size=3)))
        left, right = random_marginals(rng), random_marginals(rng)
        shift = float(rng.uniform(-100.0, 100.0))
        before = compare(SocialOption.from_marginals("left", ("Ann", "Bea"), left),
                         SocialOption.from_marginals("right", ("Ann", "Bea"), right), params)
        after = compare(SocialOption.from_marginals("left", ("Ann", "Bea"), shifted(left, shift)),
                        SocialOption.from_marginals("right", ("Ann", "Bea"), shifted(right, shift)), params)
        assert after.margin == pytest.approx(before.margin, abs=1e-7)
        assert after.relation is before.relation


def test_eu_lies_within_bounds_on_a_fine_grid():
    rng = np.random.default_rng(6)
    for _ in range(CASES):
        chance = random_chance(rng)
        prospect = Prospect.binary(*map(float, rng.uniform(-50.0, 150.0, size=2)), chance)
        low, high = eu_bounds(prospect)
        steps = np.arange(np.ceil(chance.lo * 1000), np.floor(chance.hi * 1000) + 1) / 1000
        for p in [chance.lo, *steps, chance.hi]:
            p = min(max(float(p), chance.lo), chance.hi)
            value = eu(prospect, (p, 1.0 - p))
            assert low - 1e-7 <= value <= high + 1e-7


def test_eu_matches_sampled_mean():
    prospect = Prospect(((80.0,), (50.0,)), PointDistribution((0.25, 0.75)))
    assert eu(prospect, (0.25, 0.75)) == pytest.approx(57.5)
    draws = np.random.default_rng(7).choice([80.0, 50.0], size=1_000_000, p=[0.25, 0.75])
    assert abs(draws.mean() - eu(prospect, (0.25, 0.75))) < 0.05


def test_monte_carlo_ignores_thread_count():
    rng = np.random.default_rng(8)
    for _ in range(CASES):
        strategy = PLAN_ORDER[int(rng.integers(len(PLAN_ORDER)))]
        composition = UrnComposition(float(rng.uniform(0.0, 1.0)))
        seed = int(rng.integers(2 ** 32))
        n_samples = int(rng.integers(1, 301))
        batch_size = int(rng.integers(1, 65))
        workers = int(rng.integers(2, 5))
        single = monte_carlo(strategy, composition, n_samples, seed, workers=1, batch_size=batch_size)
        threaded = monte_carlo(strategy, composition, n_samples, seed, workers=workers, batch_size=batch_size)
        assert single == threaded

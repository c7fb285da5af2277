#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Two-stage urn experiment.

Two balls are drawn with replacement, each from a risky urn (half red, half
black) or from an ambiguous urn with unknown red proportion p. The draw wins
when both balls share a color. Four plans exist: RR, AA, AR and RA.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from peulab.core.prospects import TOLERANCE, ChanceInfo, hurwicz_mix, validate_alpha
from peulab.exceptions import DomainError
from peulab.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_BATCH_SIZE = 65_536


class Color(str, Enum):
    RED = "red"
    BLACK = "black"


class UrnKind(str, Enum):
    """The two urns."""
    RISKY = "risky"
    AMBIGUOUS = "ambiguous"

    @property
    def match_chance(self) -> ChanceInfo:
        """Chance that one draw from this urn shows a given color, with nothing learned about p."""
        if self is UrnKind.RISKY:
            return ChanceInfo.precise(0.5)
        return ChanceInfo.vacuous()

    @property
    def short(self) -> str:
        return "R" if self is UrnKind.RISKY else "A"


# Ties resolve toward the ambiguous urn.
URN_ORDER = (UrnKind.AMBIGUOUS, UrnKind.RISKY)


class Strategy(str, Enum):
    """A complete drawing plan, named by its two urns."""
    RR = "RR"
    AA = "AA"
    AR = "AR"
    RA = "RA"

    @property
    def first(self) -> UrnKind:
        return UrnKind.RISKY if self.value[0] == "R" else UrnKind.AMBIGUOUS

    @property
    def second(self) -> UrnKind:
        return UrnKind.RISKY if self.value[1] == "R" else UrnKind.AMBIGUOUS

    @property
    def description(self) -> str:
        return f"{self.first.value} and {self.second.value}"

    @classmethod
    def from_urns(cls, first: UrnKind, second: UrnKind) -> "Strategy":
        return cls(first.short + second.short)


PLAN_ORDER = (Strategy.AA, Strategy.AR, Strategy.RA, Strategy.RR)


@dataclass(frozen=True)
class UrnComposition:
    """Proportion ``p`` of red balls in the ambiguous urn."""
    p: float

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"red proportion p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    def red_chance(self, urn: UrnKind) -> float:
        return 0.5 if urn is UrnKind.RISKY else self.p


@dataclass(frozen=True)
class PayoffSchedule:
    """
    Well-being after a win, per plan, and after a loss.

    Attributes:
        rr, aa, ar, ra: Success well-being for each plan
        w_fail: Well-being when the draw loses; below every success value
    """
    rr: float = 50.0
    aa: float = 80.0
    ar: float = 60.0
    ra: float = 80.0
    w_fail: float = 10.0

    def __post_init__(self):
        for name in ("rr", "aa", "ar", "ra", "w_fail"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"payoff {name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        lowest = min(self.rr, self.aa, self.ar, self.ra)
        if not self.w_fail < lowest:
            raise DomainError(f"w_fail ({self.w_fail}) must lie below every success payoff ({lowest})")

    @classmethod
    def equalized(cls, success: float = 80.0, w_fail: float = 10.0) -> "PayoffSchedule":
        return cls(success, success, success, success, w_fail)

    def success(self, strategy: Strategy) -> float:
        return getattr(self, strategy.value.lower())

    def as_dict(self) -> Dict[str, float]:
        return {"RR": self.rr, "AA": self.aa, "AR": self.ar, "RA": self.ra, "w_fail": self.w_fail}


def win_probability(strategy: Strategy, composition: UrnComposition) -> float:
    """
    Exact chance that the two draws match in color.

    Args:
        strategy: Drawing plan
        composition: Red proportion of the ambiguous urn

    Returns:
        p^2 + (1 - p)^2 for AA, 0.5 for every plan touching the risky urn
    """
    if strategy is Strategy.AA:
        p = composition.p
        return p * p + (1.0 - p) * (1.0 - p)
    return 0.5


def win_bounds(strategy: Strategy) -> Tuple[float, float]:
    """
    Lowest and highest win probability over p in [0, 1].

    Every closed form is constant or convex with its minimum at p = 0.5, so
    the extremes sit at p in {0, 0.5, 1}.
    """
    values = [win_probability(strategy, UrnComposition(p)) for p in (0.0, 0.5, 1.0)]
    return min(values), max(values)


def _wellbeing_from_win(win: float, success: float, w_fail: float) -> float:
    return win * success + (1.0 - win) * w_fail


def expected_wellbeing(strategy: Strategy, composition: UrnComposition, schedule: PayoffSchedule) -> float:
    """Win probability times the plan's success payoff plus the rest times ``w_fail``."""
    return _wellbeing_from_win(win_probability(strategy, composition), schedule.success(strategy), schedule.w_fail)


def strategy_hurwicz(strategy: Strategy, alpha: float, schedule: PayoffSchedule) -> float:
    """
    Hurwicz value of a complete plan, evaluated globally over p.

    Expected well-being rises with the win probability, so its extremes over
    p come from ``win_bounds``.
    """
    alpha = validate_alpha(alpha)
    lo, hi = win_bounds(strategy)
    success = schedule.success(strategy)
    worst = _wellbeing_from_win(lo, success, schedule.w_fail)
    best = _wellbeing_from_win(hi, success, schedule.w_fail)
    return hurwicz_mix(worst, best, alpha)


class DominanceRelation(str, Enum):
    STRICT = "strictly_dominates"
    WEAK = "weakly_dominates"
    NONE = "none"


def default_grid() -> np.ndarray:
    return np.round(np.linspace(0.0, 1.0, 101), 12)


def _dominance(left: Sequence[float], right: Sequence[float]) -> DominanceRelation:
    left = np.asarray(left)
    right = np.asarray(right)
    if np.all(left > right + TOLERANCE):
        return DominanceRelation.STRICT
    if np.all(left >= right - TOLERANCE) and np.any(left > right + TOLERANCE):
        return DominanceRelation.WEAK
    return DominanceRelation.NONE


@dataclass(frozen=True)
class DominanceMatrix:
    """
    Pairwise dominance between plans, state by state over p.

    ``wellbeing[(a, b)]`` says how plan ``a`` relates to plan ``b`` in expected
    well-being; ``win_probability`` does the same for the chance of winning.
    """
    wellbeing: Dict[Tuple[Strategy, Strategy], DominanceRelation]
    win_probability: Dict[Tuple[Strategy, Strategy], DominanceRelation]

    def dominators(self, strategy: Strategy, strict: bool = True) -> Tuple[Strategy, ...]:
        wanted = {DominanceRelation.STRICT} if strict else {DominanceRelation.STRICT, DominanceRelation.WEAK}
        return tuple(other for other in PLAN_ORDER
                     if other is not strategy and self.wellbeing[(other, strategy)] in wanted)


def dominance_matrix(schedule: PayoffSchedule, grid: Optional[Iterable[float]] = None) -> DominanceMatrix:
    """
    Compare every ordered pair of plans on a grid of red proportions.

    Args:
        schedule: Payoff schedule
        grid: Values of p to check (0, 0.01, ..., 1 by default)

    Returns:
        DominanceMatrix
    """
    compositions = [UrnComposition(float(p)) for p in (default_grid() if grid is None else grid)]
    wins = {s: [win_probability(s, c) for c in compositions] for s in PLAN_ORDER}
    wellbeing = {s: [expected_wellbeing(s, c, schedule) for c in compositions] for s in PLAN_ORDER}

    by_wellbeing = {}
    by_win = {}
    for a in PLAN_ORDER:
        for b in PLAN_ORDER:
            if a is b:
                by_wellbeing[(a, b)] = DominanceRelation.NONE
                by_win[(a, b)] = DominanceRelation.NONE
                continue
            by_wellbeing[(a, b)] = _dominance(wellbeing[a], wellbeing[b])
            by_win[(a, b)] = _dominance(wins[a], wins[b])
    return DominanceMatrix(by_wellbeing, by_win)


def _count_matches(strategy: Strategy, composition: UrnComposition,
                   rng: np.random.Generator, size: int) -> int:
    first = rng.random(size) < composition.red_chance(strategy.first)
    second = rng.random(size) < composition.red_chance(strategy.second)
    return int(np.count_nonzero(first == second))


def monte_carlo(strategy: Strategy, composition: UrnComposition, n_samples: int,
                seed: Optional[int], workers: int = 1,
                batch_size: int = DEFAULT_BATCH_SIZE) -> float:
    """
    Estimate the win probability by simulation.

    Samples are cut into fixed-size batches, each drawing from its own stream
    spawned from ``seed``; the estimate depends on ``seed`` and ``batch_size``
    but not on ``workers``.

    Args:
        strategy: Drawing plan
        composition: Red proportion of the ambiguous urn
        n_samples: Number of simulated two-draw games
        seed: Master seed
        workers: Threads used to run the batches
        batch_size: Games per batch

    Returns:
        Fraction of games in which the colors matched
    """
    n_samples = int(n_samples)
    if n_samples < 1:
        raise DomainError(f"n_samples must be at least 1, got {n_samples}")
    if batch_size < 1 or workers < 1:
        raise DomainError("batch_size and workers must be at least 1")

    n_batches = -(-n_samples // batch_size)
    sizes = [batch_size] * (n_batches - 1) + [n_samples - batch_size * (n_batches - 1)]
    streams = np.random.SeedSequence(seed).spawn(n_batches)

    def run(index: int) -> int:
        return _count_matches(strategy, composition, np.random.default_rng(streams[index]), sizes[index])

    if workers == 1:
        counts: List[int] = [run(i) for i in range(n_batches)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run, range(n_batches)))

    estimate = sum(counts) / n_samples
    logger.debug(f"monte_carlo {strategy.value} p={composition.p} n={n_samples} seed={seed}: {estimate}")
    return estimate

#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Prospects under imprecise probability.

Outcomes are profiles of lifetime well-being, one entry per person. Chance
information is precise, interval-valued or vacuous, and a prospect carries a
credal set over its states. The evaluation criteria here (expected utility,
its bounds over the credal set, Hurwicz and maxmin) are the primitives every
other module builds on.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from peulab.exceptions import CredalError, DomainError
from peulab.utils.logger import get_logger

logger = get_logger(__name__)

TOLERANCE = 1e-9

# Interval width up to which uncertainty still counts as moderate.
MODERATE_WIDTH = 0.5

WellBeing = float
OutcomeProfile = Tuple[WellBeing, ...]
Utility = Callable[[OutcomeProfile], float]


class UncertaintyLevel(str, Enum):
    """Severity of the chance information attached to an event."""
    RISK = "risk"
    MODERATE = "moderate"
    SEVERE = "severe"
    MAXIMAL = "maximal"


def validate_alpha(alpha: float) -> float:
    """Return ``alpha`` as a float, raising DomainError unless it lies in [0, 1]."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"pessimism index alpha must lie in [0, 1], got {alpha}")
    return alpha


def hurwicz_mix(worst: float, best: float, alpha: float) -> float:
    """
    Mix a worst and a best case with pessimism index ``alpha``.

    Written as ``worst + (1 - alpha) * (best - worst)`` so that alpha = 1
    returns ``worst`` exactly and the result is monotone in alpha under
    floating-point rounding.
    """
    if worst == best:
        return worst
    return worst + (1.0 - alpha) * (best - worst)


@dataclass(frozen=True)
class ChanceInfo:
    """
    Probability information for a single event.

    Precise chances have ``lo == hi``; vacuous information is the interval
    [0, 1]. Use the ``precise``/``interval``/``vacuous`` constructors.
    """
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)) or not 0.0 <= lo <= hi <= 1.0:
            raise CredalError(f"incoherent chance interval [{lo}, {hi}]: need 0 <= lo <= hi <= 1")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def precise(cls, p: float) -> "ChanceInfo":
        return cls(p, p)

    @classmethod
    def interval(cls, lo: float, hi: float) -> "ChanceInfo":
        return cls(lo, hi)

    @classmethod
    def vacuous(cls) -> "ChanceInfo":
        return cls(0.0, 1.0)

    @property
    def is_precise(self) -> bool:
        return self.lo == self.hi

    @property
    def is_vacuous(self) -> bool:
        return self.lo == 0.0 and self.hi == 1.0

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def kind(self) -> str:
        if self.is_precise:
            return "precise"
        if self.is_vacuous:
            return "vacuous"
        return "interval"

    def complement(self) -> "ChanceInfo":
        """Chance information for the complementary event."""
        return ChanceInfo(1.0 - self.hi, 1.0 - self.lo)


def classify_uncertainty(chance: ChanceInfo) -> UncertaintyLevel:
    """
    Classify chance information by severity.

    Args:
        chance: Chance information for one event

    Returns:
        RISK for precise chances, MAXIMAL for vacuous ones, otherwise MODERATE
        or SEVERE depending on the interval width
    """
    if chance.is_precise:
        return UncertaintyLevel.RISK
    if chance.is_vacuous:
        return UncertaintyLevel.MAXIMAL
    if chance.width <= MODERATE_WIDTH + TOLERANCE:
        return UncertaintyLevel.MODERATE
    return UncertaintyLevel.SEVERE


class CredalSet(ABC):
    """A set of probability distributions over the states of a prospect."""

    @property
    @abstractmethod
    def size(self) -> int:
        """Number of states the distributions range over."""

    @abstractmethod
    def expectation_bounds(self, values: np.ndarray) -> Tuple[float, float]:
        """Lowest and highest expectation of ``values`` over the set."""

    @abstractmethod
    def contains(self, distribution: "PointDistribution", tol: float = TOLERANCE) -> bool:
        """Whether ``distribution`` belongs to the set."""


def _as_probabilities(probabilities: Sequence[float]) -> Tuple[float, ...]:
    probs = tuple(float(p) for p in probabilities)
    if not probs:
        raise CredalError("a distribution needs at least one state")
    if any(not math.isfinite(p) or p < -TOLERANCE for p in probs):
        raise CredalError(f"negative or non-finite probability in {probs}")
    total = math.fsum(probs)
    if abs(total - 1.0) > TOLERANCE:
        raise CredalError(f"probabilities sum to {total}, not 1")
    return probs


@dataclass(frozen=True)
class PointDistribution(CredalSet):
    """A single precise distribution."""
    probabilities: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "probabilities", _as_probabilities(self.probabilities))

    @property
    def size(self) -> int:
        return len(self.probabilities)

    def expectation(self, values: np.ndarray) -> float:
        return float(np.dot(np.asarray(self.probabilities), values))

    def expectation_bounds(self, values: np.ndarray) -> Tuple[float, float]:
        value = self.expectation(values)
        return value, value

    def contains(self, distribution: "PointDistribution", tol: float = TOLERANCE) -> bool:
        if distribution.size != self.size:
            return False
        return all(abs(a - b) <= tol for a, b in zip(self.probabilities, distribution.probabilities))


@dataclass(frozen=True)
class IntervalBounds(CredalSet):
    """
    Lower and upper probability bounds per state.

    The set is every distribution respecting the bounds. It is non-empty
    exactly when the lower bounds sum to at most 1 and the upper bounds to at
    least 1.
    """
    chances: Tuple[ChanceInfo, ...]

    def __post_init__(self):
        chances = tuple(self.chances)
        if not chances:
            raise CredalError("interval bounds need at least one state")
        lower = math.fsum(c.lo for c in chances)
        upper = math.fsum(c.hi for c in chances)
        if lower > 1.0 + TOLERANCE or upper < 1.0 - TOLERANCE:
            raise CredalError(
                f"incoherent interval bounds: lower bounds sum to {lower}, upper bounds to {upper}"
            )
        object.__setattr__(self, "chances", chances)

    @property
    def size(self) -> int:
        return len(self.chances)

    def _saturate(self, order: np.ndarray) -> np.ndarray:
        # Start from the lower bounds and hand the free mass out along ``order``.
        lower = np.array([c.lo for c in self.chances])
        upper = np.array([c.hi for c in self.chances])
        probs = lower.copy()
        remaining = max(0.0, 1.0 - math.fsum(lower))
        for idx in order:
            if remaining <= 0.0:
                break
            added = min(upper[idx] - lower[idx], remaining)
            probs[idx] += added
            remaining -= added
        return probs

    def expectation_bounds(self, values: np.ndarray) -> Tuple[float, float]:
        values = np.asarray(values, dtype=float)
        ascending = np.argsort(values, kind="stable")
        low = float(np.dot(self._saturate(ascending), values))
        high = float(np.dot(self._saturate(ascending[::-1]), values))
        return low, high

    def contains(self, distribution: "PointDistribution", tol: float = TOLERANCE) -> bool:
        if distribution.size != self.size:
            return False
        return all(c.lo - tol <= p <= c.hi + tol
                   for c, p in zip(self.chances, distribution.probabilities))


@dataclass(frozen=True)
class FiniteSet(CredalSet):
    """
    A finite list of distributions.

    Expectations are linear, so bounds over the convex hull of the members
    are attained at the members themselves.
    """
    members: Tuple[PointDistribution, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise CredalError("a finite credal set needs at least one member")
        sizes = {m.size for m in members}
        if len(sizes) != 1:
            raise CredalError(f"finite credal set members disagree on the number of states: {sorted(sizes)}")
        object.__setattr__(self, "members", members)

    @property
    def size(self) -> int:
        return self.members[0].size

    def expectation_bounds(self, values: np.ndarray) -> Tuple[float, float]:
        expectations = [m.expectation(values) for m in self.members]
        return min(expectations), max(expectations)

    def contains(self, distribution: "PointDistribution", tol: float = TOLERANCE) -> bool:
        return any(m.contains(distribution, tol) for m in self.members)


def linear_utility(person: int = 0) -> Utility:
    """Utility equal to one person's well-being."""
    def utility(profile: OutcomeProfile) -> float:
        return profile[person]
    return utility


def total_wellbeing(profile: OutcomeProfile) -> float:
    return math.fsum(profile)


@dataclass(frozen=True)
class Prospect:
    """
    States of the world, each an outcome profile, with a credal set over them.
    """
    states: Tuple[OutcomeProfile, ...]
    credal: CredalSet

    def __post_init__(self):
        states = tuple(tuple(float(w) for w in state) for state in self.states)
        if not states:
            raise CredalError("a prospect needs at least one state")
        arities = {len(state) for state in states}
        if len(arities) != 1 or 0 in arities:
            raise CredalError(f"outcome profiles must share one non-zero length, got {sorted(arities)}")
        if any(not math.isfinite(w) for state in states for w in state):
            raise CredalError("well-being values must be finite")
        if self.credal.size != len(states):
            raise CredalError(
                f"credal set covers {self.credal.size} states but the prospect has {len(states)}"
            )
        object.__setattr__(self, "states", states)

    @property
    def persons(self) -> int:
        return len(self.states[0])

    @classmethod
    def binary(cls, success: float, failure: float, chance: ChanceInfo) -> "Prospect":
        """One person who ends up at ``success`` with the given chance and at ``failure`` otherwise."""
        if chance.is_precise:
            credal = PointDistribution((chance.lo, 1.0 - chance.lo))
        else:
            credal = IntervalBounds((chance, chance.complement()))
        return cls(((success,), (failure,)), credal)

    def utilities(self, utility: Optional[Utility] = None) -> np.ndarray:
        utility = utility or linear_utility(0)
        return np.array([utility(state) for state in self.states], dtype=float)


def eu(prospect: Prospect,
       distribution: Union[PointDistribution, Sequence[float]],
       utility: Optional[Utility] = None) -> float:
    """
    Expected utility of a prospect under one distribution.

    Args:
        prospect: The prospect to evaluate
        distribution: A distribution over the prospect's states
        utility: Map from outcome profile to utility (identity on person 0 by default)

    Returns:
        Sum over states of probability times utility
    """
    if not isinstance(distribution, PointDistribution):
        distribution = PointDistribution(tuple(distribution))
    if distribution.size != len(prospect.states):
        raise CredalError(
            f"distribution has {distribution.size} entries but the prospect has {len(prospect.states)} states"
        )
    return distribution.expectation(prospect.utilities(utility))


def eu_bounds(prospect: Prospect, utility: Optional[Utility] = None) -> Tuple[float, float]:
    """Lowest and highest expected utility over the prospect's credal set."""
    return prospect.credal.expectation_bounds(prospect.utilities(utility))


def hurwicz(prospect: Prospect, alpha: float, utility: Optional[Utility] = None) -> float:
    """
    Hurwicz value with pessimism index ``alpha``.

    Args:
        prospect: The prospect to evaluate
        alpha: Weight on the worst-case expected utility; 1 is maxmin
        utility: Map from outcome profile to utility

    Returns:
        alpha * min_eu + (1 - alpha) * max_eu
    """
    alpha = validate_alpha(alpha)
    worst, best = eu_bounds(prospect, utility)
    return hurwicz_mix(worst, best, alpha)


def maxmin(prospect: Prospect, utility: Optional[Utility] = None) -> float:
    return hurwicz(prospect, 1.0, utility)

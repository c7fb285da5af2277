#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pluralist egalitarian social value of multi-person options.

The value of an option is the sum of the people's Hurwicz prospect values,
less a penalty on inequality between those prospects (ex ante) and a penalty
on the Hurwicz-aggregated expected inequality in final well-being (ex post).
Ambiguity therefore costs twice: it depresses each person's prospect value,
and an uneven spread of it shows up as ex-ante inequality.
"""

import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from peulab.core.prospects import (
    TOLERANCE,
    ChanceInfo,
    FiniteSet,
    IntervalBounds,
    OutcomeProfile,
    PointDistribution,
    Prospect,
    UncertaintyLevel,
    classify_uncertainty,
    eu_bounds,
    hurwicz_mix,
    linear_utility,
    validate_alpha,
)
from peulab.exceptions import DomainError
from peulab.utils.logger import get_logger

logger = get_logger(__name__)


class Correlation(str, Enum):
    """How per-person cure events are tied together in a joint option."""
    INDEPENDENT = "independent"
    COMONOTONE = "comonotone"
    ANTITONE = "antitone"


class Relation(str, Enum):
    LEFT_PREFERRED = "left_preferred"
    RIGHT_PREFERRED = "right_preferred"
    INDIFFERENT = "indifferent"

    def mirrored(self) -> "Relation":
        if self is Relation.LEFT_PREFERRED:
            return Relation.RIGHT_PREFERRED
        if self is Relation.RIGHT_PREFERRED:
            return Relation.LEFT_PREFERRED
        return self


@dataclass(frozen=True)
class PeuParams:
    """
    Knobs of the social value function.

    Attributes:
        alpha: Pessimism index in [0, 1]
        beta: Weight on ex-ante inequality (between prospect values)
        gamma: Weight on ex-post inequality (in final well-being)
        cost_c: Shortfall of the partial-impairment treatment below the halfway point
    """
    alpha: float = 0.8
    beta: float = 0.5
    gamma: float = 0.25
    cost_c: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", validate_alpha(self.alpha))
        for name in ("beta", "gamma", "cost_c"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(f"{name} must be a finite non-negative number, got {value}")
            object.__setattr__(self, name, value)

    def with_(self, **changes) -> "PeuParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "cost_c": self.cost_c}


@dataclass(frozen=True)
class Marginal:
    """One person's binary treatment outcome: ``success`` with ``chance``, else ``failure``."""
    success: float
    failure: float
    chance: ChanceInfo

    @classmethod
    def certain(cls, wellbeing: float) -> "Marginal":
        return cls(wellbeing, wellbeing, ChanceInfo.precise(1.0))


def mean_abs_difference(values: Sequence[float]) -> float:
    """Mean absolute difference over unordered pairs; 0 for fewer than two values."""
    pairs = list(itertools.combinations(values, 2))
    if not pairs:
        return 0.0
    return math.fsum(abs(a - b) for a, b in pairs) / len(pairs)


def _binary_credal(chance: ChanceInfo):
    if chance.is_precise:
        return PointDistribution((chance.lo, 1.0 - chance.lo))
    return IntervalBounds((chance, chance.complement()))


def _independent_joint(marginals: Sequence[Marginal]) -> Prospect:
    patterns = list(itertools.product((True, False), repeat=len(marginals)))
    states = tuple(
        tuple(m.success if cured else m.failure for m, cured in zip(marginals, pattern))
        for pattern in patterns
    )
    # Expectations are multilinear in the marginal chances, so the vertex
    # products give exact bounds over the whole product set.
    vertices = [sorted({m.chance.lo, m.chance.hi}) for m in marginals]
    members = []
    for vertex in itertools.product(*vertices):
        probs = tuple(
            math.prod(p if cured else 1.0 - p for p, cured in zip(vertex, pattern))
            for pattern in patterns
        )
        members.append(PointDistribution(probs))
    credal = members[0] if len(members) == 1 else FiniteSet(tuple(members))
    return Prospect(states, credal)


def _comonotone_joint(marginals: Sequence[Marginal]) -> Prospect:
    chance = marginals[0].chance
    if any(m.chance != chance for m in marginals[1:]):
        raise DomainError("comonotone marginals must share one chance of success")
    states = (
        tuple(m.success for m in marginals),
        tuple(m.failure for m in marginals),
    )
    return Prospect(states, _binary_credal(chance))


def _antitone_joint(marginals: Sequence[Marginal]) -> Prospect:
    if len(marginals) != 2:
        raise DomainError(f"antitone options need exactly two persons, got {len(marginals)}")
    first, second = marginals
    expected = first.chance.complement()
    if abs(second.chance.lo - expected.lo) > TOLERANCE or abs(second.chance.hi - expected.hi) > TOLERANCE:
        raise DomainError("antitone marginals: the second chance must be the complement of the first")
    states = (
        (first.success, second.failure),
        (first.failure, second.success),
    )
    return Prospect(states, _binary_credal(first.chance))


_JOINT_BUILDERS = {
    Correlation.INDEPENDENT: _independent_joint,
    Correlation.COMONOTONE: _comonotone_joint,
    Correlation.ANTITONE: _antitone_joint,
}


@dataclass(frozen=True)
class SocialOption:
    """
    A joint multi-person prospect.

    Attributes:
        name: Human-readable name
        persons: Person labels, one per entry of every outcome profile
        joint: Prospect over outcome profiles with a joint credal set
        label: Short identifier (e.g. "3")
        marginals: Per-person marginals the option was built from, if any
        correlation: Correlation used with ``marginals``
    """
    name: str
    persons: Tuple[str, ...]
    joint: Prospect
    label: str = ""
    marginals: Optional[Tuple[Marginal, ...]] = None
    correlation: Optional[Correlation] = None

    def __post_init__(self):
        persons = tuple(self.persons)
        if not persons:
            raise DomainError("an option needs at least one person")
        if self.joint.persons != len(persons):
            raise DomainError(
                f"option '{self.name}': profiles have {self.joint.persons} entries for {len(persons)} persons"
            )
        object.__setattr__(self, "persons", persons)

    @classmethod
    def from_marginals(cls, name: str, persons: Sequence[str], marginals: Sequence[Marginal],
                       correlation: Correlation = Correlation.INDEPENDENT, label: str = "") -> "SocialOption":
        """
        Assemble a joint option from per-person binary marginals.

        Args:
            name: Option name
            persons: Person labels
            marginals: One marginal per person
            correlation: How the cure events are tied together
            label: Short identifier

        Returns:
            SocialOption
        """
        marginals = tuple(marginals)
        if len(marginals) != len(persons):
            raise DomainError(f"option '{name}': {len(marginals)} marginals for {len(persons)} persons")
        correlation = Correlation(correlation)
        joint = _JOINT_BUILDERS[correlation](marginals)
        return cls(name, tuple(persons), joint, label, marginals, correlation)

    @property
    def states(self) -> Tuple[OutcomeProfile, ...]:
        return self.joint.states

    @cached_property
    def person_bounds(self) -> Tuple[Tuple[float, float], ...]:
        """(worst, best) expected well-being of each person over the joint credal set."""
        return tuple(eu_bounds(self.joint, linear_utility(i)) for i in range(len(self.persons)))

    @cached_property
    def inequality_bounds(self) -> Tuple[float, float]:
        """(lowest, highest) expected final inequality over the joint credal set."""
        return eu_bounds(self.joint, mean_abs_difference)

    @cached_property
    def uncertainty(self) -> Optional[UncertaintyLevel]:
        """Most severe uncertainty level among the marginals; None for options not built from marginals."""
        if self.marginals is None:
            return None
        levels = list(UncertaintyLevel)
        return max((classify_uncertainty(m.chance) for m in self.marginals), key=levels.index)


@dataclass(frozen=True)
class PeuBreakdown:
    """The components of one option's social value."""
    option: str
    individual_values: Tuple[float, ...]
    total: float
    ex_ante: float
    ex_post: float
    value: float


@dataclass(frozen=True)
class Verdict:
    left: str
    right: str
    relation: Relation
    margin: float

    @classmethod
    def from_margin(cls, left: str, right: str, margin: float) -> "Verdict":
        if margin > TOLERANCE:
            relation = Relation.LEFT_PREFERRED
        elif margin < -TOLERANCE:
            relation = Relation.RIGHT_PREFERRED
        else:
            relation = Relation.INDIFFERENT
        return cls(left, right, relation, margin)

    def mirrored(self) -> "Verdict":
        return Verdict(self.right, self.left, self.relation.mirrored(), -self.margin)


def individual_value(option: SocialOption, person_index: int, params: PeuParams) -> float:
    """
    Hurwicz value of one person's marginal prospect.

    Args:
        option: The option
        person_index: Index into ``option.persons``
        params: Social value parameters (only alpha is used)

    Returns:
        alpha * worst-case + (1 - alpha) * best-case expected well-being
    """
    if not 0 <= person_index < len(option.persons):
        raise DomainError(f"person index {person_index} out of range for {len(option.persons)} persons")
    worst, best = option.person_bounds[person_index]
    return hurwicz_mix(worst, best, params.alpha)


def _individual_values(option: SocialOption, params: PeuParams) -> Tuple[float, ...]:
    return tuple(individual_value(option, i, params) for i in range(len(option.persons)))


def ex_ante_inequality(option: SocialOption, params: PeuParams) -> float:
    """Mean absolute pairwise difference between the people's prospect values."""
    return mean_abs_difference(_individual_values(option, params))


def ex_post_inequality_value(option: SocialOption, params: PeuParams) -> float:
    """
    Expected final inequality, aggregated pessimistically.

    Inequality is a bad, so the pessimism index weights its highest expectation.
    """
    lowest, highest = option.inequality_bounds
    return hurwicz_mix(highest, lowest, params.alpha)


def peu_breakdown(option: SocialOption, params: PeuParams) -> PeuBreakdown:
    values = _individual_values(option, params)
    total = math.fsum(values)
    ex_ante = mean_abs_difference(values)
    ex_post = ex_post_inequality_value(option, params)
    value = total - params.beta * ex_ante - params.gamma * ex_post
    logger.debug(f"{option.name}: total={total} ex_ante={ex_ante} ex_post={ex_post} value={value}")
    return PeuBreakdown(option.name, values, total, ex_ante, ex_post, value)


def peu_value(option: SocialOption, params: PeuParams) -> float:
    """Social value: total prospect value less weighted ex-ante and ex-post inequality."""
    return peu_breakdown(option, params).value


def compare(left: SocialOption, right: SocialOption, params: PeuParams) -> Verdict:
    """
    Compare two options by social value.

    Args:
        left: First option
        right: Second option
        params: Social value parameters

    Returns:
        Verdict whose margin is value(left) - value(right)
    """
    if left.persons != right.persons:
        raise DomainError(f"cannot compare options over different persons: {left.persons} vs {right.persons}")
    margin = peu_value(left, params) - peu_value(right, params)
    return Verdict.from_margin(left.name, right.name, margin)


def rank_options(options: Iterable[SocialOption], params: PeuParams) -> List[PeuBreakdown]:
    """Options ordered from best to worst social value; ties keep their input order."""
    breakdowns = [peu_breakdown(option, params) for option in options]
    return sorted(breakdowns, key=lambda b: -b.value)

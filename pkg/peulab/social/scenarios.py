#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The eight builtin blindness treatments for Ann and Bea and the twelve
pairwise comparisons the egalitarian view is expected to deliver.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from peulab.core.prospects import ChanceInfo
from peulab.exceptions import DomainError
from peulab.social.peu import (
    Correlation,
    Marginal,
    PeuParams,
    Relation,
    SocialOption,
    Verdict,
    compare,
)
from peulab.utils.logger import get_logger

logger = get_logger(__name__)

PERSONS = ("Ann", "Bea")
BLIND = 50.0
CURED = 80.0
HALFWAY = (BLIND + CURED) / 2.0
MAX_COST = (CURED - BLIND) / 2.0

MODERATE_CHANCE = ChanceInfo.interval(0.25, 0.75)


def builtin_options(cost_c: float = 0.0) -> List[SocialOption]:
    """
    Build the eight treatments.

    Args:
        cost_c: Shortfall of treatment (4) below the halfway well-being, 0 <= c < 15

    Returns:
        The options in order (1) .. (8)
    """
    cost_c = float(cost_c)
    if not 0.0 <= cost_c < MAX_COST:
        raise DomainError(f"cost c must lie in [0, {MAX_COST}), got {cost_c}")

    precise = ChanceInfo.precise
    vacuous = ChanceInfo.vacuous()
    partial = HALFWAY - cost_c

    def option(label, name, marginals, correlation):
        return SocialOption.from_marginals(name, PERSONS, marginals, correlation, label=label)

    return [
        option("1", "inequality under certainty",
               [Marginal(CURED, BLIND, precise(1.0)), Marginal(CURED, BLIND, precise(0.0))],
               Correlation.INDEPENDENT),
        option("2", "equal risk, unequal final well-being",
               [Marginal(CURED, BLIND, precise(0.5)), Marginal(CURED, BLIND, precise(0.5))],
               Correlation.ANTITONE),
        option("3", "equality under risk",
               [Marginal(CURED, BLIND, precise(0.5)), Marginal(CURED, BLIND, precise(0.5))],
               Correlation.COMONOTONE),
        option("4", "equality under certainty",
               [Marginal.certain(partial), Marginal.certain(partial)],
               Correlation.INDEPENDENT),
        option("5", "equal uncertainty, unequal final well-being",
               [Marginal(CURED, BLIND, vacuous), Marginal(CURED, BLIND, vacuous)],
               Correlation.ANTITONE),
        option("6", "equality under uncertainty",
               [Marginal(CURED, BLIND, vacuous), Marginal(CURED, BLIND, vacuous)],
               Correlation.COMONOTONE),
        option("7", "unequal uncertainty",
               [Marginal(CURED, BLIND, vacuous), Marginal(CURED, BLIND, precise(0.5))],
               Correlation.INDEPENDENT),
        option("8", "equal moderate uncertainty",
               [Marginal(CURED, BLIND, MODERATE_CHANCE), Marginal(CURED, BLIND, MODERATE_CHANCE)],
               Correlation.INDEPENDENT),
    ]


def options_by_label(options: List[SocialOption]) -> Dict[str, SocialOption]:
    return {option.label: option for option in options}


@dataclass(frozen=True)
class ComparisonSpec:
    """
    One expected pairwise verdict.

    ``cost`` is "small" when option (4) must carry the small positive cost
    and "zero" otherwise.
    """
    label: str
    left: str
    right: str
    expected: Relation
    cost: str
    reason: str
    note: Optional[str] = None


SECTION3_COMPARISONS: Tuple[ComparisonSpec, ...] = (
    ComparisonSpec("A", "1", "2", Relation.RIGHT_PREFERRED, "zero",
                   "(2) gives each person an equal shot at being cured"),
    ComparisonSpec("B", "3", "1", Relation.LEFT_PREFERRED, "zero",
                   "(3) gives equal shots and removes all unfairness at no loss of total expected well-being"),
    ComparisonSpec("C", "3", "2", Relation.LEFT_PREFERRED, "zero",
                   "(3) removes final inequality as in B"),
    ComparisonSpec("D", "4", "1", Relation.LEFT_PREFERRED, "zero",
                   "with c = 0 inequality is removed at no loss in total well-being",
                   note="heading reads (4) versus (4); compared against (1) as the text says"),
    ComparisonSpec("E", "4", "2", Relation.LEFT_PREFERRED, "zero",
                   "as in D"),
    ComparisonSpec("F", "4", "3", Relation.INDIFFERENT, "zero",
                   "equal and equally good prospects, no inequality in either"),
    ComparisonSpec("G", "4", "1", Relation.LEFT_PREFERRED, "small",
                   "for sufficiently small c > 0, (4) eliminates inequality",
                   note="text says preferred to (3); compared against (1) as the heading says"),
    ComparisonSpec("H", "4", "3", Relation.RIGHT_PREFERRED, "small",
                   "for every c > 0, (3) offers more valuable prospects and no inequality"),
    ComparisonSpec("I", "5", "2", Relation.RIGHT_PREFERRED, "zero",
                   "uncertainty in (5) depresses each person's prospect"),
    ComparisonSpec("J", "6", "3", Relation.RIGHT_PREFERRED, "zero",
                   "uncertainty in (6) depresses each prospect and the population-level prospect"),
    ComparisonSpec("K", "7", "8", Relation.RIGHT_PREFERRED, "zero",
                   "(8) spreads its uncertainty equally over Ann and Bea"),
    ComparisonSpec("L", "5", "1", Relation.RIGHT_PREFERRED, "zero",
                   "a cost is worth paying to remove uncertainty and inequality",
                   note="heading calls (1) equality under certainty; (1) is inequality under certainty"),
)


def g_threshold(params: PeuParams) -> float:
    """
    Largest cost for which comparison G keeps its direction.

    Option (4) is worth 2 * (65 - c) and option (1) 130 - 30 * (beta + gamma),
    so (4) wins exactly when c < 15 * (beta + gamma).
    """
    return MAX_COST * (params.beta + params.gamma)


@dataclass(frozen=True)
class ComparisonRow:
    spec: ComparisonSpec
    verdict: Verdict
    cost_c: float

    @property
    def matches(self) -> bool:
        return self.verdict.relation == self.spec.expected


@dataclass(frozen=True)
class Section3Table:
    params: PeuParams
    cost_c_small: float
    cost_c_for_g: float
    rows: Tuple[ComparisonRow, ...] = field(default_factory=tuple)

    @property
    def matches(self) -> int:
        return sum(1 for row in self.rows if row.matches)

    @property
    def all_match(self) -> bool:
        return self.matches == len(self.rows)

    @property
    def mismatches(self) -> List[str]:
        return [row.spec.label for row in self.rows if not row.matches]

    @property
    def g_threshold(self) -> float:
        return g_threshold(self.params)


def section3_options(cost_c_small: float = 0.0,
                     cost_c_for_g: float = 1.0) -> Dict[str, Dict[str, SocialOption]]:
    """The builtin options by label, once per cost setting ("zero" and "small")."""
    return {
        "zero": options_by_label(builtin_options(cost_c_small)),
        "small": options_by_label(builtin_options(cost_c_for_g)),
    }


def reproduce_section3(params: PeuParams, cost_c_small: float = 0.0, cost_c_for_g: float = 1.0,
                       options: Optional[Dict[str, Dict[str, SocialOption]]] = None) -> Section3Table:
    """
    Evaluate the twelve comparisons A..L.

    Disagreements with the expected direction are reported through
    ``ComparisonRow.matches``, never raised.

    Args:
        params: Social value parameters
        cost_c_small: Cost used for (4) in comparisons that assume no cost (D, E, F)
        cost_c_for_g: Small positive cost used for (4) in comparisons G and H
        options: Prebuilt ``section3_options`` for the same costs, reused across calls

    Returns:
        Section3Table
    """
    by_cost = options or section3_options(cost_c_small, cost_c_for_g)
    rows = []
    for spec in SECTION3_COMPARISONS:
        options = by_cost[spec.cost]
        verdict = compare(options[spec.left], options[spec.right], params)
        cost = cost_c_for_g if spec.cost == "small" else cost_c_small
        rows.append(ComparisonRow(spec, verdict, cost))

    table = Section3Table(params, float(cost_c_small), float(cost_c_for_g), tuple(rows))
    logger.debug(f"Section 3 comparisons: {table.matches}/{len(rows)} match, mismatches={table.mismatches}")
    return table

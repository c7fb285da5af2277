#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Sequential version of the two-stage urn experiment.

The first urn is chosen at t, its color is observed, and the second urn is
chosen at t+1. Nothing about p is learned between the stages, so every
chance node carries only its local interval. Three agents face the tree:

- NaiveAgent scores each draw on its own and never looks ahead.
- SophisticatedAgent folds the tree back stagewise.
- GlobalPlanner ranks complete plans by their global Hurwicz value.
"""

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from peulab.core.prospects import (
    TOLERANCE,
    ChanceInfo,
    IntervalBounds,
    Prospect,
    hurwicz,
    validate_alpha,
)
from peulab.ellsberg.two_stage import (
    PLAN_ORDER,
    URN_ORDER,
    Color,
    PayoffSchedule,
    Strategy,
    UrnComposition,
    UrnKind,
    dominance_matrix,
    strategy_hurwicz,
)
from peulab.exceptions import CredalError, DomainError
from peulab.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class TerminalNode:
    payoff: float
    label: str = ""


@dataclass(frozen=True)
class ChanceNode:
    """Chance node; each branch is (event label, chance of the event, child)."""
    label: str
    branches: Tuple[Tuple[str, ChanceInfo, "Node"], ...]

    def __post_init__(self):
        branches = tuple(self.branches)
        if not branches:
            raise CredalError(f"chance node '{self.label}' has no branches")
        labels = [label for label, _, _ in branches]
        if len(set(labels)) != len(labels):
            raise CredalError(f"chance node '{self.label}' repeats an event label: {labels}")
        IntervalBounds(tuple(chance for _, chance, _ in branches))
        object.__setattr__(self, "branches", branches)

    @property
    def credal(self) -> IntervalBounds:
        return IntervalBounds(tuple(chance for _, chance, _ in self.branches))


@dataclass(frozen=True)
class DecisionNode:
    label: str
    stage: int
    choices: Tuple[Tuple[UrnKind, "Node"], ...]

    def __post_init__(self):
        choices = tuple(self.choices)
        if not choices:
            raise CredalError(f"decision node '{self.label}' offers no choice")
        object.__setattr__(self, "choices", choices)

    @property
    def options(self) -> Tuple[UrnKind, ...]:
        return tuple(urn for urn, _ in self.choices)


Node = Union[TerminalNode, ChanceNode, DecisionNode]


def _step_key(step) -> str:
    return (step.value if isinstance(step, Enum) else str(step)).lower()


def _check_stage(node: Node, stage: int) -> None:
    if not isinstance(node, DecisionNode) or node.stage != stage:
        raise CredalError(f"expected a stage-{stage} decision node, found {node!r:.80}")
    for _, chance_node in node.choices:
        if not isinstance(chance_node, ChanceNode):
            raise CredalError(f"decision '{node.label}' must lead to chance nodes")
        for _, _, child in chance_node.branches:
            if stage == 1:
                _check_stage(child, 2)
            elif not isinstance(child, TerminalNode):
                raise CredalError(f"second-stage chance node '{chance_node.label}' must end in payoffs")


@dataclass(frozen=True)
class DecisionTree:
    """
    Two-stage tree: decision, observed color, decision, match or no match.

    Attributes:
        root: First-stage decision node
        schedule: Payoffs at the terminals
        menu: Plans the tree offers, in plan order
    """
    root: DecisionNode
    schedule: PayoffSchedule
    menu: Tuple[Strategy, ...]

    def __post_init__(self):
        _check_stage(self.root, 1)

    def find(self, path: Sequence[Union[str, Enum]]) -> Node:
        """
        Follow choice and event labels from the root.

        Args:
            path: Labels such as ("ambiguous", "red", "risky", "match")

        Returns:
            The node reached
        """
        node: Node = self.root
        for step in path:
            key = _step_key(step)
            if isinstance(node, DecisionNode):
                found = [child for urn, child in node.choices if urn.value == key]
            elif isinstance(node, ChanceNode):
                found = [child for label, _, child in node.branches if label == key]
            else:
                found = []
            if not found:
                raise CredalError(f"no node at path {list(map(_step_key, path))}: '{key}' not found")
            node = found[0]
        return node

    @property
    def available_firsts(self) -> Tuple[UrnKind, ...]:
        return self.root.options

    def available_seconds(self, first: UrnKind) -> Tuple[UrnKind, ...]:
        return self.find((first, Color.RED)).options

    def second_stage(self, first: UrnKind, second: UrnKind) -> ChanceNode:
        """The match/no-match chance node reached by drawing ``first`` then ``second``."""
        return self.find((first, Color.RED, second))


def _match_node(strategy: Strategy, schedule: PayoffSchedule) -> ChanceNode:
    # The second draw matches the observed color with its urn's one-draw chance.
    chance = strategy.second.match_chance
    return ChanceNode(
        f"{strategy.value} second draw",
        (
            ("match", chance, TerminalNode(schedule.success(strategy), f"{strategy.value} win")),
            ("no match", chance.complement(), TerminalNode(schedule.w_fail, f"{strategy.value} loss")),
        ),
    )


def _as_menu(menu: Optional[Iterable[Union[str, Strategy]]]) -> Tuple[Strategy, ...]:
    if menu is None:
        return PLAN_ORDER
    try:
        wanted = {Strategy(s) for s in menu}
    except ValueError as exc:
        raise DomainError(f"unknown plan in menu: {exc}") from exc
    if not wanted:
        raise DomainError("a menu needs at least one plan")
    return tuple(s for s in PLAN_ORDER if s in wanted)


def build_two_stage_tree(schedule: Optional[PayoffSchedule] = None,
                         menu: Optional[Iterable[Union[str, Strategy]]] = None) -> DecisionTree:
    """
    Build the sequential decision tree.

    Args:
        schedule: Payoff schedule (the default schedule if None)
        menu: Plans to offer; all four if None

    Returns:
        DecisionTree
    """
    schedule = schedule or PayoffSchedule()
    plans = _as_menu(menu)

    first_choices = []
    for first in URN_ORDER:
        seconds = [s.second for s in plans if s.first is first]
        if not seconds:
            continue
        red = first.match_chance
        color_branches = []
        for color, chance in ((Color.RED, red), (Color.BLACK, red.complement())):
            choices = tuple((second, _match_node(Strategy.from_urns(first, second), schedule)) for second in seconds)
            color_branches.append(
                (color.value, chance, DecisionNode(f"t+1 after {first.value} {color.value}", 2, choices))
            )
        first_choices.append((first, ChanceNode(f"first draw from {first.value}", tuple(color_branches))))

    return DecisionTree(DecisionNode("t", 1, tuple(first_choices)), schedule, plans)


def recursive_value(tree: DecisionTree, node: Optional[Node], alpha: float) -> float:
    """
    Stagewise Hurwicz value by backward induction.

    Terminals return their payoff, decision nodes the best child, and chance
    nodes the Hurwicz value over their own local interval.

    Args:
        tree: The decision tree
        node: Node to evaluate; the root if None
        alpha: Pessimism index

    Returns:
        Value of the node
    """
    alpha = validate_alpha(alpha)
    node = tree.root if node is None else node
    if isinstance(node, TerminalNode):
        return node.payoff
    if isinstance(node, DecisionNode):
        return max(recursive_value(tree, child, alpha) for _, child in node.choices)
    if isinstance(node, ChanceNode):
        values = [recursive_value(tree, child, alpha) for _, _, child in node.branches]
        prospect = Prospect(tuple((v,) for v in values), node.credal)
        return hurwicz(prospect, alpha)
    raise CredalError(f"malformed tree: unexpected node {node!r:.80}")


def _best(scores: Dict, order: Sequence):
    """Highest-scoring key; keys within tolerance of the top go to the earliest in ``order``."""
    top = max(scores.values())
    for key in order:
        if key in scores and scores[key] >= top - TOLERANCE:
            return key
    raise DomainError("no candidate to choose from")


@dataclass(frozen=True)
class AgentPolicy(ABC):
    """
    How an agent scores urns at each stage.

    Subclasses provide ``first_scores`` and ``second_scores``; choices,
    plans and menu choices follow from them.
    """
    alpha: float
    name: ClassVar[str] = "agent"

    def __post_init__(self):
        object.__setattr__(self, "alpha", validate_alpha(self.alpha))

    @abstractmethod
    def first_scores(self, tree: DecisionTree) -> Dict[UrnKind, float]:
        """Score of each first urn at t."""

    @abstractmethod
    def second_scores(self, tree: DecisionTree, first: UrnKind) -> Dict[UrnKind, float]:
        """Score of each second urn at t+1, after ``first`` was drawn."""

    def choose_first(self, tree: DecisionTree) -> UrnKind:
        return _best(self.first_scores(tree), URN_ORDER)

    def choose_second(self, tree: DecisionTree, first: UrnKind, color: Color = Color.RED) -> UrnKind:
        # Without learning the observed color carries no information.
        return _best(self.second_scores(tree, first), URN_ORDER)

    def plan(self, tree: DecisionTree) -> Strategy:
        """The complete plan the agent's stagewise behavior realizes."""
        first = self.choose_first(tree)
        return Strategy.from_urns(first, self.choose_second(tree, first))

    def plan_values(self, tree: DecisionTree) -> Dict[Strategy, float]:
        """Value the agent assigns to each complete plan in the tree."""
        return {s: recursive_value(tree, tree.second_stage(s.first, s.second), self.alpha) for s in tree.menu}

    def ex_ante_best(self, tree: DecisionTree) -> Strategy:
        return _best(self.plan_values(tree), PLAN_ORDER)

    def menu_choice(self, tree: DecisionTree, menu: Iterable[Union[str, Strategy]]) -> Strategy:
        """Plan realized when only ``menu`` is on offer."""
        return self.plan(build_two_stage_tree(tree.schedule, menu))


@dataclass(frozen=True)
class NaiveAgent(AgentPolicy):
    """Scores each draw by itself, ignoring what comes next."""
    name: ClassVar[str] = "naive"

    def draw_score(self, urn: UrnKind) -> float:
        return hurwicz(Prospect.binary(1.0, 0.0, urn.match_chance), self.alpha)

    def first_scores(self, tree: DecisionTree) -> Dict[UrnKind, float]:
        return {urn: self.draw_score(urn) for urn in tree.available_firsts}

    def second_scores(self, tree: DecisionTree, first: UrnKind) -> Dict[UrnKind, float]:
        return {urn: self.draw_score(urn) for urn in tree.available_seconds(first)}


@dataclass(frozen=True)
class SophisticatedAgent(AgentPolicy):
    """
    Anticipates its own choice at t+1 and folds the tree back stagewise.

    A first draw with a single continuation leaves nothing to decide later,
    so that plan is valued as one compound act.
    """
    name: ClassVar[str] = "sophisticated"

    def continuation_values(self, tree: DecisionTree, first: UrnKind) -> Dict[UrnKind, float]:
        seconds = tree.available_seconds(first)
        if len(seconds) == 1:
            fused = Strategy.from_urns(first, seconds[0])
            return {seconds[0]: strategy_hurwicz(fused, self.alpha, tree.schedule)}
        return {second: recursive_value(tree, tree.second_stage(first, second), self.alpha)
                for second in seconds}

    def first_scores(self, tree: DecisionTree) -> Dict[UrnKind, float]:
        return {urn: max(self.continuation_values(tree, urn).values()) for urn in tree.available_firsts}

    def second_scores(self, tree: DecisionTree, first: UrnKind) -> Dict[UrnKind, float]:
        return self.continuation_values(tree, first)

    def plan_values(self, tree: DecisionTree) -> Dict[Strategy, float]:
        return {s: self.continuation_values(tree, s.first)[s.second] for s in tree.menu}


@dataclass(frozen=True)
class GlobalPlanner(AgentPolicy):
    """Commits at t to the plan with the best global Hurwicz value and carries it out."""
    name: ClassVar[str] = "global"

    def plan_values(self, tree: DecisionTree) -> Dict[Strategy, float]:
        return {s: strategy_hurwicz(s, self.alpha, tree.schedule) for s in tree.menu}

    def first_scores(self, tree: DecisionTree) -> Dict[UrnKind, float]:
        values = self.plan_values(tree)
        return {urn: max(v for s, v in values.items() if s.first is urn) for urn in tree.available_firsts}

    def second_scores(self, tree: DecisionTree, first: UrnKind) -> Dict[UrnKind, float]:
        return {s.second: v for s, v in self.plan_values(tree).items() if s.first is first}


AGENTS = {cls.name: cls for cls in (NaiveAgent, SophisticatedAgent, GlobalPlanner)}


def make_agent(name: str, alpha: float) -> AgentPolicy:
    try:
        return AGENTS[name](alpha)
    except KeyError:
        raise DomainError(f"unknown agent '{name}', expected one of {sorted(AGENTS)}") from None


@dataclass(frozen=True)
class TraceRecord:
    """One play of the sequential experiment."""
    agent: str
    alpha: float
    first: UrnKind
    first_color: Color
    second: UrnKind
    second_color: Color
    strategy: Strategy
    won: bool
    payoff: float
    stage_values: Tuple[float, float]
    p: float
    seed: Optional[int]

    def __post_init__(self):
        if self.strategy is not Strategy.from_urns(self.first, self.second):
            raise DomainError(f"plan {self.strategy.value} does not match draws {self.first.value}, {self.second.value}")


def _draw(rng: np.random.Generator, composition: UrnComposition, urn: UrnKind) -> Color:
    return Color.RED if rng.random() < composition.red_chance(urn) else Color.BLACK


def simulate(policy: AgentPolicy, tree: DecisionTree, composition: UrnComposition,
             seed: Optional[int]) -> TraceRecord:
    """
    Play the tree once.

    Choices come from the policy; colors are drawn from ``composition``
    with a generator seeded by ``seed``.

    Args:
        policy: The agent
        tree: The decision tree
        composition: Red proportion used to realize the draws
        seed: Seed of the color draws

    Returns:
        TraceRecord
    """
    rng = np.random.default_rng(seed)

    first_scores = policy.first_scores(tree)
    first = _best(first_scores, URN_ORDER)
    first_color = _draw(rng, composition, first)

    second_scores = policy.second_scores(tree, first)
    second = _best(second_scores, URN_ORDER)
    second_color = _draw(rng, composition, second)

    strategy = Strategy.from_urns(first, second)
    won = first_color is second_color
    payoff = tree.schedule.success(strategy) if won else tree.schedule.w_fail
    logger.debug(f"{policy.name}(alpha={policy.alpha}) drew {first.value}/{first_color.value} "
                 f"then {second.value}/{second_color.value}: {strategy.value}, payoff {payoff}")
    return TraceRecord(policy.name, policy.alpha, first, first_color, second, second_color, strategy, won,
                       payoff, (first_scores[first], second_scores[second]), composition.p, seed)


@dataclass(frozen=True)
class MenuWitness:
    """``chosen`` is picked from ``menu`` and kept in ``submenu``, yet ``sub_chosen`` is picked there."""
    menu: Tuple[Strategy, ...]
    chosen: Strategy
    submenu: Tuple[Strategy, ...]
    sub_chosen: Strategy


@dataclass(frozen=True)
class ViolationReport:
    agent: str
    alpha: float
    realized: Strategy
    dominated_choice: bool
    dominated_by: Tuple[Strategy, ...]
    dynamic_inconsistency: bool
    ex_ante_plan: Strategy
    iia_violation: bool
    iia_witness: Optional[MenuWitness] = None
    iia_witness_count: int = 0

    def __post_init__(self):
        if self.dominated_choice != bool(self.dominated_by):
            raise DomainError("dominated_choice needs a dominating plan and vice versa")
        if self.dynamic_inconsistency != (self.ex_ante_plan is not self.realized):
            raise DomainError("dynamic_inconsistency must reflect the ex-ante and realized plans")
        if self.iia_violation != (self.iia_witness is not None):
            raise DomainError("iia_violation needs a witnessing menu pair and vice versa")

    @property
    def any_flag(self) -> bool:
        return self.dominated_choice or self.dynamic_inconsistency or self.iia_violation


def all_menus(plans: Sequence[Strategy]) -> List[Tuple[Strategy, ...]]:
    """Every non-empty sub-menu, smallest first, each in plan order."""
    ordered = [s for s in PLAN_ORDER if s in set(plans)]
    return [menu for size in range(1, len(ordered) + 1) for menu in itertools.combinations(ordered, size)]


def contraction_witnesses(policy: AgentPolicy, tree: DecisionTree) -> List[MenuWitness]:
    """
    All menu pairs T within S where the choice from S stays available in T
    but is not chosen there.
    """
    menus = all_menus(tree.menu)
    chosen = {menu: policy.menu_choice(tree, menu) for menu in menus}
    witnesses = []
    for menu in reversed(menus):
        pick = chosen[menu]
        for submenu in menus:
            if len(submenu) >= len(menu) or not set(submenu) < set(menu) or pick not in submenu:
                continue
            if chosen[submenu] is not pick:
                witnesses.append(MenuWitness(menu, pick, submenu, chosen[submenu]))
    return witnesses


def detect_violations(policy: AgentPolicy, tree: DecisionTree) -> ViolationReport:
    """
    Check the agent's realized plan for the three rationality failures.

    Args:
        policy: The agent
        tree: The decision tree

    Returns:
        ViolationReport
    """
    realized = policy.plan(tree)
    dominated_by = dominance_matrix(tree.schedule).dominators(realized)
    ex_ante = policy.ex_ante_best(tree)
    witnesses = contraction_witnesses(policy, tree)
    report = ViolationReport(
        agent=policy.name,
        alpha=policy.alpha,
        realized=realized,
        dominated_choice=bool(dominated_by),
        dominated_by=dominated_by,
        dynamic_inconsistency=ex_ante is not realized,
        ex_ante_plan=ex_ante,
        iia_violation=bool(witnesses),
        iia_witness=witnesses[0] if witnesses else None,
        iia_witness_count=len(witnesses),
    )
    logger.debug(f"{policy.name}(alpha={policy.alpha}): realized {realized.value}, "
                 f"dominated_by={[s.value for s in dominated_by]}, ex_ante={ex_ante.value}, "
                 f"{len(witnesses)} contraction witnesses")
    return report


def simultaneous_choice(policy: AgentPolicy, tree: DecisionTree) -> Strategy:
    """Plan chosen when both urns are committed at t: every plan is one compound act."""
    values = {s: strategy_hurwicz(s, policy.alpha, tree.schedule) for s in tree.menu}
    return _best(values, PLAN_ORDER)


@dataclass(frozen=True)
class GapRow:
    strategy: Strategy
    recursive: float
    global_value: float

    @property
    def gap(self) -> float:
        return self.global_value - self.recursive


def rectangularity_gap(alpha: float, schedule: Optional[PayoffSchedule] = None) -> Tuple[GapRow, ...]:
    """
    Stagewise against global value of every plan.

    Args:
        alpha: Pessimism index
        schedule: Payoff schedule

    Returns:
        One GapRow per plan, in plan order
    """
    alpha = validate_alpha(alpha)
    schedule = schedule or PayoffSchedule()
    rows = []
    for strategy in PLAN_ORDER:
        plan_tree = build_two_stage_tree(schedule, (strategy,))
        rows.append(GapRow(strategy, recursive_value(plan_tree, None, alpha),
                           strategy_hurwicz(strategy, alpha, schedule)))
    return tuple(rows)

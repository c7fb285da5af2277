#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command implementations behind the ``peulab`` entry point.

Every command returns a Report. A report whose ``status`` is "mismatch"
found an expected direction that the computation does not reproduce.
"""

from typing import Dict, Iterable, List, Optional, Sequence

from peulab.analytics.reporter import Provenance, Report
from peulab.analytics.sweep import HEU_AXES, PEU_AXES, parse_grid, sweep_heu_reversal, sweep_peu_params
from peulab.data.loader import ScenarioLoader
from peulab.ellsberg.sequential import (
    AGENTS,
    build_two_stage_tree,
    detect_violations,
    make_agent,
    rectangularity_gap,
    simulate,
    simultaneous_choice,
)
from peulab.ellsberg.two_stage import (
    PLAN_ORDER,
    DominanceRelation,
    PayoffSchedule,
    Strategy,
    UrnComposition,
    dominance_matrix,
    expected_wellbeing,
    monte_carlo,
    strategy_hurwicz,
    win_bounds,
    win_probability,
)
from peulab.exceptions import DomainError
from peulab.social.peu import PeuParams, SocialOption, compare, peu_breakdown, rank_options
from peulab.social.scenarios import builtin_options, reproduce_section3
from peulab.utils.logger import get_logger

logger = get_logger(__name__)

STATUS_OK = "ok"
STATUS_MISMATCH = "mismatch"

REPEATED_NAME_NOTE = (
    "The pair the sophisticated agent passes over is read as {AR, AA}; the plan AR is named twice where "
    "one of the two plans should be AA."
)

PLAN_NUMBERING_NOTE = (
    "Plans are keyed by name and paid by the schedule {payoffs}. The numerals (I)-(IV) are not used: "
    "(II) and (IV) are both labelled 'ambiguous and ambiguous' and both paid 80, so the numbering does "
    "not identify a plan."
)


class CommandReport(Report):
    """Report with the command's outcome status."""
    status: str = STATUS_OK


def _report(title: str, command: str, parameters: Dict, seed: Optional[int] = None) -> CommandReport:
    return CommandReport(
        title=title,
        command=command,
        provenance=Provenance(command=command, parameters=parameters, seed=seed),
    )


def _value_rows(options: Sequence[SocialOption], params: PeuParams) -> List[list]:
    rows = []
    for option in options:
        b = peu_breakdown(option, params)
        level = option.uncertainty.value if option.uncertainty is not None else ""
        rows.append([option.label, option.name, level, *b.individual_values, b.total, b.ex_ante, b.ex_post, b.value])
    return rows


def _value_columns(persons: Iterable[str]) -> List[str]:
    return ["label", "option", "uncertainty", *[f"value {p}" for p in persons], "total", "ex_ante", "ex_post", "peu"]


def _schedule_parameters(schedule: PayoffSchedule) -> Dict[str, float]:
    return {f"payoff_{k.lower()}": v for k, v in schedule.as_dict().items()}


def _payoff_text(schedule: PayoffSchedule) -> str:
    paid = ", ".join(f"{s.value} {schedule.success(s)!r}" for s in (Strategy.RR, Strategy.AA, Strategy.AR, Strategy.RA))
    return f"{paid}, failure {schedule.w_fail!r}"


def reproduce_social(params: PeuParams, cost_c_small: float = 0.0, cost_c_for_g: float = 1.0) -> CommandReport:
    """Twelve-verdict table for the blindness treatments."""
    table = reproduce_section3(params, cost_c_small, cost_c_for_g)
    report = _report(
        "Egalitarian comparisons of the blindness treatments",
        "reproduce",
        {"section": 3, **params.as_dict(), "cost_c_small": cost_c_small, "cost_c_for_g": cost_c_for_g},
    )
    report.add_table(
        "comparisons",
        ["label", "left", "right", "expected", "observed", "margin", "matches", "cost_c", "reason", "note"],
        [[row.spec.label, row.spec.left, row.spec.right, row.spec.expected.value, row.verdict.relation.value,
          row.verdict.margin, row.matches, row.cost_c, row.spec.reason, row.spec.note]
         for row in table.rows],
    )

    options = builtin_options(cost_c_small)
    report.add_table("option values", _value_columns(options[0].persons), _value_rows(options, params))
    ranking = rank_options(options, params)
    report.add_table("ranking", ["rank", "option", "peu"],
                     [[i + 1, b.option, b.value] for i, b in enumerate(ranking)])

    report.notes.append(f"{table.matches}/{len(table.rows)} comparisons match their expected direction.")
    report.notes.append(f"Comparison G keeps its direction for costs c < {table.g_threshold!r}.")
    if not table.all_match:
        report.status = STATUS_MISMATCH
        report.notes.append(f"Mismatched comparisons: {', '.join(table.mismatches)}.")
    return report


def reproduce_ellsberg(alpha: float, schedule: PayoffSchedule, seed: int, p: float) -> CommandReport:
    """Urn experiment tables, agent traces and violation reports."""
    report = _report(
        "Two-stage urn experiment",
        "reproduce",
        {"section": 4, "alpha": alpha, "p": p, **_schedule_parameters(schedule)},
        seed=seed,
    )

    report.add_table("win probability bounds", ["strategy", "urns", "lowest", "highest"],
                     [[s.value, s.description, *win_bounds(s)] for s in PLAN_ORDER])

    dominance = dominance_matrix(schedule)
    for title, relations in (("dominance in expected well-being", dominance.wellbeing),
                             ("dominance in win probability", dominance.win_probability)):
        report.add_table(title, ["strategy", *[s.value for s in PLAN_ORDER]],
                         [[a.value, *[relations[(a, b)].value if a is not b else "" for b in PLAN_ORDER]]
                          for a in PLAN_ORDER])

    grid = (0.0, 0.25, 0.5, 0.75, 1.0)
    report.add_table(
        "expected well-being",
        ["strategy", *[f"p={g}" for g in grid], "hurwicz"],
        [[s.value, *[expected_wellbeing(s, UrnComposition(g), schedule) for g in grid],
          strategy_hurwicz(s, alpha, schedule)] for s in PLAN_ORDER],
    )

    report.add_table("recursive vs global", ["strategy", "recursive", "global", "gap"],
                     [[row.strategy.value, row.recursive, row.global_value, row.gap]
                      for row in rectangularity_gap(alpha, schedule)])

    tree = build_two_stage_tree(schedule)
    composition = UrnComposition(p)
    traces = []
    violations = []
    for name in ("naive", "sophisticated", "global"):
        agent = make_agent(name, alpha)
        traces.append(simulate(agent, tree, composition, seed))
        violations.append(detect_violations(agent, tree))
    report.add_table("agent traces", _trace_columns(), [_trace_row(t) for t in traces])
    report.add_table("violations", _violation_columns(), [_violation_row(v) for v in violations])

    claims = _ellsberg_claims(alpha, dominance, {t.agent: t.strategy for t in traces})
    report.add_table("claims", ["claim", "holds"], claims)
    report.notes.append(
        "AA gives the same expected well-being as RA at p = 0.5, so it dominates RA weakly, not strictly."
    )
    report.notes.append(PLAN_NUMBERING_NOTE.format(payoffs=_payoff_text(schedule)))
    report.notes.append(REPEATED_NAME_NOTE)
    report.notes.append("No learning links the stages: the second draw's match chance stays at its one-draw interval.")
    if not all(holds for _, holds in claims):
        report.status = STATUS_MISMATCH
    return report


def _ellsberg_claims(alpha: float, dominance, realized: Dict[str, Strategy]) -> List[list]:
    strict = DominanceRelation.STRICT
    claims = [
        ["AA strictly dominates RR", dominance.wellbeing[(Strategy.AA, Strategy.RR)] is strict],
        ["AA strictly dominates AR", dominance.wellbeing[(Strategy.AA, Strategy.AR)] is strict],
        ["AA weakly dominates RA", dominance.wellbeing[(Strategy.AA, Strategy.RA)] is DominanceRelation.WEAK],
        ["AR strictly dominates RR", dominance.wellbeing[(Strategy.AR, Strategy.RR)] is strict],
        ["global planner chooses AA", realized["global"] is Strategy.AA],
    ]
    if alpha > 0.5:
        claims.append(["naive agent realizes RR", realized["naive"] is Strategy.RR])
        claims.append(["sophisticated agent realizes AR", realized["sophisticated"] is Strategy.AR])
    return claims


def _trace_columns() -> List[str]:
    return ["agent", "alpha", "first", "first color", "second", "second color", "strategy", "won", "payoff",
            "value at t", "value at t+1"]


def _trace_row(trace) -> list:
    return [trace.agent, trace.alpha, trace.first.value, trace.first_color.value, trace.second.value,
            trace.second_color.value, trace.strategy.value, trace.won, trace.payoff, *trace.stage_values]


def _violation_columns() -> List[str]:
    return ["agent", "realized", "dominated_choice", "dominated_by", "dynamic_inconsistency", "ex_ante_plan",
            "iia_violation", "menu", "chosen", "submenu", "chosen from submenu", "witnesses"]


def _menu_text(menu: Sequence[Strategy]) -> str:
    return "{" + ", ".join(s.value for s in menu) + "}"


def _violation_row(report) -> list:
    witness = report.iia_witness
    return [
        report.agent, report.realized.value, report.dominated_choice,
        " ".join(s.value for s in report.dominated_by), report.dynamic_inconsistency, report.ex_ante_plan.value,
        report.iia_violation,
        _menu_text(witness.menu) if witness else None,
        witness.chosen.value if witness else None,
        _menu_text(witness.submenu) if witness else None,
        witness.sub_chosen.value if witness else None,
        report.iia_witness_count,
    ]


def cmd_reproduce(section: int, params: PeuParams, cost_c_small: float = 0.0, cost_c_for_g: float = 1.0,
                  schedule: Optional[PayoffSchedule] = None, seed: int = 42, p: float = 0.3) -> CommandReport:
    """
    Reproduce the reference tables of one section.

    Args:
        section: 3 for the blindness treatments, 4 for the urn experiment
        params: Social value parameters (section 4 uses only alpha)
        cost_c_small: Cost of treatment (4) in comparisons without cost
        cost_c_for_g: Small positive cost of treatment (4) in comparisons G and H
        schedule: Urn experiment payoffs
        seed: Seed of the simulated draws
        p: Red proportion used to realize the draws

    Returns:
        CommandReport
    """
    logger.info(f"Reproducing section {section}")
    if section == 3:
        return reproduce_social(params, cost_c_small, cost_c_for_g)
    if section == 4:
        return reproduce_ellsberg(params.alpha, schedule or PayoffSchedule(), seed, p)
    raise DomainError(f"unknown section {section}, expected 3 or 4")


def cmd_sweep(kind: str, grid_spec: Optional[str], cost_c_small: float = 0.0, cost_c_for_g: float = 1.0,
              workers: int = 1) -> CommandReport:
    """
    Run a parameter sweep.

    Args:
        kind: "peu-params" or "heu-reversal"
        grid_spec: Grid spec as accepted by ``parse_grid``
        cost_c_small: Cost for comparisons without cost (peu-params)
        cost_c_for_g: Cost for comparisons G and H (peu-params)
        workers: Threads for the grid

    Returns:
        CommandReport
    """
    kind = kind.replace("_", "-")
    logger.info(f"Running {kind} sweep")
    if kind == "peu-params":
        grid = parse_grid(grid_spec, PEU_AXES)
        region = sweep_peu_params(grid, cost_c_small, cost_c_for_g, workers)
        report = _report("Parameter region keeping all twelve comparisons", "sweep",
                         {"kind": kind, "grid": grid_spec or "", "cost_c_small": cost_c_small,
                          "cost_c_for_g": cost_c_for_g})
        bounds = region.bounds()
        report.add_table("summary", ["grid points", "region points", "contains (0.8, 0.5, 0.25)",
                                     "alpha range", "beta range", "gamma range"],
                         [[len(region.points), len(region.region), region.contains(0.8, 0.5, 0.25),
                           *[repr(list(bounds[n])) if bounds else None for n in ("alpha", "beta", "gamma")]]])
        report.add_table("failures by comparison", ["comparison", "grid points failing"],
                         [[label, count] for label, count in region.failure_counts().items()])
        report.add_table("region", ["alpha", "beta", "gamma"],
                         [[pt.alpha, pt.beta, pt.gamma] for pt in region.region])
        return report

    if kind == "heu-reversal":
        grid = parse_grid(grid_spec, HEU_AXES)
        result = sweep_heu_reversal(grid, workers)
        report = _report("Ambiguous bet preferred over risky bet", "sweep",
                         {"kind": kind, "grid": grid_spec or ""})
        report.add_table("per alpha", ["alpha", "grid points", "reversals", "largest q reversing"],
                         [[s.alpha, s.points, s.reversals, s.max_q] for s in result.per_alpha()])
        report.add_table("reversals", ["alpha", "q", "delta", "risky", "ambiguous"],
                         [[pt.alpha, pt.q, pt.delta, pt.risky, pt.ambiguous] for pt in result.reversals])
        report.notes.append("The ambiguous chance is [q - delta, q + delta] clipped to [0, 1].")
        return report

    raise DomainError(f"unknown sweep kind '{kind}', expected peu-params or heu-reversal")


def cmd_evaluate(scenario_path: str, defaults: PeuParams, overrides: Optional[Dict[str, float]] = None) -> CommandReport:
    """
    Evaluate every option of a scenario file.

    Parameters come from ``defaults``, then the file, then ``overrides``.
    A payoff schedule in the file is validated and reported with the values.
    """
    loader = ScenarioLoader()
    scenario = loader.load(scenario_path)
    options = loader.to_options(scenario)
    params = loader.params(scenario, defaults)
    if overrides:
        params = params.with_(**overrides)

    parameters = {"scenario": str(scenario_path), **params.as_dict()}
    schedule = loader.payoffs(scenario) if scenario.payoffs is not None else None
    if schedule is not None:
        parameters.update(_schedule_parameters(schedule))
    report = _report("Scenario evaluation", "evaluate", parameters)
    if schedule is not None:
        report.add_table("payoff schedule", ["outcome", "well-being"], [[k, v] for k, v in schedule.as_dict().items()])
    report.add_table("option values", _value_columns(scenario.persons), _value_rows(options, params))
    verdicts = []
    for i, left in enumerate(options):
        for right in options[i + 1:]:
            verdict = compare(left, right, params)
            verdicts.append([left.label or left.name, right.label or right.name, verdict.relation.value,
                             verdict.margin])
    report.add_table("pairwise verdicts", ["left", "right", "relation", "margin"], verdicts)
    report.add_table("ranking", ["rank", "option", "peu"],
                     [[i + 1, b.option, b.value] for i, b in enumerate(rank_options(options, params))])
    return report


def cmd_ellsberg(p: float, samples: int, seed: int, schedule: Optional[PayoffSchedule] = None, workers: int = 1,
                 batch_size: int = 65_536) -> CommandReport:
    """
    Exact win probabilities against Monte Carlo estimates.

    All four plans share the master seed.
    """
    composition = UrnComposition(p)
    schedule = schedule or PayoffSchedule()
    report = _report("Win probabilities at a fixed composition", "ellsberg",
                     {"p": composition.p, "samples": samples, "batch_size": batch_size,
                      **_schedule_parameters(schedule)}, seed=seed)
    rows = []
    for strategy in PLAN_ORDER:
        exact = win_probability(strategy, composition)
        estimate = monte_carlo(strategy, composition, samples, seed, workers=workers, batch_size=batch_size)
        rows.append([strategy.value, exact, estimate, abs(estimate - exact),
                     expected_wellbeing(strategy, composition, schedule)])
    report.add_table("win probabilities", ["strategy", "exact", "estimate", "abs error", "expected well-being"], rows)
    return report


def cmd_sequential(agent: str, alpha: float, seed: int, p: float = 0.3,
                   schedule: Optional[PayoffSchedule] = None) -> CommandReport:
    """One agent on the sequential tree: its trace, violations and simultaneous choice."""
    if agent not in AGENTS:
        raise DomainError(f"unknown agent '{agent}', expected one of {sorted(AGENTS)}")
    schedule = schedule or PayoffSchedule()
    policy = make_agent(agent, alpha)
    tree = build_two_stage_tree(schedule)
    trace = simulate(policy, tree, UrnComposition(p), seed)
    violations = detect_violations(policy, tree)

    report = _report(f"Sequential choice of the {agent} agent", "sequential",
                     {"agent": agent, "alpha": policy.alpha, "p": p, **_schedule_parameters(schedule)}, seed=seed)
    report.add_table("trace", _trace_columns(), [_trace_row(trace)])
    plan_values = policy.plan_values(tree)
    report.add_table("plan values", ["strategy", "agent value", "global hurwicz"],
                     [[s.value, plan_values[s], strategy_hurwicz(s, policy.alpha, schedule)] for s in tree.menu])
    report.add_table("violations", _violation_columns(), [_violation_row(violations)])
    report.add_table("simultaneous setting", ["agent", "choice"],
                     [[agent, simultaneous_choice(policy, tree).value]])
    if agent == "sophisticated":
        report.notes.append(REPEATED_NAME_NOTE)
    return report


def cmd_export(cost_c: float, path: str, params: Optional[PeuParams] = None,
               schedule: Optional[PayoffSchedule] = None) -> CommandReport:
    """Write the builtin treatments as a version-1 scenario file, with the payoff schedule if given."""
    options = builtin_options(cost_c)
    scenario = ScenarioLoader().export(options, path, params, schedule)
    parameters = {"cost_c": cost_c, "path": str(path)}
    if schedule is not None:
        parameters.update(_schedule_parameters(schedule))
    report = _report("Builtin treatments exported", "export", parameters)
    report.add_table("exported options", ["label", "option", "correlation"],
                     [[o.label, o.name, o.correlation.value] for o in scenario.options])
    return report

#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
peulab: egalitarian social value and sequential choice under imprecise probability.
Main application entry point.

Exit codes: 0 success, 1 an expected direction is not reproduced,
2 invalid scenario or grid input, 3 numeric argument out of domain.
"""

import argparse
import sys
from dataclasses import replace

from peulab import __version__
from peulab.analytics.reporter import FORMATS, write_report
from peulab.commands import (
    STATUS_MISMATCH,
    cmd_ellsberg,
    cmd_evaluate,
    cmd_export,
    cmd_reproduce,
    cmd_sequential,
    cmd_sweep,
)
from peulab.data.loader import ScenarioLoader
from peulab.ellsberg.two_stage import PayoffSchedule
from peulab.exceptions import CredalError, DomainError, ScenarioError
from peulab.social.peu import PeuParams
from peulab.utils.config import load_config
from peulab.utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_SCENARIO = 2
EXIT_DOMAIN = 3


def parse_args(argv=None):
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default="config.yml", help="Path to configuration file")
    common.add_argument("--format", choices=FORMATS, default=None, help="Report format (default from config: md)")
    common.add_argument("--output", type=str, default=None, help="Write the report here instead of stdout")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")
    common.add_argument("--workers", type=int, default=None, help="Worker threads for sweeps and simulations")

    parser = argparse.ArgumentParser(prog="peulab", description="peulab - egalitarian value under imprecise probability")
    parser.add_argument("--version", action="version", version=f"peulab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    reproduce = sub.add_parser("reproduce", parents=[common], help="Reproduce the reference comparison tables")
    reproduce.add_argument("--section", type=int, choices=(3, 4), required=True)
    _add_peu_flags(reproduce)
    reproduce.add_argument("--cost-c", type=float, default=None, help="Cost of treatment (4) in D, E and F")
    reproduce.add_argument("--cost-c-for-g", type=float, default=None, help="Cost of treatment (4) in G and H")
    reproduce.add_argument("--seed", type=int, default=None)
    reproduce.add_argument("--p", type=float, default=None, help="Red proportion used to realize draws")
    reproduce.add_argument("--w-fail", type=float, default=None)
    reproduce.add_argument("--scenario", type=str, default=None, help="Scenario file whose payoff schedule is used")

    sweep = sub.add_parser("sweep", parents=[common], help="Sweep parameters over a grid")
    sweep.add_argument("--kind", choices=("peu-params", "heu-reversal", "peu_params", "heu_reversal"), required=True)
    sweep.add_argument("--grid", type=str, default=None, help="e.g. alpha=0:1:0.05,beta=0:1:0.05")

    evaluate = sub.add_parser("evaluate", parents=[common], help="Evaluate the options of a scenario file")
    evaluate.add_argument("--scenario", type=str, required=True)
    _add_peu_flags(evaluate)

    ellsberg = sub.add_parser("ellsberg", parents=[common], help="Exact and simulated win probabilities")
    ellsberg.add_argument("--p", type=float, default=None)
    ellsberg.add_argument("--samples", type=int, default=None)
    ellsberg.add_argument("--seed", type=int, default=None)
    ellsberg.add_argument("--batch-size", type=int, default=None)
    ellsberg.add_argument("--w-fail", type=float, default=None)
    ellsberg.add_argument("--scenario", type=str, default=None, help="Scenario file whose payoff schedule is used")

    sequential = sub.add_parser("sequential", parents=[common], help="Run one agent on the sequential tree")
    sequential.add_argument("--agent", choices=("naive", "sophisticated", "global"), required=True)
    sequential.add_argument("--alpha", type=float, default=None)
    sequential.add_argument("--seed", type=int, default=None)
    sequential.add_argument("--p", type=float, default=None)
    sequential.add_argument("--w-fail", type=float, default=None)
    sequential.add_argument("--scenario", type=str, default=None, help="Scenario file whose payoff schedule is used")

    export = sub.add_parser("export", parents=[common], help="Export the builtin treatments as a scenario file")
    export.add_argument("--cost-c", type=float, default=None)
    export.add_argument("--path", type=str, default="scenario.json")
    export.add_argument("--w-fail", type=float, default=None, help="Failure well-being written to the file")

    return parser.parse_args(argv)


def _add_peu_flags(parser):
    parser.add_argument("--alpha", type=float, default=None, help="Pessimism index")
    parser.add_argument("--beta", type=float, default=None, help="Weight on ex-ante inequality")
    parser.add_argument("--gamma", type=float, default=None, help="Weight on ex-post inequality")


def _pick(flag, default):
    return default if flag is None else flag


def _overrides(args):
    return {name: getattr(args, name) for name in ("alpha", "beta", "gamma") if getattr(args, name, None) is not None}


def _schedule(args, settings):
    """Payoff schedule from the config, then the scenario file, then ``--w-fail``."""
    schedule = PayoffSchedule(w_fail=settings.ellsberg.w_fail)
    scenario_path = getattr(args, "scenario", None)
    if scenario_path and args.command != "evaluate":
        loader = ScenarioLoader()
        schedule = loader.payoffs(loader.load(scenario_path), schedule)
    if getattr(args, "w_fail", None) is not None:
        schedule = replace(schedule, w_fail=args.w_fail)
    return schedule


def run(args, settings):
    """Dispatch a parsed command and return its report."""
    peu = settings.peu
    defaults = PeuParams(peu.alpha, peu.beta, peu.gamma)
    workers = _pick(args.workers, settings.workers)
    schedule = _schedule(args, settings)

    if args.command == "reproduce":
        return cmd_reproduce(
            args.section,
            defaults.with_(**_overrides(args)),
            cost_c_small=_pick(args.cost_c, peu.cost_c_small),
            cost_c_for_g=_pick(args.cost_c_for_g, peu.cost_c_for_g),
            schedule=schedule,
            seed=_pick(args.seed, settings.seed),
            p=_pick(args.p, settings.ellsberg.p),
        )
    if args.command == "sweep":
        return cmd_sweep(args.kind, args.grid, peu.cost_c_small, peu.cost_c_for_g, workers=workers)
    if args.command == "evaluate":
        return cmd_evaluate(args.scenario, defaults, _overrides(args))
    if args.command == "ellsberg":
        return cmd_ellsberg(
            _pick(args.p, settings.ellsberg.p),
            _pick(args.samples, settings.ellsberg.samples),
            _pick(args.seed, settings.seed),
            schedule=schedule,
            workers=workers,
            batch_size=_pick(args.batch_size, settings.ellsberg.batch_size),
        )
    if args.command == "sequential":
        return cmd_sequential(
            args.agent,
            _pick(args.alpha, peu.alpha),
            _pick(args.seed, settings.seed),
            p=_pick(args.p, settings.ellsberg.p),
            schedule=schedule,
        )
    if args.command == "export":
        return cmd_export(_pick(args.cost_c, peu.cost_c_small), args.path, defaults, schedule)
    raise DomainError(f"unknown command '{args.command}'")


def main(argv=None):
    """Main entry point for the application."""
    args = parse_args(argv)

    # Setup logging
    log_level = "DEBUG" if args.debug else "INFO"
    setup_logging(log_level)

    try:
        # Load configuration
        settings = load_config(args.config)
        if settings.log_dir or (not args.debug and settings.log_level.upper() != "INFO"):
            setup_logging(log_level if args.debug else settings.log_level, settings.log_dir)

        report = run(args, settings)
        write_report(report, _pick(args.format, settings.output_format), args.output)
    except ScenarioError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_SCENARIO
    except (DomainError, CredalError) as e:
        logger.error(f"Argument out of domain: {e}")
        return EXIT_DOMAIN

    if report.status == STATUS_MISMATCH:
        logger.warning("Some expected directions were not reproduced")
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

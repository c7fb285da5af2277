#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Parameter sweeps.

Two sweeps are available:

- ``peu_params`` walks a grid of (alpha, beta, gamma) and marks where all
  twelve section-3 comparisons keep their expected direction.
- ``heu_reversal`` walks a grid of (alpha, q, delta) and marks where a bet
  with ambiguous chance [q - delta, q + delta] beats a risky bet with
  chance q under the Hurwicz criterion.

Grid points may be split across worker threads. Chunks are contiguous and
joined back in order, so results do not depend on the thread count.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from peulab.core.prospects import TOLERANCE, ChanceInfo, Prospect, hurwicz
from peulab.exceptions import ScenarioError
from peulab.social.peu import PeuParams
from peulab.social.scenarios import reproduce_section3, section3_options
from peulab.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GridAxis:
    """
    Values ``start, start + step, start + 2 * step, ...`` up to ``stop``.

    ``stop`` itself is included only when the step reaches it.
    """
    name: str
    start: float
    stop: float
    step: float

    def values(self) -> Tuple[float, ...]:
        if self.step <= 0 and self.stop != self.start:
            raise ScenarioError(f"grid axis '{self.name}': step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ScenarioError(f"grid axis '{self.name}' is empty: {self.start} > {self.stop}")
        if self.stop == self.start:
            return (float(self.start),)
        count = int(np.floor((self.stop - self.start) / self.step + TOLERANCE)) + 1
        return tuple(float(v) for v in np.round(self.start + self.step * np.arange(count), 10))


PEU_AXES = {
    "alpha": GridAxis("alpha", 0.0, 1.0, 0.05),
    "beta": GridAxis("beta", 0.0, 1.0, 0.05),
    "gamma": GridAxis("gamma", 0.0, 1.0, 0.05),
}

HEU_AXES = {
    "alpha": GridAxis("alpha", 0.0, 1.0, 0.1),
    "q": GridAxis("q", 0.05, 0.5, 0.05),
    "delta": GridAxis("delta", 0.0, 0.2, 0.05),
}


def parse_grid(spec: Optional[str], defaults: Dict[str, GridAxis]) -> Dict[str, Tuple[float, ...]]:
    """
    Parse a grid spec such as ``"alpha=0:1:0.05,beta=0.5"``.

    Each entry is ``name=start:stop:step`` or ``name=value``. Axes left out
    keep their defaults.

    Args:
        spec: Grid spec; None or blank keeps every default
        defaults: Known axes with their default ranges

    Returns:
        Axis name to its values, in the order of ``defaults``
    """
    axes = dict(defaults)
    for entry in filter(None, (part.strip() for part in (spec or "").split(","))):
        name, sep, rng = entry.partition("=")
        name = name.strip()
        if not sep or name not in defaults:
            raise ScenarioError(f"bad grid entry '{entry}': expected one of {list(defaults)} as name=start:stop:step")
        try:
            bounds = [float(x) for x in rng.split(":")]
        except ValueError:
            raise ScenarioError(f"bad grid entry '{entry}': bounds must be numbers") from None
        if len(bounds) == 1:
            bounds = [bounds[0], bounds[0], 1.0]
        if len(bounds) != 3:
            raise ScenarioError(f"bad grid entry '{entry}': expected start:stop:step")
        axes[name] = GridAxis(name, *bounds)

    grid = {name: axis.values() for name, axis in axes.items()}
    if not all(grid.values()):
        raise ScenarioError("empty grid")
    return grid


def _run_chunked(points: Sequence, evaluate: Callable, workers: int) -> List:
    if workers <= 1 or len(points) < 2:
        return [evaluate(point) for point in points]
    chunks = [list(chunk) for chunk in np.array_split(np.arange(len(points)), workers) if len(chunk)]
    logger.debug(f"Splitting {len(points)} grid points into {len(chunks)} chunks")

    def run(indices):
        return [evaluate(points[i]) for i in indices]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return [result for part in pool.map(run, chunks) for result in part]


@dataclass(frozen=True)
class RegionPoint:
    alpha: float
    beta: float
    gamma: float
    matches: int
    mismatches: Tuple[str, ...]

    @property
    def holds(self) -> bool:
        return not self.mismatches


@dataclass(frozen=True)
class ParamRegion:
    """Sweep result: every grid point with its section-3 outcome."""
    points: Tuple[RegionPoint, ...]
    cost_c_small: float
    cost_c_for_g: float

    @property
    def region(self) -> Tuple[RegionPoint, ...]:
        return tuple(p for p in self.points if p.holds)

    def contains(self, alpha: float, beta: float, gamma: float) -> bool:
        return any(abs(p.alpha - alpha) <= TOLERANCE and abs(p.beta - beta) <= TOLERANCE
                   and abs(p.gamma - gamma) <= TOLERANCE for p in self.region)

    def bounds(self) -> Dict[str, Tuple[float, float]]:
        """Smallest and largest value of each parameter inside the region."""
        region = self.region
        if not region:
            return {}
        return {name: (min(getattr(p, name) for p in region), max(getattr(p, name) for p in region))
                for name in ("alpha", "beta", "gamma")}

    def failure_counts(self) -> Dict[str, int]:
        """How often each comparison label fails over the grid."""
        counts: Dict[str, int] = {}
        for point in self.points:
            for label in point.mismatches:
                counts[label] = counts.get(label, 0) + 1
        return dict(sorted(counts.items()))


def sweep_peu_params(grid: Dict[str, Tuple[float, ...]], cost_c_small: float = 0.0,
                     cost_c_for_g: float = 1.0, workers: int = 1) -> ParamRegion:
    """
    Find where all twelve section-3 comparisons hold.

    Args:
        grid: Values for "alpha", "beta" and "gamma"
        cost_c_small: Cost for comparisons without cost
        cost_c_for_g: Small positive cost for comparisons G and H
        workers: Threads to spread the grid over

    Returns:
        ParamRegion
    """
    options = section3_options(cost_c_small, cost_c_for_g)
    # Fill the cached bounds before threads share the options.
    for by_label in options.values():
        for option in by_label.values():
            _ = (option.person_bounds, option.inequality_bounds)

    def evaluate(point):
        alpha, beta, gamma = point
        table = reproduce_section3(PeuParams(alpha, beta, gamma), cost_c_small, cost_c_for_g, options=options)
        return RegionPoint(alpha, beta, gamma, table.matches, tuple(table.mismatches))

    points = list(itertools.product(grid["alpha"], grid["beta"], grid["gamma"]))
    result = ParamRegion(tuple(_run_chunked(points, evaluate, workers)), float(cost_c_small), float(cost_c_for_g))
    logger.info(f"peu_params sweep: {len(result.region)} of {len(points)} grid points keep all twelve verdicts")
    return result


def heu_bet_values(alpha: float, q: float, delta: float) -> Tuple[float, float]:
    """
    Hurwicz values of a unit bet with known chance ``q`` and of one with
    chance anywhere in [q - delta, q + delta] clipped to [0, 1].
    """
    risky = hurwicz(Prospect.binary(1.0, 0.0, ChanceInfo.precise(q)), alpha)
    chance = ChanceInfo.interval(max(0.0, q - delta), min(1.0, q + delta))
    ambiguous = hurwicz(Prospect.binary(1.0, 0.0, chance), alpha)
    return risky, ambiguous


@dataclass(frozen=True)
class ReversalPoint:
    alpha: float
    q: float
    delta: float
    risky: float
    ambiguous: float

    @property
    def reversal(self) -> bool:
        return self.ambiguous > self.risky + TOLERANCE


@dataclass(frozen=True)
class AlphaSummary:
    alpha: float
    points: int
    reversals: int
    max_q: Optional[float]


@dataclass(frozen=True)
class ReversalSweep:
    points: Tuple[ReversalPoint, ...]

    @property
    def reversals(self) -> Tuple[ReversalPoint, ...]:
        return tuple(p for p in self.points if p.reversal)

    def per_alpha(self) -> List[AlphaSummary]:
        """Per pessimism index: how many points reverse and the largest q that still does."""
        summary = []
        for alpha in sorted({p.alpha for p in self.points}):
            rows = [p for p in self.points if p.alpha == alpha]
            flipped = [p.q for p in rows if p.reversal]
            summary.append(AlphaSummary(alpha, len(rows), len(flipped), max(flipped) if flipped else None))
        return summary


def sweep_heu_reversal(grid: Dict[str, Tuple[float, ...]], workers: int = 1) -> ReversalSweep:
    """
    Map where the ambiguous bet beats the risky one.

    Args:
        grid: Values for "alpha", "q" and "delta"
        workers: Threads to spread the grid over

    Returns:
        ReversalSweep
    """
    for q in grid["q"]:
        if not 0.0 <= q <= 1.0:
            raise ScenarioError(f"winning chance q must lie in [0, 1], got {q}")
    if any(d < 0.0 for d in grid["delta"]):
        raise ScenarioError("ambiguity half-width delta must be non-negative")

    def evaluate(point):
        alpha, q, delta = point
        return ReversalPoint(alpha, q, delta, *heu_bet_values(alpha, q, delta))

    points = list(itertools.product(grid["alpha"], grid["q"], grid["delta"]))
    result = ReversalSweep(tuple(_run_chunked(points, evaluate, workers)))
    logger.info(f"heu_reversal sweep: {len(result.reversals)} of {len(points)} grid points reverse")
    return result

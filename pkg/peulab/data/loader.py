#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
peulab 情境加載模組。
負責讀取、驗證和匯出情境文件，並轉換為社會選項。
"""

import json
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import ValidationError

from peulab.core.prospects import IntervalBounds, PointDistribution, Prospect
from peulab.data.schemas import (
    ChanceSpec,
    CorrelationTag,
    MarginalSpec,
    OptionSpec,
    ParamsSpec,
    PayoffSpec,
    ScenarioFile,
)
from peulab.ellsberg.two_stage import PayoffSchedule
from peulab.exceptions import CredalError, DomainError, ScenarioError
from peulab.social.peu import Correlation, Marginal, PeuParams, SocialOption
from peulab.utils.logger import get_logger

logger = get_logger(__name__)


def format_location(loc: Sequence[Union[str, int]]) -> str:
    """
    將 pydantic 錯誤位置轉為路徑字串。

    Args:
        loc: 例如 ("options", 0, "marginals", 1, "chance")

    Returns:
        例如 "options[0].marginals[1].chance"
    """
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path or "<root>"


def _validation_message(error: ValidationError) -> str:
    return "; ".join(f"{format_location(e['loc'])}: {e['msg']}" for e in error.errors())


class ScenarioLoader:
    """情境文件加載類。"""

    def load(self, file_path: Union[str, Path]) -> ScenarioFile:
        """
        加載並驗證情境文件。

        Args:
            file_path: JSON 情境文件路徑

        Returns:
            驗證後的 ScenarioFile
        """
        file_path = Path(file_path)
        if not file_path.exists():
            logger.error(f"情境文件不存在: {file_path}")
            raise ScenarioError(f"scenario file not found: {file_path}")

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                raw = json.load(f)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            logger.error(f"讀取情境文件 {file_path} 時出錯: {e}")
            raise ScenarioError(f"{file_path}: not a valid JSON document: {e}") from e

        return self.parse(raw, source=str(file_path))

    def parse(self, raw: object, source: str = "<scenario>") -> ScenarioFile:
        """驗證已解析的 JSON 數據。"""
        try:
            scenario = ScenarioFile.model_validate(raw)
        except ValidationError as e:
            message = _validation_message(e)
            logger.error(f"情境文件 {source} 驗證失敗: {message}")
            raise ScenarioError(f"{source}: {message}") from e
        logger.debug(f"已加載情境 {source}: {len(scenario.options)} 個選項")
        return scenario

    def to_options(self, scenario: ScenarioFile) -> List[SocialOption]:
        """
        將情境轉換為社會選項。

        Args:
            scenario: 情境文件

        Returns:
            SocialOption 列表
        """
        options = []
        for index, spec in enumerate(scenario.options):
            try:
                options.append(self._build_option(spec, scenario.persons))
            except (CredalError, DomainError) as e:
                raise ScenarioError(f"options[{index}] ('{spec.name}'): {e}") from e
        return options

    @staticmethod
    def _build_option(spec: OptionSpec, persons: List[str]) -> SocialOption:
        if spec.marginals is not None:
            marginals = [Marginal(m.success, m.failure, m.chance.to_chance()) for m in spec.marginals]
            return SocialOption.from_marginals(spec.name, persons, marginals,
                                               Correlation(spec.correlation.value), label=spec.label)

        chances = [c.to_chance() for c in spec.chances]
        if all(c.is_precise for c in chances):
            credal = PointDistribution(tuple(c.lo for c in chances))
        else:
            credal = IntervalBounds(tuple(chances))
        joint = Prospect(tuple(tuple(state) for state in spec.states), credal)
        return SocialOption(spec.name, tuple(persons), joint, spec.label)

    @staticmethod
    def params(scenario: ScenarioFile, defaults: PeuParams) -> PeuParams:
        """情境中的參數覆蓋默認值。"""
        if scenario.params is None:
            return defaults
        # 只覆蓋文件中明確給出的參數
        return defaults.with_(**scenario.params.model_dump(exclude_unset=True))

    @staticmethod
    def payoffs(scenario: ScenarioFile, defaults: Optional[PayoffSchedule] = None) -> PayoffSchedule:
        """
        情境中的收益表覆蓋默認收益表。

        Args:
            scenario: 情境文件
            defaults: 默認收益表；None 時使用標準收益表

        Returns:
            PayoffSchedule
        """
        schedule = defaults or PayoffSchedule()
        if scenario.payoffs is None:
            return schedule
        try:
            return replace(schedule, **scenario.payoffs.model_dump(exclude_unset=True))
        except DomainError as e:
            raise ScenarioError(f"payoffs: {e}") from e

    def export(self, options: Sequence[SocialOption], file_path: Union[str, Path],
               params: Optional[PeuParams] = None, schedule: Optional[PayoffSchedule] = None) -> ScenarioFile:
        """
        將社會選項匯出為情境文件。

        Args:
            options: 由 marginals 建立的社會選項
            file_path: 輸出路徑
            params: 一併寫入的參數
            schedule: 一併寫入的收益表

        Returns:
            寫入的 ScenarioFile
        """
        scenario = self.build_scenario(options, params, schedule)
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(scenario.model_dump_json(indent=2, exclude_none=True))
            f.write("\n")
        logger.info(f"情境已匯出: {file_path}")
        return scenario

    @staticmethod
    def build_scenario(options: Sequence[SocialOption], params: Optional[PeuParams] = None,
                       schedule: Optional[PayoffSchedule] = None) -> ScenarioFile:
        if not options:
            raise ScenarioError("nothing to export")
        persons = list(options[0].persons)
        specs = []
        for option in options:
            if option.marginals is None or option.correlation is None:
                raise ScenarioError(f"option '{option.name}' was not built from marginals and cannot be exported")
            if list(option.persons) != persons:
                raise ScenarioError(f"option '{option.name}' has persons {option.persons}, expected {persons}")
            specs.append(OptionSpec(
                name=option.name,
                label=option.label,
                correlation=CorrelationTag(option.correlation.value),
                marginals=[MarginalSpec(success=m.success, failure=m.failure, chance=ChanceSpec.from_chance(m.chance))
                           for m in option.marginals],
            ))
        params_spec = None
        if params is not None:
            params_spec = ParamsSpec(alpha=params.alpha, beta=params.beta, gamma=params.gamma)
        payoff_spec = None
        if schedule is not None:
            payoff_spec = PayoffSpec(rr=schedule.rr, aa=schedule.aa, ar=schedule.ar, ra=schedule.ra,
                                     w_fail=schedule.w_fail)
        return ScenarioFile(version=1, persons=persons, options=specs, params=params_spec, payoffs=payoff_spec)

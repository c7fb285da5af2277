#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
peulab 數據模式定義。
定義情境文件（scenario file）的結構和驗證規則。
"""

import math
from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from peulab.core.prospects import ChanceInfo


class ChanceKind(str, Enum):
    """機率資訊類型。"""
    PRECISE = "precise"
    INTERVAL = "interval"
    VACUOUS = "vacuous"


class CorrelationTag(str, Enum):
    """個人結果之間的關聯方式。"""
    INDEPENDENT = "independent"
    COMONOTONE = "comonotone"
    ANTITONE = "antitone"


class ChanceSpec(BaseModel):
    """單一事件的機率資訊。"""
    model_config = ConfigDict(extra="forbid")

    kind: ChanceKind
    p: Optional[float] = None
    lo: Optional[float] = None
    hi: Optional[float] = None

    @model_validator(mode="after")
    def check_coherent(self) -> "ChanceSpec":
        """檢查機率資訊是否一致。"""
        if self.kind == ChanceKind.PRECISE:
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError(f"precise chance needs p in [0, 1], got {self.p}")
        elif self.kind == ChanceKind.INTERVAL:
            if self.lo is None or self.hi is None:
                raise ValueError("interval chance needs both lo and hi")
            if not 0.0 <= self.lo <= self.hi <= 1.0:
                raise ValueError(f"incoherent interval ({self.lo}, {self.hi}): need 0 <= lo <= hi <= 1")
        return self

    def to_chance(self) -> ChanceInfo:
        """轉換為 ChanceInfo。"""
        if self.kind == ChanceKind.PRECISE:
            return ChanceInfo.precise(self.p)
        if self.kind == ChanceKind.INTERVAL:
            return ChanceInfo.interval(self.lo, self.hi)
        return ChanceInfo.vacuous()

    @classmethod
    def from_chance(cls, chance: ChanceInfo) -> "ChanceSpec":
        """由 ChanceInfo 建立。"""
        if chance.is_precise:
            return cls(kind=ChanceKind.PRECISE, p=chance.lo)
        if chance.is_vacuous:
            return cls(kind=ChanceKind.VACUOUS)
        return cls(kind=ChanceKind.INTERVAL, lo=chance.lo, hi=chance.hi)


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise ValueError(f"well-being must be finite, got {value}")
    return value


class MarginalSpec(BaseModel):
    """單人的二元結果：以 chance 的機率得到 success，否則得到 failure。"""
    model_config = ConfigDict(extra="forbid")

    success: float
    failure: float
    chance: ChanceSpec

    @field_validator("success", "failure")
    @classmethod
    def check_finite(cls, value: float) -> float:
        """福祉值必須為有限數。"""
        return _finite(value)


class OptionSpec(BaseModel):
    """
    社會選項。

    以 marginals + correlation 描述，或直接以 states + chances 描述聯合結果。
    """
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    label: str = ""
    correlation: CorrelationTag = CorrelationTag.INDEPENDENT
    marginals: Optional[List[MarginalSpec]] = None
    states: Optional[List[List[float]]] = None
    chances: Optional[List[ChanceSpec]] = None

    @model_validator(mode="after")
    def check_shape(self) -> "OptionSpec":
        """marginals 與 states 必須二擇一。"""
        if (self.marginals is None) == (self.states is None):
            raise ValueError("give either marginals or states with chances")
        if self.states is not None:
            if self.chances is None or len(self.chances) != len(self.states):
                raise ValueError("states need one chance entry each")
            if any(not math.isfinite(w) for state in self.states for w in state):
                raise ValueError("well-being must be finite")
        elif self.chances is not None:
            raise ValueError("chances belong with states, not with marginals")
        return self


class PayoffSpec(BaseModel):
    """兩階段實驗的收益表。"""
    model_config = ConfigDict(extra="forbid")

    rr: float = 50.0
    aa: float = 80.0
    ar: float = 60.0
    ra: float = 80.0
    w_fail: float = 10.0

    @model_validator(mode="after")
    def check_fail_lowest(self) -> "PayoffSpec":
        """失敗收益必須低於所有成功收益。"""
        if not self.w_fail < min(self.rr, self.aa, self.ar, self.ra):
            raise ValueError(f"w_fail ({self.w_fail}) must lie below every success payoff")
        return self


class ParamsSpec(BaseModel):
    """社會價值函數的參數。"""
    model_config = ConfigDict(extra="forbid")

    alpha: float = Field(0.8, ge=0.0, le=1.0)
    beta: float = Field(0.5, ge=0.0)
    gamma: float = Field(0.25, ge=0.0)


class ScenarioFile(BaseModel):
    """情境文件（版本 1）。"""
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = 1
    persons: List[str] = Field(..., min_length=1)
    options: List[OptionSpec] = Field(..., min_length=1)
    params: Optional[ParamsSpec] = None
    payoffs: Optional[PayoffSpec] = None

    @model_validator(mode="after")
    def check_persons(self) -> "ScenarioFile":
        """每個選項的人數必須與 persons 一致。"""
        if len(set(self.persons)) != len(self.persons):
            raise ValueError(f"person labels must be unique: {self.persons}")
        count = len(self.persons)
        for index, option in enumerate(self.options):
            if option.marginals is not None and len(option.marginals) != count:
                raise ValueError(f"options[{index}] has {len(option.marginals)} marginals for {count} persons")
            if option.states is not None and any(len(state) != count for state in option.states):
                raise ValueError(f"options[{index}] has states whose length differs from {count} persons")
        return self

#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Shared fixtures."""

import pytest

from peulab.ellsberg.sequential import build_two_stage_tree
from peulab.ellsberg.two_stage import PayoffSchedule
from peulab.social.peu import PeuParams
from peulab.social.scenarios import builtin_options, options_by_label


@pytest.fixture
def params():
    return PeuParams()


@pytest.fixture
def options():
    return options_by_label(builtin_options(0.0))


@pytest.fixture
def costly_options():
    return options_by_label(builtin_options(1.0))


@pytest.fixture
def schedule():
    return PayoffSchedule()


@pytest.fixture
def tree(schedule):
    return build_two_stage_tree(schedule)


@pytest.fixture
def no_config(tmp_path):
    return str(tmp_path / "missing.yml")

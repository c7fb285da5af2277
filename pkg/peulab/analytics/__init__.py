#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Analytics module for peulab.

This module provides parameter sweeps over the social value function and the
Hurwicz criterion, and renders command results as reports.
"""

from peulab.analytics.reporter import Report, write_report
from peulab.analytics.sweep import parse_grid, sweep_heu_reversal, sweep_peu_params

__all__ = ['Report', 'write_report', 'parse_grid', 'sweep_heu_reversal', 'sweep_peu_params']

#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
peulab: egalitarian social value and sequential choice under imprecise probability.
"""

__version__ = "1.0.0"

#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exception hierarchy for the peulab package.
"""


class PeuError(Exception):
    """Base class for every error raised by peulab."""


class CredalError(PeuError, ValueError):
    """Incoherent chance information, credal set, distribution or decision tree."""


class DomainError(PeuError, ValueError):
    """A numeric argument lies outside its admissible domain."""


class ScenarioError(PeuError):
    """A scenario file or grid specification does not match the schema."""

"""Tests for the builtin treatments and the twelve comparisons."""

import pytest

from peulab.exceptions import DomainError
from peulab.social.peu import Correlation, PeuParams, Relation
from peulab.social.scenarios import (
    SECTION3_COMPARISONS,
    builtin_options,
    g_threshold,
    reproduce_section3,
)

TOL = 1e-9


class TestBuiltinOptions:

    def test_eight_labelled_options(self):
        options = builtin_options()
        assert [o.label for o in options] == [str(i) for i in range(1, 9)]
        assert all(o.persons == ("Ann", "Bea") for o in options)

    def test_correlation_tags(self):
        options = builtin_options()
        assert options[4].correlation is Correlation.ANTITONE
        assert options[5].correlation is Correlation.COMONOTONE
        assert options[6].correlation is Correlation.INDEPENDENT

    @pytest.mark.parametrize("cost", [-1.0, 15.0])
    def test_cost_domain(self, cost):
        with pytest.raises(DomainError):
            builtin_options(cost)


class TestReproduce:

    def test_defaults_match_all_twelve(self, params):
        table = reproduce_section3(params, 0.0, 1.0)
        assert len(table.rows) == 12
        assert table.all_match
        assert table.mismatches == []

    def test_indifference_and_margins(self, params):
        rows = {row.spec.label: row for row in reproduce_section3(params).rows}
        assert abs(rows["F"].verdict.margin) < TOL
        assert rows["D"].verdict.margin == pytest.approx(22.5)
        assert rows["H"].verdict.margin == pytest.approx(-2.0)
        assert rows["G"].cost_c == 1.0
        assert rows["D"].cost_c == 0.0

    def test_utilitarian_collapse(self):
        table = reproduce_section3(PeuParams(alpha=0.8, beta=0.0, gamma=0.0))
        assert table.mismatches == ["A", "B", "C", "D", "E", "G", "K"]

    def test_balanced_pessimism_loses_uncertainty_verdicts(self):
        table = reproduce_section3(PeuParams(alpha=0.5, beta=0.5, gamma=0.25))
        assert set(table.mismatches) == {"I", "J", "K", "L"}

    def test_ex_ante_weight_too_small_for_spread_uncertainty(self):
        table = reproduce_section3(PeuParams(alpha=0.8, beta=0.05, gamma=1.0))
        assert table.mismatches == ["K"]

    def test_g_threshold(self, params):
        assert g_threshold(params) == pytest.approx(11.25)
        assert reproduce_section3(params, 0.0, 11.0).all_match
        assert reproduce_section3(params, 0.0, 11.5).mismatches == ["G"]


class TestComparisonTable:

    def test_labels_in_order(self):
        assert [c.label for c in SECTION3_COMPARISONS] == list("ABCDEFGHIJKL")

    def test_only_f_expects_indifference(self):
        indifferent = [c.label for c in SECTION3_COMPARISONS if c.expected is Relation.INDIFFERENT]
        assert indifferent == ["F"]

    def test_corrected_headings_are_noted(self):
        noted = {c.label for c in SECTION3_COMPARISONS if c.note}
        assert noted == {"D", "G", "L"}

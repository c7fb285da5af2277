"""Tests for the pluralist egalitarian social value."""

import pytest

from peulab.core.prospects import ChanceInfo, PointDistribution, Prospect, UncertaintyLevel
from peulab.exceptions import DomainError
from peulab.social.peu import (
    Correlation,
    Marginal,
    PeuParams,
    Relation,
    SocialOption,
    compare,
    ex_ante_inequality,
    ex_post_inequality_value,
    individual_value,
    mean_abs_difference,
    peu_breakdown,
    peu_value,
    rank_options,
)

TOL = 1e-9

BLIND = Marginal(80.0, 50.0, ChanceInfo.vacuous())


class TestOptionValues:

    @pytest.mark.parametrize("label, expected", [
        ("1", 107.5),
        ("2", 122.5),
        ("3", 130.0),
        ("4", 130.0),
        ("5", 104.5),
        ("6", 112.0),
        ("7", 112.75),
        ("8", 116.6875),
    ])
    def test_builtin_values(self, options, params, label, expected):
        assert peu_value(options[label], params) == pytest.approx(expected, abs=TOL)

    def test_partial_impairment_with_cost(self, costly_options, params):
        assert peu_value(costly_options["4"], params) == pytest.approx(128.0, abs=TOL)

    def test_unequal_uncertainty_components(self, options, params):
        b = peu_breakdown(options["7"], params)
        assert b.individual_values == pytest.approx((56.0, 65.0))
        assert b.ex_ante == pytest.approx(9.0)
        assert b.ex_post == pytest.approx(15.0)

    def test_moderate_uncertainty_expost_is_pessimistic(self, options, params):
        assert options["8"].inequality_bounds == pytest.approx((11.25, 18.75))
        assert ex_post_inequality_value(options["8"], params) == pytest.approx(17.25)

    def test_individual_value(self, options, params):
        assert individual_value(options["5"], 0, params) == pytest.approx(56.0)
        with pytest.raises(DomainError):
            individual_value(options["5"], 2, params)

    def test_ex_ante_inequality_of_certain_inequality(self, options, params):
        assert ex_ante_inequality(options["1"], params) == pytest.approx(30.0)


class TestCompare:

    def test_equal_shot_beats_certain_inequality(self, options, params):
        verdict = compare(options["1"], options["2"], params)
        assert verdict.relation is Relation.RIGHT_PREFERRED
        assert verdict.margin == pytest.approx(-15.0)

    def test_exact_indifference(self, options, params):
        verdict = compare(options["4"], options["3"], params)
        assert verdict.relation is Relation.INDIFFERENT
        assert abs(verdict.margin) < TOL

    def test_small_cost_breaks_indifference(self, params):
        from peulab.social.scenarios import builtin_options, options_by_label
        costly = options_by_label(builtin_options(0.01))
        zero = options_by_label(builtin_options(0.0))
        verdict = compare(costly["4"], zero["3"], params)
        assert verdict.relation is Relation.RIGHT_PREFERRED
        assert verdict.margin == pytest.approx(-0.02, abs=1e-9)

    def test_mirrored(self, options, params):
        forward = compare(options["7"], options["8"], params)
        backward = compare(options["8"], options["7"], params)
        assert backward.margin == pytest.approx(-forward.margin)
        assert backward.relation is forward.relation.mirrored()
        assert forward.mirrored().relation is backward.relation

    def test_person_mismatch(self, options, params):
        solo = SocialOption.from_marginals("solo", ("Ann",), [BLIND])
        with pytest.raises(DomainError):
            compare(solo, options["1"], params)


class TestUtilitarianLimit:

    def test_inequality_weights_off(self, options):
        params = PeuParams(alpha=0.8, beta=0.0, gamma=0.0)
        assert peu_value(options["1"], params) == pytest.approx(130.0)
        assert peu_value(options["2"], params) == pytest.approx(130.0)
        assert peu_value(options["5"], params) == pytest.approx(112.0)


class TestJointConstruction:

    def test_independent_states(self):
        option = SocialOption.from_marginals("x", ("Ann", "Bea"), [BLIND, BLIND])
        assert len(option.states) == 4
        assert option.person_bounds == ((50.0, 80.0), (50.0, 80.0))

    def test_comonotone_needs_shared_chance(self):
        with pytest.raises(DomainError):
            SocialOption.from_marginals("x", ("Ann", "Bea"),
                                        [BLIND, Marginal(80.0, 50.0, ChanceInfo.precise(0.5))],
                                        Correlation.COMONOTONE)

    def test_antitone_needs_complement(self):
        with pytest.raises(DomainError):
            SocialOption.from_marginals("x", ("Ann", "Bea"),
                                        [Marginal(80.0, 50.0, ChanceInfo.precise(0.3)),
                                         Marginal(80.0, 50.0, ChanceInfo.precise(0.3))],
                                        Correlation.ANTITONE)

    def test_antitone_needs_two_persons(self):
        with pytest.raises(DomainError):
            SocialOption.from_marginals("x", ("Ann", "Bea", "Cy"), [BLIND, BLIND, BLIND], Correlation.ANTITONE)

    def test_marginal_count(self):
        with pytest.raises(DomainError):
            SocialOption.from_marginals("x", ("Ann", "Bea"), [BLIND])

    def test_three_person_independent(self, params):
        option = SocialOption.from_marginals("x", ("Ann", "Bea", "Cy"), [Marginal.certain(60.0)] * 3)
        assert peu_value(option, params) == pytest.approx(180.0)


class TestParams:

    @pytest.mark.parametrize("changes", [{"alpha": 1.5}, {"beta": -0.1}, {"gamma": float("nan")}])
    def test_domain(self, changes):
        with pytest.raises(DomainError):
            PeuParams(**changes)

    def test_with(self):
        assert PeuParams().with_(beta=0.0).as_dict() == {"alpha": 0.8, "beta": 0.0, "gamma": 0.25, "cost_c": 0.0}


class TestUncertaintyLevel:

    @pytest.mark.parametrize("label, level", [
        ("1", UncertaintyLevel.RISK),
        ("4", UncertaintyLevel.RISK),
        ("6", UncertaintyLevel.MAXIMAL),
        ("7", UncertaintyLevel.MAXIMAL),
        ("8", UncertaintyLevel.MODERATE),
    ])
    def test_most_severe_marginal(self, options, label, level):
        assert options[label].uncertainty is level

    def test_severe_interval(self):
        wide = Marginal(80.0, 50.0, ChanceInfo.interval(0.1, 0.9))
        option = SocialOption.from_marginals("wide", ("Ann",), [wide])
        assert option.uncertainty is UncertaintyLevel.SEVERE

    def test_joint_without_marginals(self):
        joint = Prospect(((80.0, 50.0), (50.0, 80.0)), PointDistribution((0.5, 0.5)))
        assert SocialOption("joint", ("Ann", "Bea"), joint).uncertainty is None


class TestRanking:

    def test_best_first_with_stable_ties(self, options, params):
        ranking = rank_options(options.values(), params)
        assert [b.option for b in ranking[:2]] == ["equality under risk", "equality under certainty"]
        assert ranking[-1].option == "equal uncertainty, unequal final well-being"


def test_mean_abs_difference():
    assert mean_abs_difference([1.0]) == 0.0
    assert mean_abs_difference([0.0, 3.0, 6.0]) == pytest.approx(4.0)

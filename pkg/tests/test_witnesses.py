"""Constructive counterexamples: certificates, round trips, parameter slack."""

from fractions import Fraction

import pytest

from paretostar import (
    Agent,
    PreconditionError,
    check_c_minimal_agreement,
    check_thm2_condition,
    no_taste_disagreement,
    pareto_star_check,
    profile,
    utilitarian_decompose,
    utility,
    vec,
    witness_ct_pareto_star,
    witness_lemma1,
    witness_spurious_unanimity,
)
from paretostar.axioms import AXIOM_CHECKS
from paretostar.characterizations import distinct_priors
from paretostar.geometry import Hyperplane
from paretostar.witnesses import revalidate

from helpers import interval, scenario1, scenario2, singleton

F = Fraction


def assert_certified(prof, cert):
    assert revalidate(prof, cert)
    assert all(am.margin > 0 for am in cert.per_agent)
    assert cert.society_margin > 0
    verdict = AXIOM_CHECKS[cert.axiom_tag](prof, cert.act_x, cert.act_f)
    assert verdict.violation


class TestCommonTasteWitness:
    def build(self, society):
        prof = scenario2(society)
        rep = check_thm2_condition(prof)
        assert not rep.holds
        x_star, x_low = check_c_minimal_agreement(prof)
        cert = witness_ct_pareto_star(
            prof, rep.details["combo"], rep.details["hyperplane"], x_star, x_low
        )
        return prof, cert

    def test_singleton_society(self):
        prof, cert = self.build(singleton("0.8"))
        assert_certified(prof, cert)
        assert no_taste_disagreement(prof, cert.act_f, cert.act_x)
        assert cert.act_x.rows[0] == cert.act_x.rows[1]

    def test_documented_combo_margins(self):
        # Hand-picked separator: normal (0, 1), threshold 0.3 splits the
        # combo ((0.6,0.4), (0.3,0.7)) from the singleton society at 0.8.
        prof = scenario2(singleton("0.8"))
        combo = (vec(["0.6", "0.4"]), vec(["0.3", "0.7"]))
        h = Hyperplane(vec([0, 1]), F(3, 10))
        x_star, x_low = check_c_minimal_agreement(prof)
        cert = witness_ct_pareto_star(prof, combo, h, x_star, x_low)
        gain = prof.agents[0].utility.coeffs[0] * (x_star[0] - x_low[0]) + (
            prof.agents[0].utility.coeffs[1] * (x_star[1] - x_low[1])
        )
        assert cert.per_agent[0].margin == gain * F(1, 10)  # 0.4 - 0.3
        assert cert.per_agent[1].margin == gain * F(4, 10)  # 0.7 - 0.3
        assert cert.society_margin == gain * F(1, 10)  # 0.3 - 0.2
        assert_certified(prof, cert)

    def test_hyperplane_mismatch_rejected(self):
        prof = scenario2(singleton("0.8"))
        bad = Hyperplane(vec([0, 1]), F(9, 10))
        x_star, x_low = check_c_minimal_agreement(prof)
        with pytest.raises(PreconditionError):
            witness_ct_pareto_star(
                prof, (vec(["0.6", "0.4"]), vec(["0.3", "0.7"])), bad, x_star, x_low
            )

    def test_ct_check_round_trip(self):
        prof, cert = self.build(singleton("0.75"))
        rerun = AXIOM_CHECKS["ct-pareto-star"](prof, cert.act_x, cert.act_f)
        assert rerun.premise_holds and not rerun.conclusion_holds


class TestLemma1Witness:
    def build(self):
        prof = scenario1(singleton("0.5"))
        dec = utilitarian_decompose(prof)
        cert = witness_lemma1(prof, dec, 0, vec(["0.8", "0.2"]))
        return prof, dec, cert

    def test_certificate_validates(self):
        prof, _, cert = self.build()
        assert_certified(prof, cert)

    def test_taste_slack_is_statewise(self):
        from paretostar.preferences import utility_profile

        prof, _, cert = self.build()
        other = prof.agents[1]
        uf = utility_profile(other.utility, cert.act_f)
        ux = utility_profile(other.utility, cert.act_x)
        slack = cert.per_agent[1].margin
        assert all(a - b == slack for a, b in zip(uf, ux))

    def test_prior_inside_society_rejected(self):
        prof = scenario1(singleton("0.5"))
        dec = utilitarian_decompose(prof)
        with pytest.raises(PreconditionError):
            witness_lemma1(prof, dec, 0, vec(["0.5", "0.5"]))

    def test_epsilon_halving_keeps_all_margins(self):
        prof, dec, cert = self.build()
        half = witness_lemma1(prof, dec, 0, vec(["0.8", "0.2"]),
                              epsilon=cert.params["epsilon"] / 2)
        assert_certified(prof, half)
        # society slack grows as the taste bonus shrinks
        assert half.society_margin > cert.society_margin

    def test_zero_weight_agent_rejected(self):
        base = scenario1(singleton("0.5"))
        soc = Agent(base.agents[0].utility, singleton("0.5"), "society")
        prof = profile(base.agents, soc)
        dec = utilitarian_decompose(prof)
        assert dec.alpha == (F(1), F(0))
        with pytest.raises(PreconditionError):
            witness_lemma1(prof, dec, 1, vec(["0.8", "0.2"]))


class TestSpuriousUnanimity:
    def build(self, prof=None):
        prof = prof or scenario1()
        dec = utilitarian_decompose(prof)
        p1, p2 = distinct_priors(prof.agents[0].beliefs, prof.agents[1].beliefs)
        cert = witness_spurious_unanimity(prof, dec, 0, 1, p1, p2)
        return prof, dec, cert

    def test_certificate_validates(self):
        prof, _, cert = self.build()
        assert_certified(prof, cert)

    def test_documented_epsilon(self):
        _, _, cert = self.build()
        # spread 0.72, weights 1/2 each: bound 0.18, pinned at half
        assert cert.params["epsilon"] == F(9, 100)

    def test_society_margin_independent_of_social_beliefs(self):
        margins = []
        for beliefs in (interval("0.2", "0.8"), singleton("0.5"), singleton("0.9")):
            prof, _, cert = self.build(scenario1(beliefs))
            margins.append(cert.society_margin)
            assert_certified(prof, cert)
        assert len(set(margins)) == 1

    def test_equal_priors_rejected(self):
        prof = scenario1()
        dec = utilitarian_decompose(prof)
        with pytest.raises(PreconditionError):
            witness_spurious_unanimity(
                prof, dec, 0, 1, vec(["0.2", "0.8"]), vec(["0.2", "0.8"])
            )

    def test_two_agent_profile_has_no_bystander_margins(self):
        _, _, cert = self.build()
        assert {am.agent for am in cert.per_agent} == {0, 1}

    def test_three_agents_with_bystander_slack(self):
        ann = Agent(utility([1, 0, 0]), interval("0.2", "0.8"), "Ann")
        bob = Agent(utility([0, 1, 0]), interval("0.2", "0.8"), "Bob")
        caz = Agent(utility([0, 0, 1]), singleton("0.5"), "Caz")
        soc = Agent(utility(["1/3", "1/3", "1/3"]), interval("0.2", "0.8"), "society")
        prof = profile([ann, bob, caz], soc)
        dec = utilitarian_decompose(prof)
        p1, p2 = distinct_priors(ann.beliefs, bob.beliefs)
        cert = witness_spurious_unanimity(prof, dec, 0, 1, p1, p2)
        assert_certified(prof, cert)
        assert {am.agent for am in cert.per_agent} == {0, 1, 2}
        rerun = pareto_star_check(prof, cert.act_x, cert.act_f)
        assert rerun.violation

    def test_parameter_halving(self):
        prof, dec, cert = self.build()
        p1, p2 = cert.per_agent[0].prior, cert.per_agent[1].prior
        for override in (
            {"epsilon": cert.params["epsilon"] / 2},
            {"b": cert.params["b"] / 2},
            {"nu": cert.params["nu"] / 2},
        ):
            half = witness_spurious_unanimity(prof, dec, 0, 1, p1, p2, **override)
            assert_certified(prof, half)

    def test_distinct_singletons(self):
        a1 = Agent(utility([1, 0]), singleton("0.3"))
        a2 = Agent(utility([0, 1]), singleton("0.7"))
        soc = Agent(utility(["1/2", "1/2"]), interval("0.2", "0.8"), "society")
        prof = profile([a1, a2], soc)
        dec = utilitarian_decompose(prof)
        cert = witness_spurious_unanimity(
            prof, dec, 0, 1, vec(["0.3", "0.7"]), vec(["0.7", "0.3"])
        )
        assert_certified(prof, cert)

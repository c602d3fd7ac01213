"""Deterministic generation, fuzzing, and checker/witness cross-validation."""

import pytest

from paretostar import (
    GenParams,
    MissingSocietyError,
    PreconditionError,
    cross_validate,
    fuzz_axiom,
    profile,
    random_profile,
    validate_profile,
)
from paretostar.characterizations import ConditionReport
from paretostar.harness import SplitMix64
from paretostar.witnesses import WitnessCertificate

from helpers import REFORM, STATUS_QUO, interval, scenario1, scenario2, singleton


class TestGenerator:
    def test_same_seed_same_profile(self):
        params = GenParams(seed=1, n=3, m=3, d=2, max_vertices=3)
        assert random_profile(params) == random_profile(params)

    def test_single_vertex_means_seu(self):
        prof = random_profile(GenParams(seed=4, max_vertices=1))
        assert all(len(a.beliefs.vertices) == 1 for a in prof.agents)

    def test_output_always_validates(self):
        for seed in range(12):
            rule = ("minkowski", "hull-union", "perturbed", "none")[seed % 4]
            prof = random_profile(GenParams(seed=seed, society_rule=rule))
            assert validate_profile(prof) == []

    def test_invalid_params_rejected(self):
        with pytest.raises(ValueError):
            GenParams(seed=0, n=1)
        with pytest.raises(ValueError):
            GenParams(seed=0, m=1)

    def test_rng_stream_is_pinned(self):
        rng = SplitMix64(42)
        assert rng.next_u64() == 13679457532755275413


class TestFuzz:
    def test_zero_trials_empty_report(self):
        report = fuzz_axiom(scenario1(), "pareto-star", 0)
        assert report.trials == 0 and report.premise_hits == 0
        assert report.violations == ()

    def test_planted_pair_found(self):
        report = fuzz_axiom(
            scenario1(), "pareto-star", 50, seed=2, planted=(((STATUS_QUO, REFORM)),)
        )
        assert report.violations
        f, g, verdict = report.violations[0]
        assert (f, g) == (STATUS_QUO, REFORM) and verdict.violation

    def test_digest_reproducible(self):
        a = fuzz_axiom(scenario1(), "pareto-star", 80, seed=9)
        b = fuzz_axiom(scenario1(), "pareto-star", 80, seed=9)
        assert a.digest == b.digest and a.premise_hits == b.premise_hits
        c = fuzz_axiom(scenario1(), "pareto-star", 80, seed=10)
        assert c.digest != a.digest

    def test_premise_hits_with_disjoint_beliefs(self):
        prof = scenario2(singleton("0.8"))
        report = fuzz_axiom(prof, "ct-pareto-star", 200, sampler="common-taste", seed=1)
        assert report.premise_hits > 0

    def test_general_sampler_warns_for_common_taste_axioms(self):
        with pytest.warns(UserWarning):
            fuzz_axiom(scenario1(), "ct-pareto-star", 5, sampler="general", seed=0)

    def test_missing_society(self):
        prof = profile(scenario1().agents)
        with pytest.raises(MissingSocietyError):
            fuzz_axiom(prof, "pareto-star", 10)

    def test_common_taste_sampler_needs_strict_pair(self):
        from paretostar import Agent, utility

        a1 = Agent(utility([1, 0]), singleton("0.4"))
        a2 = Agent(utility([-1, 0]), singleton("0.4"))
        soc = Agent(utility([1, 0]), singleton("0.4"), "society")
        with pytest.raises(PreconditionError):
            fuzz_axiom(profile([a1, a2], soc), "pareto-star", 5, sampler="common-taste")


class TestCrossValidate:
    def test_checker_pass_branch(self):
        cv = cross_validate(scenario2(interval("0.2", "0.8")), "thm2", trials=150, seed=3)
        assert cv.verdict == "CONSISTENT" and cv.checker_holds
        assert cv.fuzz is not None and not cv.fuzz.violations

    def test_checker_fail_branch_builds_witness(self):
        cv = cross_validate(scenario2(singleton("0.8")), "thm2", trials=50, seed=3)
        assert cv.verdict == "CONSISTENT" and not cv.checker_holds
        assert isinstance(cv.witness, WitnessCertificate)

    def test_thm1_fail_branch(self):
        cv = cross_validate(scenario1(), "thm1", trials=50, seed=5)
        assert cv.verdict == "CONSISTENT" and not cv.checker_holds
        assert cv.witness.kind == "spurious-unanimity"

    def test_thm1_pass_branch(self):
        from paretostar import Agent

        base = scenario1()
        soc = Agent(base.agents[0].utility, interval("0.1", "0.9"), "society")
        cv = cross_validate(profile(base.agents, soc), "thm1", trials=200, seed=5)
        assert cv.verdict == "CONSISTENT" and cv.checker_holds
        assert not cv.fuzz.violations

    def test_corrupted_checker_is_caught(self):
        # Claims the singleton society is fine; fuzzing must disagree.
        prof = scenario2(singleton("0.8"))
        liar = lambda p: ConditionReport("thm2", True, {})
        cv = cross_validate(prof, "thm2", trials=400, seed=11, checker=liar)
        assert cv.verdict == "INCONSISTENT"

    def test_corrupted_witness_is_caught(self):
        prof = scenario2(singleton("0.8"))

        def broken(prof_, combo, h, x_star, x_low):
            good = cross_validate(prof_, "thm2", trials=0, seed=0).witness
            return WitnessCertificate(
                good.kind,
                good.act_f,
                good.act_x,
                good.hyperplane,
                good.params,
                good.per_agent,
                -good.society_margin,
            )

        cv = cross_validate(prof, "thm2", trials=0, seed=0, witness_builder=broken)
        assert cv.verdict == "INCONSISTENT"

    def test_unknown_condition_rejected(self):
        with pytest.raises(ValueError):
            cross_validate(scenario1(), "eq1")

    def test_no_false_alarms_for_thm1_at_scale(self):
        """200 random c-diverse profiles never produce an INCONSISTENT verdict."""
        from paretostar import Agent, aggregate_society, check_c_diversity
        import dataclasses

        count = 0
        seed = 40000
        rng = SplitMix64(51)
        while count < 200:
            n = 2 + seed % 2
            params = GenParams(
                seed=seed,
                n=n,
                m=2 + seed % 2,
                d=n,
                max_vertices=1 + seed % 3,
                denom_bound=6,
                society_rule=("minkowski", "perturbed")[seed % 2],
            )
            seed += 1
            prof = random_profile(params)
            if check_c_diversity(prof) is None:
                continue
            if rng.randint(0, 3) == 0:
                # mix in societies that satisfy the condition: a taste
                # dictator whose belief set the society contains
                alpha = tuple(int(i == 0) for i in range(n))
                soc = aggregate_society(prof, alpha, 0, "hull-union")
                prof = dataclasses.replace(prof, society=soc)
            cv = cross_validate(prof, "thm1", trials=120, seed=seed)
            assert cv.verdict == "CONSISTENT", (seed, cv.detail)
            count += 1

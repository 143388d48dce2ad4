import json
import random
from fractions import Fraction as F

import pytest

from possmerge.generators import (
    GeneratorParams,
    Instance,
    POSTULATES,
    generate_instance,
    make_instance,
    rewrite_profile,
)
from possmerge.logic import FALSE, TRUE, Vocabulary, atoms, is_consistent
from possmerge.possibilistic import PossibilisticKB, Profile, kb, profile_equivalent_s
from possmerge.postulates import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    check_postulate,
    conflict_sets,
    equally_prioritized,
    priority_degree,
    run_suite,
)


p, q = atoms("p", "q")
P = Vocabulary(("p",))
PQ = Vocabulary(("p", "q"))


class TestPriorityDegree:
    def test_examples(self):
        assert priority_degree(kb((p, "0.6")), kb((p, "0.6"), (q, "0.9"))) == F(3, 5)
        assert priority_degree(kb((p, "0.6")), kb((q, "0.6"))) == 1
        both = kb((p, "0.6"), (q, "0.9"))
        assert priority_degree(both, both) == F(3, 5)

    def test_exact_pair_intersection(self):
        assert priority_degree(kb((p, "0.6")), kb((p, "0.7"))) == 1


class TestConflictSets:
    def test_pairwise_conflict(self):
        assert conflict_sets(kb((p, "0.5")), kb((~p, "0.5")), TRUE) == [kb((p, "0.5"), (~p, "0.5"))]

    def test_none(self):
        assert conflict_sets(kb((p, "0.5")), kb((q, "0.5")), TRUE) == []

    def test_constraint_conflict(self):
        assert conflict_sets(kb((p, "0.5")), PossibilisticKB(), ~p) == [kb((p, "0.5"))]

    def test_antichain(self):
        for seed in range(60):
            E, mu = generate_instance(GeneratorParams(seed=seed, atoms=3, bases=2, min_bases=2, max_formulas=4))
            family = conflict_sets(E[0], E[1], mu)
            sets = [frozenset(C) for C in family]
            for a in sets:
                assert not any(a < b for b in sets)


class TestEquallyPrioritized:
    def test_examples(self):
        assert equally_prioritized(kb((p, "0.5")), kb((q, "0.5")), TRUE)
        assert equally_prioritized(kb((p, "0.5")), kb((~p, "0.5")), TRUE)
        assert not equally_prioritized(kb((p, "0.8")), kb((~p, "0.5")), TRUE)


def instance(E, mu, v, **kw):
    return Instance(v, Profile(E), mu, **kw)


class TestCheckPostulate:
    def test_p1_four_bases(self, four_bases):
        E, mu, v = four_bases
        verdict = check_postulate("P1", Instance(v, E, mu))
        assert verdict.outcome == PASS and verdict.counterexample is None

    def test_p3_jointly_consistent(self):
        E = [kb((p, "0.5")), kb((q, "0.3"))]
        assert check_postulate("P3", instance(E, p | q, PQ)).outcome == PASS

    def test_p2_inconsistent_constraint(self, four_bases):
        E, _, v = four_bases
        assert check_postulate("p2", Instance(v, E, FALSE)).outcome == NOT_APPLICABLE

    def test_p4_rewritten_profile(self, four_bases):
        E, mu, v = four_bases
        E2 = rewrite_profile(random.Random(3), E)
        assert profile_equivalent_s(E, E2, v)
        inst = Instance(v, E, mu, profile2=E2, constraint2=~~mu)
        assert check_postulate("P4", inst).outcome == PASS

    def test_ic4_applicability(self):
        E = [kb((p & q, 1)), kb((p & ~q, 1))]
        assert check_postulate("IC4", instance(E, p, PQ)).outcome == PASS
        assert check_postulate("IC4", instance(E, q, PQ)).outcome == NOT_APPLICABLE

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            check_postulate("P11", instance([], TRUE, P))

    def test_p10_counterexample(self):
        # two weaker votes for p outweigh one certain vote against it under leximax
        E = [kb((~p, 1), name="B1"), kb((p, "1/2"), name="B2"), kb((p, "1/2"), name="B3")]
        verdict = check_postulate("P10", instance(E, TRUE, P))
        assert verdict.outcome == FAIL
        assert "Inc = 1/2" in verdict.detail
        assert verdict.counterexample["profile"]
        json.dumps(verdict.to_json())


class TestGenerator:
    def test_deterministic(self):
        params = GeneratorParams(seed=42)
        assert generate_instance(params) == generate_instance(params)
        assert make_instance("P9", params) == make_instance("P9", params)

    def test_no_bases(self):
        E, mu = generate_instance(GeneratorParams(seed=1, bases=0))
        assert len(E) == 0

    def test_bases_consistent(self):
        for seed in range(50):
            E, _ = generate_instance(GeneratorParams(seed=seed, atoms=3, max_formulas=5))
            assert all(is_consistent(B.classical, Vocabulary(("p1", "p2", "p3"))) for B in E)

    def test_bad_params(self):
        with pytest.raises(ValueError):
            GeneratorParams(atoms=0)
        with pytest.raises(ValueError):
            GeneratorParams(weights=(F(0),))

    def test_default_seed_passes(self):
        params = GeneratorParams(seed=1)
        for pid in POSTULATES:
            assert check_postulate(pid, make_instance(pid, params)).outcome != FAIL


class TestSuite:
    def test_p1_to_p9(self):
        report = run_suite(7, 60, ids=POSTULATES[:9])
        assert report.ok, [f.to_json() for f in report.failures[:1]]
        assert report.applicable("P9") > 0 and report.applicable("P6") > 0
        assert report.to_json()["counts"]["P1"]["pass"] == 60

    def test_ic_suite(self):
        assert run_suite(3, 40, ids=[f"IC{i}" for i in range(9)]).ok

    def test_four_bases_is_p10_clean(self, four_bases):
        E, mu, v = four_bases
        assert check_postulate("P10", Instance(v, E, mu)).outcome == PASS

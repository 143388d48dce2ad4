from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from possmerge.logic import FALSE, TRUE, Interpretation, UnknownAtomError, Vocabulary, atoms, evaluate, is_consistent
from possmerge.possibilistic import (
    PossibilisticKB,
    Profile,
    WeightedFormula,
    cut,
    distribution,
    inc_profile,
    inc_wrt,
    inconsistency_degree,
    kb,
    kb_equivalent_s,
    necessity_of,
    pi_consequence,
    possibility,
    possibility_of,
    profile_equivalent_s,
)

import oracle
from conftest import B1, B2, B3, B4, MU, V4, p1, p2, p3
from test_logic import formulas, VABCD

p, q = atoms("p", "q")
PQ = Vocabulary(("p", "q"))

GRID = [F(k, 10) for k in range(1, 11)]


def bases(names=("a", "b", "c", "d"), max_size=4):
    item = st.tuples(formulas(names), st.sampled_from(GRID))
    return st.lists(item, max_size=max_size).map(lambda xs: PossibilisticKB(xs))


def w(bits):
    return Interpretation.from_bitstring(V4, bits)


class TestTypes:
    def test_weight_bounds(self):
        with pytest.raises(ValueError):
            WeightedFormula(p, F(0))
        with pytest.raises(ValueError):
            WeightedFormula(p, F(11, 10))
        with pytest.raises(TypeError):
            kb((p, 0.5))

    def test_set_semantics(self):
        B = kb((p, "0.5"), (p, "1/2"), (p, "0.6"))
        assert len(B) == 2
        assert B.classical == (p,)
        assert B.same_formulas(kb((p, "0.6"), (p, "0.5")))

    def test_profile_is_a_multiset(self):
        E = Profile([B1, B1])
        assert len(E) == 2
        assert len(E + Profile([B2])) == 3


class TestPossibility:
    def test_worked_cells(self):
        assert possibility(B1, w("0111")) == F(2, 5)
        assert possibility(B4, w("1111")) == F(2, 5)
        assert possibility(PossibilisticKB(), w("0000")) == 1

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtomError):
            possibility(kb((p, 1)), w("0000"))

    def test_distribution_matches_pointwise(self):
        dist = distribution(B2, V4)
        for x in V4.interpretations():
            assert dist[x.index] == possibility(B2, x) == oracle.possibility(B2, x)

    def test_possibility_of_formula(self):
        # brute force: max over the 8 models of p1
        expected = max(oracle.possibility(B4, x) for x in oracle.interpretations(V4) if x["p1"])
        assert expected == 1
        assert possibility_of(B4, p1, V4) == expected
        assert possibility_of(B4, FALSE, V4) == 0
        assert necessity_of(PossibilisticKB(), TRUE, V4) == 1

    @settings(max_examples=150)
    @given(bases(), bases())
    def test_antitonicity_and_normal_form(self, B, extra):
        bigger = B.union(extra)
        for x in VABCD.interpretations():
            assert possibility(bigger, x) <= possibility(B, x)
            assert (possibility(B, x) == 1) == all(
                evaluate(f, x) for f in B.classical
            )

    @settings(max_examples=100)
    @given(bases(), formulas())
    def test_necessity_duality(self, B, f):
        if not is_consistent(B.classical, VABCD):
            return
        for a in GRID:
            if necessity_of(B, f, VABCD) >= a:
                assert possibility_of(B, f, VABCD) == 1


class TestCuts:
    def test_strict_cut(self):
        assert set(cut(B4, "0.6", strict=True)) == {p1, p2}

    def test_edges(self):
        assert set(cut(B1, 0)) == set(B1.classical)
        assert cut(B1, 1, strict=True) == ()

    @settings(max_examples=100)
    @given(bases(), st.sampled_from(GRID), st.sampled_from(GRID))
    def test_nesting(self, B, a, b):
        lo, hi = min(a, b), max(a, b)
        assert set(cut(B, hi)) <= set(cut(B, lo))
        assert set(cut(B, lo, strict=True)) <= set(cut(B, lo))


class TestInconsistency:
    def test_worked_values(self):
        assert inc_wrt(MU, B1) == 0
        assert inconsistency_degree(B1.union([WeightedFormula(MU, F(1))])) == 0
        assert inc_wrt(MU, B4) == F(3, 5)
        assert inc_wrt(p1 & p2 & p3, B2) == F(3, 5)

    def test_consistent_base(self):
        assert inconsistency_degree(B3) == 0
        assert inc_wrt(TRUE, B3) == 0

    def test_two_layers(self):
        B = kb((p, "0.8"), (~p, "0.3"))
        assert oracle.inconsistency_degree([(f, a) for f, a in B], PQ) == F(3, 10)
        assert inconsistency_degree(B) == F(3, 10)

    def test_inc_profile(self, four_bases):
        E, mu, v = four_bases
        union = [(f, a) for B in E for f, a in B] + [(mu, F(1))]
        assert oracle.inconsistency_degree(union, v) == F(3, 5)
        assert inc_profile(E, mu) == F(3, 5)
        assert inc_profile(Profile(), p) == 0
        assert inc_profile(Profile([B1]), TRUE) == inconsistency_degree(B1) == 0

    @settings(max_examples=200)
    @given(bases())
    def test_against_oracle(self, B):
        inc = inconsistency_degree(B, VABCD)
        assert inc == oracle.inconsistency_degree(list(B), VABCD)
        assert (inc == 0) == is_consistent(B.classical, VABCD)
        assert is_consistent(cut(B, inc, strict=True), VABCD)


def consequence_oracle(B, f, v):
    """The consequence degree checked literally on a 1/100 grid of thresholds (covers every tenth)."""
    levels = [F(k, 100) for k in range(1, 101)]

    def cut_at(a):
        return [g for g, b in B if b >= a]

    def proves(a):
        return not oracle.consistent(cut_at(a) + [~f], v)

    found = [
        a
        for a in sorted({b for _, b in B})
        if oracle.consistent(cut_at(a), v) and proves(a) and not any(proves(b) for b in levels if b > a)
    ]
    return found[0] if found else None


class TestConsequence:
    def test_chain(self):
        B = kb((p, "0.8"), (~p | q, "0.5"))
        assert consequence_oracle(list(B), q, PQ) == F(1, 2)
        assert pi_consequence(B, q) == F(1, 2)

    def test_single_layer(self):
        assert pi_consequence(kb((p, "0.8")), p) == F(4, 5)
        assert pi_consequence(kb((p, "0.8")), q, PQ) is None

    def test_tautology_below_one(self):
        assert pi_consequence(kb((p, "0.8")), p | ~p) is None
        assert pi_consequence(kb((p, 1)), p | ~p) == 1

    @settings(max_examples=200)
    @given(bases(), formulas())
    def test_against_oracle(self, B, f):
        assert pi_consequence(B, f, VABCD) == consequence_oracle(list(B), f, VABCD)


class TestEquivalence:
    def test_double_negation(self):
        rewritten = PossibilisticKB([(~~f, a) for f, a in B1])
        assert kb_equivalent_s(B1, rewritten)

    def test_layer_mismatch(self):
        assert not kb_equivalent_s(kb((p, "0.5")), kb((p, "0.6")))

    def test_conjunction_fusion(self):
        assert kb_equivalent_s(kb((p, "0.5"), (q, "0.5")), kb((p & q, "0.5")))

    def test_profiles(self):
        assert profile_equivalent_s(Profile([B1, B2, B3]), Profile([B3, B1, B2]))
        assert not profile_equivalent_s(Profile([B1]), Profile([B1, B1]))
        assert profile_equivalent_s(Profile([kb((p, "0.5"))]), Profile([kb((~~p, "0.5"))]))
        assert not profile_equivalent_s(Profile([B1, B1]), Profile([B1, B2]))

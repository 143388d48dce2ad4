"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line that is printed in the
"acceptance criteria" section of the pytest summary, and also fails the
usual way so a red criterion cannot go unnoticed.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction as F

from possmerge.generators import IC_POSTULATES, POSTULATES, GeneratorParams, generate_classical, generate_instance
from possmerge.logic import Interpretation, enumerate_models, equivalent, truth_table
from possmerge.postulates import FAIL, run_suite
from possmerge.reductions import lift_profile, merge_c4, merge_gmin
from possmerge.semantic import degree_vector, merge_semantic, merge_table, models_to_formula
from possmerge.syntactic import merge_syntactic, merged_entails

from conftest import p1, p2, p3


@contextmanager
def criterion(log, number, title, budget=None):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        log.append(f"FAIL  {number}. {title} ({elapsed:.2f}s): {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}")
        raise
    extra = f"; {'; '.join(notes)}" if notes else ""
    log.append(f"PASS  {number}. {title} ({elapsed:.2f}s{extra})")


def test_1_four_bases_golden(acceptance_log, four_bases):
    with criterion(acceptance_log, 1, "four-base profile: model set and formula", budget=1):
        E, mu, v = four_bases
        models = merge_semantic(E, mu, v)
        assert [w.bitstring for w in models] == ["1110", "1111"]
        formula, _ = merge_syntactic(E, mu, v)
        assert equivalent(formula, p1 & p2 & p3, v)
        assert equivalent(models_to_formula(models, v), p1 & p2 & p3, v)


def test_2_four_bases_vectors(acceptance_log, four_bases):
    rows = {
        "0111": ("0.4", "1", "1", "0.1"),
        "0110": ("0.4", "1", "1", "0.1"),
        "0011": ("0.1", "0.4", "0.4", "0.1"),
        "0010": ("0.1", "0.4", "0.4", "0.1"),
        "1111": ("1", "0.4", "1", "0.4"),
        "1110": ("1", "0.4", "1", "0.4"),
    }
    with criterion(acceptance_log, 2, "four-base profile: degree vectors"):
        E, mu, v = four_bases
        assert sorted(rows) == [w.bitstring for w in enumerate_models(mu, v)]
        for bits, expected in rows.items():
            got = degree_vector(E, Interpretation.from_bitstring(v, bits))
            assert got == tuple(F(x) for x in expected), bits


def test_3_four_bases_trace(acceptance_log, four_bases):
    with criterion(acceptance_log, 3, "four-base profile: merge trace", budget=1):
        E, mu, v = four_bases
        formula, trace = merge_syntactic(E, mu, v)
        first, second = trace.iterations
        assert first.inc == 0
        (pair,) = first.kept_pairs
        assert pair.I == (1, 2, 3) and pair.cardm == [(1, 3), (2, 3)]
        assert second.inc == F(3, 5)
        (survivor,) = trace.final
        assert survivor.remaining == ()
        assert equivalent(survivor.formula, p1 & p2 & p3, v)
        assert equivalent(formula, p1 & p2 & p3, v)


def test_4_inc_sequence(acceptance_log, four_bases):
    with criterion(acceptance_log, 4, "Inc sequence follows the result's distinct degrees"):
        E, mu, v = four_bases
        _, trace = merge_syntactic(E, mu, v)
        for w in merge_semantic(E, mu, v):
            vector = degree_vector(E, w)
            assert vector == (1, F(2, 5), 1, F(2, 5))
            distinct = sorted(set(vector), reverse=True)
            assert distinct == [1, F(2, 5)]
            assert [it.inc for it in trace.iterations] == [1 - a for a in distinct] == [0, F(3, 5)]


def test_5_drowning_golden(acceptance_log, drowning):
    with criterion(acceptance_log, 5, "drowning-effect example"):
        E, mu, v = drowning
        formula, _ = merge_syntactic(E, mu, v)
        assert equivalent(formula, mu & p1 & p2 & p3, v)
        assert merged_entails(E, mu, p1, v)
        assert merged_entails(E, mu, p3, v)


def test_6_oracle_equivalence(acceptance_log):
    with criterion(acceptance_log, 6, "syntactic = semantic on 500 instances", budget=60) as notes:
        for seed in range(500):
            params = GeneratorParams(seed=seed, atoms=8, bases=5, min_bases=0, max_formulas=6)
            E, mu = generate_instance(params)
            v = params.vocabulary
            formula, _ = merge_syntactic(E, mu, v)
            assert truth_table(formula, v) == merge_table(E, mu, v), f"seed {seed}"
        notes.append("500 instances")


def _suite_line(report, ids):
    return ", ".join(
        f"{pid} {report.counts[pid][FAIL]}/{report.applicable(pid)} failed" for pid in ids if report.counts[pid][FAIL]
    )


def test_7_postulate_suite(acceptance_log):
    with criterion(acceptance_log, 7, "P1-P10 on 1000 instances each") as notes:
        report = run_suite(seed=1, trials=1000, ids=POSTULATES)
        assert report.applicable("P9") >= 50
        assert report.applicable("P6") >= 200 and report.applicable("P8") >= 200
        notes.append(f"applicable P6={report.applicable('P6')} P8={report.applicable('P8')} P9={report.applicable('P9')}")
        failures = _suite_line(report, POSTULATES)
        assert not failures, "counterexamples: " + failures


def test_8_reductions(acceptance_log):
    with criterion(acceptance_log, 8, "GMin, C4 and split-profile reductions on 300 profiles") as notes:
        params = GeneratorParams(atoms=4, bases=4, min_bases=0, max_formulas=3, consistency_bias=0.7)
        v = params.vocabulary
        for seed in range(300):
            E, mu = generate_classical(params.with_seed(seed))
            lifted = merge_semantic(lift_profile(E), mu, v)
            assert merge_gmin(E, mu, v) == lifted, f"gmin, seed {seed}"
            assert equivalent(merge_c4(E, mu), models_to_formula(lifted, v), v), f"c4, seed {seed}"
            split = merge_semantic(lift_profile(E, reading="set"), mu, v)
            assert equivalent(merge_c4(E, mu, reading="set"), models_to_formula(split, v), v), f"split, seed {seed}"
        notes.append("300 profiles")


def test_9_ic_suite(acceptance_log):
    with criterion(acceptance_log, 9, "IC0-IC8 on 500 classical instances each") as notes:
        report = run_suite(seed=1, trials=500, ids=IC_POSTULATES)
        notes.append(f"applicable IC6={report.applicable('IC6')} IC8={report.applicable('IC8')}")
        failures = _suite_line(report, IC_POSTULATES)
        assert not failures, "counterexamples: " + failures

"""Executable checks of the rationality postulates for the lexicographic operator.

P1-P10 quantify over possibilistic profiles; IC0-IC8 are the classical
postulates, checked on weight-1 profiles whose bases are single formulas.
Every merge performed by a check runs both the syntactic algorithm and the
model-theoretic definition; a disagreement is reported as a failure.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable

from .generators import IC_POSTULATES, POSTULATES, GeneratorParams, Instance, make_instance
from .logic import Formula, Vocabulary, conjoin, entails, equivalent, is_consistent, to_text, truth_table
from .possibilistic import (
    ONE,
    PossibilisticKB,
    Profile,
    inc_profile,
    pi_consequence,
    profile_equivalent_s,
)
from .report import profile_json, rational
from .semantic import merge_table
from .syntactic import merge_syntactic

ALL_IDS = POSTULATES + IC_POSTULATES

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


def priority_degree(Bp: PossibilisticKB, B: PossibilisticKB) -> Fraction:
    """Weight of the least certain pair Bp shares with B; 1 if they share none."""
    return min((wf.weight for wf in Bp if wf in B), default=ONE)


def conflict_sets(
    B1: PossibilisticKB, B2: PossibilisticKB, mu: Formula, v: Vocabulary | None = None
) -> list[PossibilisticKB]:
    """Subsets of B1 + B2 minimally inconsistent with mu, smallest first."""
    pool = B1.union(B2).formulas
    if v is None:
        v = Vocabulary(tuple(sorted(B1.atoms() | B2.atoms() | mu.atoms())))
    mu_table = truth_table(mu, v)
    tables = [truth_table(wf.formula, v) for wf in pool]
    found: list[frozenset[int]] = []
    for size in range(len(pool) + 1):
        for C in combinations(range(len(pool)), size):
            members = frozenset(C)
            if any(f <= members for f in found):
                continue
            t = mu_table
            for i in C:
                t &= tables[i]
            # smaller inconsistent subsets were already found, so this one is minimal
            if not t:
                found.append(members)
    return [PossibilisticKB([pool[i] for i in sorted(C)]) for C in found]


def equally_prioritized(B1: PossibilisticKB, B2: PossibilisticKB, mu: Formula, v: Vocabulary | None = None) -> bool:
    return all(priority_degree(C, B1) == priority_degree(C, B2) for C in conflict_sets(B1, B2, mu, v))


@dataclass
class PostulateVerdict:
    postulate: str
    outcome: str
    instance: dict[str, Any]
    detail: str = ""

    @property
    def counterexample(self) -> dict[str, Any] | None:
        return self.instance if self.outcome == FAIL else None

    def to_json(self) -> dict[str, Any]:
        return {
            "postulate": self.postulate,
            "outcome": self.outcome,
            "detail": self.detail,
            "instance": self.instance,
        }


def instance_json(inst: Instance) -> dict[str, Any]:
    out: dict[str, Any] = {
        "vocabulary": list(inst.vocabulary.atoms),
        "profile": profile_json(inst.profile),
        "constraint": to_text(inst.constraint),
    }
    if inst.profile2 is not None:
        out["profile2"] = profile_json(inst.profile2)
    if inst.constraint2 is not None:
        out["constraint2"] = to_text(inst.constraint2)
    if inst.note:
        out["note"] = inst.note
    return out


class Disagreement(AssertionError):
    pass


def merged(E: Profile, mu: Formula, v: Vocabulary) -> Formula:
    """Syntactic merge result, after checking it against the semantic one."""
    result, _ = merge_syntactic(E, mu, v)
    if truth_table(result, v) != merge_table(E, mu, v):
        raise Disagreement(f"syntactic and semantic merges differ for constraint {to_text(mu)}")
    return result


def _check(pid: str, inst: Instance) -> tuple[str, str]:
    v = inst.vocabulary
    E, mu = inst.profile, inst.constraint
    ic = pid.startswith("IC")
    n = int(pid[2:] if ic else pid[1:])
    if ic and n <= 3:
        # IC0-IC3 line up with P1-P4; IC5-IC8 already share P5-P8's numbers
        n += 1

    if pid == "IC4":
        K1, K2 = E[0].classical, E[1].classical
        if not (entails(K1, mu, v) and entails(K2, mu, v)):
            return NOT_APPLICABLE, "a base does not entail the constraint"
        d = merged(E, mu, v)
        c1, c2 = is_consistent([d, *K1], v), is_consistent([d, *K2], v)
        return (PASS if c1 == c2 else FAIL), f"consistent with K1: {c1}, with K2: {c2}"

    if n == 1:
        return (PASS if entails([merged(E, mu, v)], mu, v) else FAIL), ""
    if n == 2:
        if not is_consistent([mu], v):
            return NOT_APPLICABLE, "constraint inconsistent"
        return (PASS if is_consistent([merged(E, mu, v)], v) else FAIL), ""
    if n == 3:
        everything = [f for B in E for f in B.classical] + [mu]
        if not is_consistent(everything, v):
            return NOT_APPLICABLE, "profile inconsistent with constraint"
        ok = equivalent(merged(E, mu, v), conjoin(everything), v)
        return (PASS if ok else FAIL), ""
    if n == 4:
        E2, mu2 = inst.profile2, inst.constraint2
        if not (profile_equivalent_s(E, E2, v) and equivalent(mu, mu2, v)):
            return NOT_APPLICABLE, "profiles or constraints not equivalent"
        ok = equivalent(merged(E, mu, v), merged(E2, mu2, v), v)
        return (PASS if ok else FAIL), ""
    if n in (5, 6):
        E2 = inst.profile2
        d1, d2, d12 = merged(E, mu, v), merged(E2, mu, v), merged(E + E2, mu, v)
        if n == 5:
            return (PASS if entails([d1, d2], d12, v) else FAIL), ""
        if not is_consistent([d1, d2], v):
            return NOT_APPLICABLE, "the two merges disagree"
        return (PASS if entails([d12], d1 & d2, v) else FAIL), ""
    if n in (7, 8):
        mu2 = inst.constraint2
        d1, d12 = merged(E, mu, v), merged(E, mu & mu2, v)
        if n == 7:
            return (PASS if entails([d1, mu2], d12, v) else FAIL), ""
        if not is_consistent([d1, mu2], v):
            return NOT_APPLICABLE, "second constraint inconsistent with the merge"
        return (PASS if entails([d12], d1 & mu2, v) else FAIL), ""
    if n == 9:
        B1, B2 = E[0], E[1]
        if not (is_consistent(B1.classical, v) and is_consistent(B2.classical, v)):
            return NOT_APPLICABLE, "a base is inconsistent"
        a1, a2 = pi_consequence(B1, mu, v), pi_consequence(B2, mu, v)
        if a1 is None or a1 != a2:
            return NOT_APPLICABLE, f"consequence degrees {a1} and {a2} differ"
        if not equally_prioritized(B1, B2, mu, v):
            return NOT_APPLICABLE, "bases not equally prioritized"
        d = merged(E, mu, v)
        c1, c2 = is_consistent([d, *B1.classical], v), is_consistent([d, *B2.classical], v)
        return (PASS if c1 == c2 else FAIL), f"degree {a1}; consistent with B1: {c1}, with B2: {c2}"
    if n == 10:
        inc = inc_profile(E, mu, v)
        d = merged(E, mu, v)
        missed = [wf for B in E for wf in B if wf.weight > inc and not entails([d], wf.formula, v)]
        if missed:
            return FAIL, f"Inc = {rational(inc)}; not entailed: {', '.join(map(str, missed))}"
        return PASS, f"Inc = {rational(inc)}"
    raise ValueError(f"unknown postulate {pid!r}")


def check_postulate(postulate: str, instance: Instance) -> PostulateVerdict:
    pid = postulate.upper()
    if pid not in ALL_IDS:
        raise ValueError(f"unknown postulate {postulate!r}")
    try:
        outcome, detail = _check(pid, instance)
    except Disagreement as exc:
        outcome, detail = FAIL, str(exc)
    return PostulateVerdict(pid, outcome, instance_json(instance), detail)


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------


@dataclass
class SuiteReport:
    seed: int
    trials: int
    counts: dict[str, Counter] = field(default_factory=dict)
    failures: list[PostulateVerdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def applicable(self, pid: str) -> int:
        c = self.counts.get(pid, Counter())
        return c[PASS] + c[FAIL]

    def to_json(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "ok": self.ok,
            "counts": {
                pid: {k: c[k] for k in (PASS, FAIL, NOT_APPLICABLE)} for pid, c in self.counts.items()
            },
            "failures": [f.to_json() for f in self.failures],
        }


def trial_rng(seed: int, trial: int, postulate: str) -> random.Random:
    return random.Random(f"{seed}/{trial}/{postulate}")


def run_suite(
    seed: int,
    trials: int,
    ids: Iterable[str] = ALL_IDS,
    params: GeneratorParams | None = None,
) -> SuiteReport:
    """Check every postulate in ``ids`` on ``trials`` fresh instances each."""
    params = GeneratorParams(seed=seed) if params is None else params.with_seed(seed)
    ids = [i.upper() for i in ids]
    report = SuiteReport(seed, trials, {pid: Counter() for pid in ids})
    for t in range(trials):
        for pid in ids:
            inst = make_instance(pid, params, trial_rng(seed, t, pid))
            verdict = check_postulate(pid, inst)
            report.counts[pid][verdict.outcome] += 1
            if verdict.outcome == FAIL:
                report.failures.append(verdict)
    return report

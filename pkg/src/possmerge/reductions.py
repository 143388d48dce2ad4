"""Classical (unweighted) profiles and the operators lexicographic merging reduces to.

A classical base is a sequence of formulas read conjunctively.  Two readings
of a classical profile matter here and are kept apart explicitly:

* ``"formula"``: each base is one unit (its conjunction).  This is the
  reading under which merging the weight-1 lift equals the cardinality
  operator C4 and the drastic-distance GMin operator.
* ``"set"``: the profile is the set of all its formulas, each its own unit.
  Splitting the profile into deduplicated singleton bases turns this reading
  into the first one.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .logic import (
    FALSE,
    Formula,
    Interpretation,
    Vocabulary,
    atoms_of,
    conjoin,
    disjoin,
    evaluate,
    indices,
    table_of,
    truth_table,
)
from .possibilistic import ONE, PossibilisticKB, Profile, WeightedFormula

ClassicalKB = Sequence[Formula]
ClassicalProfile = Sequence[ClassicalKB]


def classical_vocabulary(E: ClassicalProfile, *extra: Formula) -> Vocabulary:
    return Vocabulary(tuple(sorted(atoms_of([f for K in E for f in K] + list(extra)))))


def lift_classical(K: Iterable[Formula], name: str | None = None) -> PossibilisticKB:
    """Weight every formula of K with 1."""
    return PossibilisticKB([WeightedFormula(f, ONE) for f in K], name=name)


def lift_profile(E: ClassicalProfile, reading: str = "formula") -> Profile:
    """Weight-1 lift of a classical profile under the given reading."""
    if reading == "formula":
        return Profile(lift_classical([conjoin(K)]) for K in E)
    if reading == "set":
        return Profile(lift_classical(K) for K in split_profile(E))
    raise ValueError(f"unknown reading {reading!r}")


def drastic_distance(w: Interpretation, K: ClassicalKB) -> int:
    """0 if w is a model of K, 1 otherwise (also 1 everywhere when K is inconsistent)."""
    return 0 if all(evaluate(f, w) for f in K) else 1


def merge_gmin(E: ClassicalProfile, mu: Formula, v: Vocabulary) -> list[Interpretation]:
    """Models of mu whose ascending list of drastic distances to the bases is lex-minimal."""
    tables = [table_of(K, v) for K in E]
    best = None
    chosen: list[int] = []
    for k in indices(truth_table(mu, v)):
        dists = sorted(0 if t >> k & 1 else 1 for t in tables)
        if best is None or dists < best:
            best, chosen = dists, [k]
        elif dists == best:
            chosen.append(k)
    return [Interpretation.from_index(v, k) for k in chosen]


def cardm_subprofiles(E: ClassicalProfile, mu: Formula, v: Vocabulary | None = None) -> list[tuple[int, ...]]:
    """Cardinality-maximal sub-profiles of E consistent with mu, as 0-based index tuples.

    Empty when mu itself is inconsistent.
    """
    if v is None:
        v = classical_vocabulary(E, mu)
    mu_table = truth_table(mu, v)
    if not mu_table:
        return []
    tables = [table_of(K, v) for K in E]
    for size in range(len(E), -1, -1):
        found = []
        for F in combinations(range(len(E)), size):
            t = mu_table
            for i in F:
                t &= tables[i]
            if t:
                found.append(F)
        if found:
            return found
    return []


def merge_c4(E: ClassicalProfile, mu: Formula, reading: str = "formula") -> Formula:
    """Disjunction over CardM(E, mu) of the chosen bases conjoined with mu."""
    if reading == "set":
        E = split_profile(E)
    elif reading != "formula":
        raise ValueError(f"unknown reading {reading!r}")
    family = cardm_subprofiles(E, mu)
    if not family:
        return FALSE
    return disjoin(conjoin([f for i in F for f in E[i]] + [mu]) for F in family)


def split_profile(E: ClassicalProfile) -> list[tuple[Formula]]:
    """One singleton base per formula, duplicates across the profile kept once."""
    seen = dict.fromkeys(f for K in E for f in K)
    return [(f,) for f in seen]

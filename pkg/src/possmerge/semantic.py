"""Model-theoretic lexicographic merging.

Each interpretation gets the vector of its possibility degrees under the
bases of the profile.  Vectors are compared after sorting each in descending
order, and the merged base is the set of models of the constraint whose
vector is maximal.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence

from .logic import (
    FALSE,
    Formula,
    Interpretation,
    Vocabulary,
    MAX_ATOMS,
    check_size,
    disjoin,
    indices,
    minterm,
    truth_table,
)
from .possibilistic import Profile, distribution, possibility

DegreeVector = tuple[Fraction, ...]


class Cmp(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def degree_vector(E: Profile, w: Interpretation) -> DegreeVector:
    return tuple(possibility(B, w) for B in E)


def lex_key(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Sort key realising the lexicographic order: degrees sorted descending.

    For equal-length vectors, comparing keys with the built-in tuple order is
    exactly the positional comparison of the descending rearrangements.
    """
    return tuple(sorted(a, reverse=True))


def lex_compare(a: Sequence[Fraction], b: Sequence[Fraction]) -> Cmp:
    if len(a) != len(b):
        raise ValueError(f"cannot compare vectors of lengths {len(a)} and {len(b)}")
    ka, kb = lex_key(a), lex_key(b)
    if ka == kb:
        return Cmp.EQUAL
    return Cmp.LESS if ka < kb else Cmp.GREATER


def merge_table(E: Profile, mu: Formula, v: Vocabulary) -> int:
    """Truth table (over ``v``) of the lex-maximal models of ``mu``."""
    candidates = truth_table(mu, v)
    if not candidates:
        return 0
    dists = [distribution(B, v) for B in E]
    best: tuple[Fraction, ...] | None = None
    cohort = 0
    for k in indices(candidates):
        key = lex_key([d[k] for d in dists])
        if best is None or key > best:
            best, cohort = key, 1 << k
        elif key == best:
            cohort |= 1 << k
    return cohort


def merge_semantic(E: Profile, mu: Formula, v: Vocabulary, cap: int = MAX_ATOMS) -> list[Interpretation]:
    """Models of ``mu`` whose degree vector is lexicographically maximal, ascending."""
    check_size(v, cap)
    return [Interpretation.from_index(v, k) for k in indices(merge_table(E, mu, v))]


def models_to_formula(ms: Iterable[Interpretation], v: Vocabulary) -> Formula:
    """Disjunction of full minterms, one per model, in ascending order."""
    ordered = sorted(ms, key=lambda w: w.index)
    for w in ordered:
        if w.vocabulary != v:
            raise ValueError("interpretation over a different vocabulary")
    if not ordered:
        return FALSE
    return disjoin(minterm(w) for w in ordered)

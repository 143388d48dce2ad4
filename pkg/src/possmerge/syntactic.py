"""Syntactic lexicographic merging.

Builds the merged classical base directly from strict cuts of the input
bases.  The search keeps a set of pairs ``(phi, remaining)``: ``phi`` is the
formula set merged so far and ``remaining`` the bases still to be merged
under it.  Each round computes the global inconsistency degree, discards
pairs that cannot reach it, and extends the survivors with
cardinality-maximal consistent groups of bases.  The loop stops when no pair
has bases left; the result is the disjunction of the surviving ``phi``.

Base indices in the trace are 1-based positions in the input profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .logic import (
    Formula,
    Vocabulary,
    MAX_ATOMS,
    check_size,
    conjoin,
    disjoin,
    entails,
    table_of,
)
from .possibilistic import ONE, ZERO, PossibilisticKB, Profile, cut, vocabulary_of

IndexSet = tuple[int, ...]


@dataclass(frozen=True)
class Pair:
    phi: tuple[Formula, ...]
    remaining: IndexSet  # 0-based

    @property
    def formula(self) -> Formula:
        return conjoin(self.phi)

    def key(self) -> tuple[frozenset[Formula], IndexSet]:
        return frozenset(self.phi), self.remaining


@dataclass
class PairRecord:
    """What one surviving pair did during one round."""

    phi: Formula
    remaining: list[str]
    inc_s: Fraction
    I: IndexSet
    mcs: list[IndexSet]
    cardm: list[IndexSet]
    maxcs: int | None  # None stands for minus infinity
    kept: bool = False


@dataclass
class TraceIteration:
    inc: Fraction
    pairs: list[PairRecord]
    maxc: int | None
    dropped: int = 0  # pairs removed because their Inc_S exceeded the global Inc

    @property
    def kept_pairs(self) -> list[PairRecord]:
        return [p for p in self.pairs if p.kept]


@dataclass
class MergeTrace:
    iterations: list[TraceIteration] = field(default_factory=list)
    final: list[Pair] = field(default_factory=list)
    result: Formula | None = None


def _layers(B: PossibilisticKB) -> list[tuple[Fraction, list[Formula]]]:
    by_weight: dict[Fraction, list[Formula]] = {}
    for wf in B:
        by_weight.setdefault(wf.weight, []).append(wf.formula)
    return sorted(by_weight.items(), reverse=True)


def _inc(phi_table: int, layers, v: Vocabulary) -> Fraction:
    """Inconsistency degree of phi (given as a truth table) w.r.t. a base."""
    if not phi_table:
        return ONE
    table = phi_table
    for a, fs in layers:
        table &= table_of(fs, v)
        if not table:
            return a
    return ZERO


def maximal_consistent_index_sets(
    I: Sequence[int],
    phi: Sequence[Formula],
    inc: Fraction,
    bases: Profile | Sequence[PossibilisticKB],
    v: Vocabulary | None = None,
) -> list[IndexSet]:
    """All subset-maximal J of I whose strict inc-cuts are jointly consistent with phi.

    ``I`` holds 0-based positions into ``bases``.  Returned sets are sorted
    tuples, in ascending order.
    """
    bases = list(bases)
    if v is None:
        v = vocabulary_of(Profile(bases), *phi) if phi else vocabulary_of(Profile(bases))
    items = sorted(I)
    phi_table = table_of(phi, v)
    tables = [table_of(cut(bases[j], inc, strict=True), v) for j in items]
    n = len(items)
    joint = [0] * (1 << n)
    joint[0] = phi_table
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        joint[mask] = joint[mask & (mask - 1)] & tables[low]
    found = []
    for mask in range(1 << n):
        if not joint[mask]:
            continue
        if all(not joint[mask | (1 << k)] for k in range(n) if not mask >> k & 1):
            found.append(tuple(items[k] for k in range(n) if mask >> k & 1))
    return sorted(found, key=lambda J: (-len(J), J))


def merge_syntactic(
    E: Profile, mu: Formula, v: Vocabulary | None = None, cap: int = MAX_ATOMS
) -> tuple[Formula, MergeTrace]:
    if v is None:
        v = vocabulary_of(E, mu)
    check_size(v, cap)
    names = E.names()
    layers = [_layers(B) for B in E]
    trace = MergeTrace()

    phis: list[Pair] = [Pair((mu,), tuple(range(len(E))))]
    while any(p.remaining for p in phis):
        sizes = {len(p.remaining) for p in phis}
        assert len(sizes) == 1, f"pairs with unequal remaining profiles: {sizes}"

        phi_tables = [table_of(p.phi, v) for p in phis]
        incs = [{j: _inc(t, layers[j], v) for j in p.remaining} for p, t in zip(phis, phi_tables)]
        inc_s = [min(d.values()) for d in incs]
        inc = min(inc_s)

        survivors = [i for i, s in enumerate(inc_s) if s == inc]
        step = TraceIteration(inc=inc, pairs=[], maxc=None, dropped=len(phis) - len(survivors))
        successors: list[Pair] = []
        seen: set = set()
        contributors: list[PairRecord] = []
        maxc: int | None = None
        for i in survivors:
            pair = phis[i]
            I = tuple(j for j in pair.remaining if incs[i][j] == inc)
            mcs = maximal_consistent_index_sets(I, pair.phi, inc, E, v)
            maxcs = max((len(J) for J in mcs), default=None)
            cardm = [J for J in mcs if len(J) == maxcs]
            record = PairRecord(
                phi=pair.formula,
                remaining=[names[j] for j in pair.remaining],
                inc_s=inc_s[i],
                I=tuple(j + 1 for j in I),
                mcs=[tuple(j + 1 for j in J) for J in mcs],
                cardm=[tuple(j + 1 for j in J) for J in cardm],
                maxcs=maxcs,
            )
            step.pairs.append(record)
            if maxcs is None:
                continue
            candidates = []
            for J in cardm:
                extra = [f for j in J for f in cut(E[j], inc, strict=True)]
                phi_J = tuple(dict.fromkeys(pair.phi + tuple(extra)))
                rest = tuple(j for j in pair.remaining if j not in J)
                candidates.append(Pair(phi_J, rest))
            if maxc is None or maxcs > maxc:
                successors, seen, contributors = [], set(), []
                maxc = maxcs
            if maxcs == maxc:
                contributors.append(record)
                for c in candidates:
                    if c.key() not in seen:
                        seen.add(c.key())
                        successors.append(c)
        for record in contributors:
            record.kept = True
        step.maxc = maxc
        trace.iterations.append(step)
        phis = successors

    result = disjoin(p.formula for p in phis)
    trace.final = phis
    trace.result = result
    return result, trace


def merged_entails(E: Profile, mu: Formula, psi: Formula, v: Vocabulary | None = None) -> bool:
    """Does the merged base entail ``psi``?"""
    if v is None:
        v = vocabulary_of(E, mu, psi)
    result, _ = merge_syntactic(E, mu, v)
    return entails([result], psi, v)

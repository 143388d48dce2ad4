"""Possibilistic knowledge bases and the measures derived from them.

All degrees are :class:`fractions.Fraction`; ties between weights decide
which interpretations are lexicographically maximal, so nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .logic import (
    Formula,
    Interpretation,
    Not,
    Vocabulary,
    atoms_of,
    check_size,
    conjoin,
    evaluate,
    indices,
    is_consistent,
    equivalent,
    table_of,
    truth_table,
    MAX_ATOMS,
)

Weight = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_weight(value: Fraction | int | str) -> Fraction:
    """Exact weight from a Fraction, int or decimal/fraction string ("0.6", "3/5")."""
    if isinstance(value, float):
        raise TypeError("weights must be exact; pass a string or Fraction, not a float")
    return Fraction(value)


@dataclass(frozen=True)
class WeightedFormula:
    formula: Formula
    weight: Fraction

    def __post_init__(self):
        w = as_weight(self.weight)
        if not 0 < w <= 1:
            raise ValueError(f"weight {w} outside (0, 1]")
        object.__setattr__(self, "weight", w)

    def __iter__(self):
        yield self.formula
        yield self.weight

    def __str__(self) -> str:
        return f"({self.formula}, {self.weight})"


class PossibilisticKB:
    """A finite set of weighted formulas.

    Insertion order is kept for deterministic rendering, but equality and
    hashing are set-based: exact duplicates collapse, while the same formula
    may appear with several distinct weights.
    """

    __slots__ = ("name", "_items", "_key")

    def __init__(self, items: Iterable[WeightedFormula | tuple] = (), name: str | None = None):
        seen: dict[WeightedFormula, None] = {}
        for item in items:
            if not isinstance(item, WeightedFormula):
                item = WeightedFormula(*item)
            seen.setdefault(item, None)
        self.name = name
        self._items = tuple(seen)
        self._key = frozenset(self._items)

    @property
    def formulas(self) -> tuple[WeightedFormula, ...]:
        return self._items

    def __iter__(self) -> Iterator[WeightedFormula]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: object) -> bool:
        return item in self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PossibilisticKB):
            return NotImplemented
        return self._key == other._key and self.name == other.name

    def __hash__(self) -> int:
        return hash((self._key, self.name))

    def same_formulas(self, other: PossibilisticKB) -> bool:
        return self._key == other._key

    def union(self, *others: PossibilisticKB | Iterable[WeightedFormula]) -> PossibilisticKB:
        items = list(self._items)
        for o in others:
            items.extend(o)
        return PossibilisticKB(items, name=self.name)

    def intersection(self, other: PossibilisticKB) -> PossibilisticKB:
        return PossibilisticKB([wf for wf in self._items if wf in other._key])

    def renamed(self, name: str | None) -> PossibilisticKB:
        return PossibilisticKB(self._items, name=name)

    @property
    def classical(self) -> tuple[Formula, ...]:
        """B*: the formulas without weights, duplicates removed."""
        return tuple(dict.fromkeys(wf.formula for wf in self._items))

    def weights(self) -> list[Fraction]:
        """Distinct weights, descending."""
        return sorted({wf.weight for wf in self._items}, reverse=True)

    def atoms(self) -> frozenset[str]:
        return atoms_of(wf.formula for wf in self._items)

    def __repr__(self) -> str:
        body = ", ".join(str(wf) for wf in self._items)
        label = f"{self.name} " if self.name else ""
        return f"<PossibilisticKB {label}{{{body}}}>"


class Profile:
    """Ordered multiset of possibilistic bases; ``+`` is multiset union."""

    __slots__ = ("bases",)

    def __init__(self, bases: Iterable[PossibilisticKB] = ()):
        self.bases = tuple(bases)

    def __iter__(self) -> Iterator[PossibilisticKB]:
        return iter(self.bases)

    def __len__(self) -> int:
        return len(self.bases)

    def __getitem__(self, i: int) -> PossibilisticKB:
        return self.bases[i]

    def __add__(self, other: Profile) -> Profile:
        return Profile(self.bases + tuple(other))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return self.bases == other.bases

    def __hash__(self) -> int:
        return hash(self.bases)

    def names(self) -> list[str]:
        return [b.name or f"B{i + 1}" for i, b in enumerate(self.bases)]

    def atoms(self) -> frozenset[str]:
        out: set[str] = set()
        for b in self.bases:
            out |= b.atoms()
        return frozenset(out)

    def __repr__(self) -> str:
        return f"Profile({list(self.bases)!r})"


def kb(*pairs: tuple[Formula, Fraction | int | str], name: str | None = None) -> PossibilisticKB:
    """Shorthand: ``kb((p, "0.9"), (q, "3/5"), name="B1")``."""
    return PossibilisticKB([WeightedFormula(f, as_weight(a)) for f, a in pairs], name=name)


def vocabulary_of(*parts: PossibilisticKB | Profile | Formula) -> Vocabulary:
    names: set[str] = set()
    for part in parts:
        names |= part.atoms()
    return Vocabulary(tuple(sorted(names)))


# ---------------------------------------------------------------------------
# Possibility distribution
# ---------------------------------------------------------------------------


def possibility(B: PossibilisticKB, w: Interpretation) -> Fraction:
    """pi_B(w) under minimum specificity: 1 minus the largest weight w violates."""
    worst = ZERO
    for wf in B:
        if wf.weight > worst and not evaluate(wf.formula, w):
            worst = wf.weight
    return ONE - worst


def distribution(B: PossibilisticKB, v: Vocabulary) -> list[Fraction]:
    """pi_B for every interpretation of ``v``, indexed by interpretation index."""
    check_size(v)
    dist = [ONE] * v.size
    # ascending weights so the heaviest violated formula is written last
    for wf in sorted(B, key=lambda wf: wf.weight):
        degree = ONE - wf.weight
        for k in indices(v.full ^ truth_table(wf.formula, v)):
            dist[k] = degree
    return dist


def possibility_of(B: PossibilisticKB, f: Formula, v: Vocabulary) -> Fraction:
    dist = distribution(B, v)
    return max((dist[k] for k in indices(truth_table(f, v))), default=ZERO)


def necessity_of(B: PossibilisticKB, f: Formula, v: Vocabulary) -> Fraction:
    return ONE - possibility_of(B, Not(f), v)


# ---------------------------------------------------------------------------
# Cuts and inconsistency
# ---------------------------------------------------------------------------


def cut(B: PossibilisticKB, a: Fraction | int | str, strict: bool = False) -> tuple[Formula, ...]:
    """Formulas of B with weight >= a (or > a when ``strict``)."""
    a = as_weight(a)
    keep = (lambda b: b > a) if strict else (lambda b: b >= a)
    return tuple(dict.fromkeys(wf.formula for wf in B if keep(wf.weight)))


def _vocab(B: PossibilisticKB, extra: Sequence[Formula], v: Vocabulary | None) -> Vocabulary:
    if v is not None:
        return v
    return Vocabulary(tuple(sorted(B.atoms() | atoms_of(extra))))


def inconsistency_degree(B: PossibilisticKB, v: Vocabulary | None = None) -> Fraction:
    """Largest weight whose cut is inconsistent, 0 when B* is consistent."""
    v = _vocab(B, (), v)
    check_size(v, MAX_ATOMS)
    table = v.full
    by_weight: dict[Fraction, list[Formula]] = {}
    for wf in B:
        by_weight.setdefault(wf.weight, []).append(wf.formula)
    # cuts grow as the threshold descends, so the running table is the cut's
    for a in sorted(by_weight, reverse=True):
        table &= table_of(by_weight[a], v)
        if not table:
            return a
    return ZERO


def inc_wrt(f: Formula, B: PossibilisticKB, v: Vocabulary | None = None) -> Fraction:
    """Inconsistency degree of ``f`` with respect to B, i.e. Inc(B + {(f, 1)})."""
    return inconsistency_degree(B.union([WeightedFormula(f, ONE)]), _vocab(B, (f,), v))


def inc_profile(E: Profile, mu: Formula, v: Vocabulary | None = None) -> Fraction:
    """Inconsistency degree of the union of all bases of E together with (mu, 1)."""
    union = PossibilisticKB([wf for B in E for wf in B] + [WeightedFormula(mu, ONE)])
    return inconsistency_degree(union, v)


def pi_consequence(B: PossibilisticKB, f: Formula, v: Vocabulary | None = None) -> Fraction | None:
    """Degree ``a`` with B |-pi (f, a), or None when f is not a consequence.

    Candidate degrees are the weights occurring in B.  A threshold above the
    largest weight yields the empty cut, which only entails tautologies; in
    that case (and if the largest weight is below 1) no degree qualifies.
    """
    v = _vocab(B, (f,), v)
    goal = truth_table(f, v)
    weights = B.weights()
    if weights and weights[0] < 1 and v.full & ~goal == 0:
        return None
    for a in weights:
        table = table_of(cut(B, a), v)
        if not table:
            return None
        if table & ~goal == 0:
            return a
    return None


def kb_equivalent_s(B1: PossibilisticKB, B2: PossibilisticKB, v: Vocabulary | None = None) -> bool:
    """Cut-wise equivalence: every a-cut of B1 is classically equivalent to B2's."""
    if v is None:
        v = Vocabulary(tuple(sorted(B1.atoms() | B2.atoms())))
    levels = {wf.weight for wf in B1} | {wf.weight for wf in B2}
    return all(
        equivalent(conjoin(cut(B1, a)), conjoin(cut(B2, a)), v) for a in levels
    )


def profile_equivalent_s(E1: Profile, E2: Profile, v: Vocabulary | None = None) -> bool:
    """True iff some bijection pairs every base of E1 with a cut-wise equivalent base of E2."""
    if len(E1) != len(E2):
        return False
    if v is None:
        v = Vocabulary(tuple(sorted(E1.atoms() | E2.atoms())))
    # cut-wise equivalence is an equivalence relation, so greedy matching is exact
    unmatched = list(E2)
    for B in E1:
        for i, C in enumerate(unmatched):
            if kb_equivalent_s(B, C, v):
                del unmatched[i]
                break
        else:
            return False
    return True


def is_consistent_kb(B: PossibilisticKB) -> bool:
    return is_consistent(B.classical)

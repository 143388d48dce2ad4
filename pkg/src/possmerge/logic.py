"""Propositional formulas, interpretations and model checking over a finite vocabulary.

Consistency and entailment are decided by exhaustive enumeration.  Every
formula is compiled to a truth table stored as a Python ``int`` with one bit
per interpretation (bit ``k`` is the interpretation whose bitstring is ``k``
written in binary), so a consistency check is a handful of big-integer ANDs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_ATOMS = 24

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RESERVED = {"true", "false"}


class LogicError(Exception):
    pass


class UnknownAtomError(LogicError):
    def __init__(self, name: str):
        super().__init__(f"atom {name!r} is not in the vocabulary")
        self.name = name


class VocabularyTooLargeError(LogicError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"vocabulary has {size} atoms, cap is {cap}")
        self.size = size
        self.cap = cap


# ---------------------------------------------------------------------------
# Formula AST
# ---------------------------------------------------------------------------


class Formula:
    """Base class of the formula AST.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def implies(self, other: Formula) -> Formula:
        return Implies(self, other)

    def iff(self, other: Formula) -> Formula:
        return Iff(self, other)

    def atoms(self) -> frozenset[str]:
        return _atoms(self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not _NAME.match(self.name) or self.name in _RESERVED:
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Verum(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Falsum(Formula):
    pass


TRUE = Verum()
FALSE = Falsum()

_BINARY = (And, Or, Implies, Iff)


def atoms(*names: str) -> tuple[Atom, ...]:
    """``p, q = atoms("p", "q")``"""
    return tuple(Atom(n) for n in names)


def conjoin(fs: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``TRUE``."""
    result = None
    for f in fs:
        result = f if result is None else And(result, f)
    return TRUE if result is None else result


def disjoin(fs: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; the empty disjunction is ``FALSE``."""
    result = None
    for f in fs:
        result = f if result is None else Or(result, f)
    return FALSE if result is None else result


@lru_cache(maxsize=1 << 16)
def _atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset((f.name,))
    if isinstance(f, Not):
        return _atoms(f.arg)
    if isinstance(f, _BINARY):
        return _atoms(f.left) | _atoms(f.right)
    return frozenset()


def atoms_of(fs: Iterable[Formula]) -> frozenset[str]:
    out: set[str] = set()
    for f in fs:
        out |= _atoms(f)
    return frozenset(out)


# Precedence, loosest first: <->, ->, |, &, !
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def to_text(f: Formula) -> str:
    """Render in the problem-file syntax with the fewest parentheses that
    still parse back to the identical tree."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Verum):
        return "true"
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return "!" + (inner if _prec(f.arg) >= 5 else f"({inner})")
    p = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    # -> is right-associative, the others left-associative
    if isinstance(f, Implies):
        left_paren = _prec(f.left) <= p
        right_paren = _prec(f.right) < p
    else:
        left_paren = _prec(f.left) < p
        right_paren = _prec(f.right) <= p
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# ---------------------------------------------------------------------------
# Vocabularies and interpretations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vocabulary:
    """Ordered atom names; position ``i`` is bit ``i`` of every bitstring."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        for name in self.atoms:
            if not _NAME.match(name) or name in _RESERVED:
                raise ValueError(f"invalid atom name {name!r}")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("duplicate atom in vocabulary")

    @classmethod
    def of(cls, *items: str | Formula) -> Vocabulary:
        """Sorted vocabulary of the given names and the atoms of the given formulas."""
        names: set[str] = set()
        for item in items:
            if isinstance(item, Formula):
                names |= item.atoms()
            else:
                names.add(item)
        return cls(tuple(sorted(names)))

    @classmethod
    def for_formulas(cls, fs: Iterable[Formula]) -> Vocabulary:
        return cls(tuple(sorted(atoms_of(fs))))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, name: object) -> bool:
        return name in self.atoms

    def index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise UnknownAtomError(name) from None

    def with_atoms(self, names: Iterable[str]) -> Vocabulary:
        """This vocabulary plus any missing names, re-sorted."""
        return Vocabulary(tuple(sorted(set(self.atoms) | set(names))))

    @property
    def size(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def interpretations(self) -> Iterator[Interpretation]:
        for k in range(self.size):
            yield Interpretation.from_index(self, k)


@dataclass(frozen=True)
class Interpretation:
    vocabulary: Vocabulary
    bits: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))
        if len(self.bits) != len(self.vocabulary):
            raise ValueError("interpretation must assign every atom of its vocabulary")

    @classmethod
    def from_bitstring(cls, vocabulary: Vocabulary, bits: str) -> Interpretation:
        if len(bits) != len(vocabulary) or set(bits) - {"0", "1"}:
            raise ValueError(f"bad bitstring {bits!r} for {len(vocabulary)} atoms")
        return cls(vocabulary, tuple(c == "1" for c in bits))

    @classmethod
    def from_index(cls, vocabulary: Vocabulary, index: int) -> Interpretation:
        n = len(vocabulary)
        return cls(vocabulary, tuple(bool(index >> (n - 1 - i) & 1) for i in range(n)))

    @property
    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    @property
    def index(self) -> int:
        k = 0
        for b in self.bits:
            k = (k << 1) | b
        return k

    def __getitem__(self, name: str) -> bool:
        return self.bits[self.vocabulary.index(name)]

    def __str__(self) -> str:
        return self.bitstring


def evaluate(f: Formula, w: Interpretation) -> bool:
    if isinstance(f, Atom):
        return w[f.name]
    if isinstance(f, Not):
        return not evaluate(f.arg, w)
    if isinstance(f, And):
        return evaluate(f.left, w) and evaluate(f.right, w)
    if isinstance(f, Or):
        return evaluate(f.left, w) or evaluate(f.right, w)
    if isinstance(f, Implies):
        return not evaluate(f.left, w) or evaluate(f.right, w)
    if isinstance(f, Iff):
        return evaluate(f.left, w) == evaluate(f.right, w)
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Truth tables
# ---------------------------------------------------------------------------


def check_size(v: Vocabulary, cap: int = MAX_ATOMS) -> None:
    if len(v) > cap:
        raise VocabularyTooLargeError(len(v), cap)


@lru_cache(maxsize=4096)
def _atom_table(v: Vocabulary, i: int) -> int:
    n = len(v)
    run = 1 << (n - 1 - i)
    period = 2 * run
    unit = ((1 << run) - 1) << run
    # repeat `unit` every `period` bits across the 2**n table
    return unit * (((1 << v.size) - 1) // ((1 << period) - 1))


@lru_cache(maxsize=1 << 18)
def truth_table(f: Formula, v: Vocabulary) -> int:
    """Bit ``k`` is set iff the interpretation with index ``k`` satisfies ``f``."""
    if isinstance(f, Atom):
        if f.name not in v:
            raise UnknownAtomError(f.name)
        return _atom_table(v, v.index(f.name))
    if isinstance(f, Not):
        return v.full ^ truth_table(f.arg, v)
    if isinstance(f, And):
        return truth_table(f.left, v) & truth_table(f.right, v)
    if isinstance(f, Or):
        return truth_table(f.left, v) | truth_table(f.right, v)
    if isinstance(f, Implies):
        return (v.full ^ truth_table(f.left, v)) | truth_table(f.right, v)
    if isinstance(f, Iff):
        return v.full ^ (truth_table(f.left, v) ^ truth_table(f.right, v))
    if isinstance(f, Verum):
        return v.full
    if isinstance(f, Falsum):
        return 0
    raise TypeError(f"not a formula: {f!r}")


def table_of(fs: Iterable[Formula], v: Vocabulary) -> int:
    """Truth table of the conjunction of ``fs``."""
    t = v.full
    for f in fs:
        t &= truth_table(f, v)
        if not t:
            break
    return t


def indices(table: int) -> Iterator[int]:
    """Set bits of a truth table, ascending."""
    k = 0
    while table:
        if table & 1:
            yield k
        table >>= 1
        k += 1


def table_models(table: int, v: Vocabulary) -> list[Interpretation]:
    return [Interpretation.from_index(v, k) for k in indices(table)]


def _vocab(fs: Sequence[Formula], v: Vocabulary | None) -> Vocabulary:
    return Vocabulary.for_formulas(fs) if v is None else v


def enumerate_models(f: Formula, v: Vocabulary, cap: int = MAX_ATOMS) -> list[Interpretation]:
    """Models of ``f`` over ``v`` in ascending bitstring order."""
    check_size(v, cap)
    return table_models(truth_table(f, v), v)


def is_consistent(fs: Iterable[Formula], v: Vocabulary | None = None, cap: int = MAX_ATOMS) -> bool:
    fs = list(fs)
    v = _vocab(fs, v)
    check_size(v, cap)
    return table_of(fs, v) != 0


def entails(fs: Iterable[Formula], g: Formula, v: Vocabulary | None = None, cap: int = MAX_ATOMS) -> bool:
    fs = list(fs)
    v = _vocab(fs + [g], v)
    check_size(v, cap)
    return table_of(fs, v) & ~truth_table(g, v) == 0


def equivalent(f: Formula, g: Formula, v: Vocabulary | None = None, cap: int = MAX_ATOMS) -> bool:
    v = _vocab([f, g], v)
    check_size(v, cap)
    return truth_table(f, v) == truth_table(g, v)


def minterm(w: Interpretation) -> Formula:
    """Conjunction of literals true exactly at ``w``."""
    return conjoin(Atom(a) if b else Not(Atom(a)) for a, b in zip(w.vocabulary.atoms, w.bits))

"""Problem-file and formula syntax.

A problem file looks like::

    # optional explicit atom order
    vars p1 p2 p3 p4
    kb B1 { p1 | p2 : 0.9; p3 : 0.9
            p1 : 0.6; p2 : 3/5 }
    constraint (!p1 | p2) & p3

Formula operators, loosest first: ``<->`` (left-assoc), ``->``
(right-assoc), ``|``, ``&``, ``!``.  ``true`` and ``false`` are constants.
Weights are decimals with at most 9 fraction digits or ``num/den``
fractions, and must lie in (0, 1].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Vocabulary,
    to_text,
)
from .possibilistic import PossibilisticKB, Profile, WeightedFormula


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class WeightRangeError(ParseError):
    pass


class UndeclaredAtomError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<number>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op><->|->|[&|!(){}:;])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "newline":
            tokens.append(Token("newline", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "op":
            tokens.append(Token(m.group(), m.group(), line, col))
        elif kind in ("number", "ident"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def parse_weight(text: str, line: int = 1, col: int = 1) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        if "." in num or int(den) == 0:
            raise ParseError(f"malformed fraction {text!r}", line, col)
        value = Fraction(int(num), int(den))
    else:
        if "." in text and len(text.split(".")[1]) > 9:
            raise ParseError(f"weight {text!r} has more than 9 fraction digits", line, col)
        value = Fraction(text)
    if not 0 < value <= 1:
        raise WeightRangeError(f"weight {text} outside (0, 1]", line, col)
    return value


def format_weight(a: Fraction) -> str:
    """Shortest exact rendering: a decimal when one with <= 9 digits exists."""
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    for digits in range(1, 10):
        scaled = a * 10**digits
        if scaled.denominator == 1:
            return f"{a.numerator // a.denominator}.{scaled.numerator % 10**digits:0{digits}d}"
    return f"{a.numerator}/{a.denominator}"


class _Parser:
    def __init__(self, text: str, vocabulary: Vocabulary | None = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0
        self.vocabulary = vocabulary

    def peek(self) -> Token:
        # inside parentheses a formula may span several lines
        while self.depth and self.tokens[self.pos].kind == "newline":
            self.pos += 1
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            shown = tok.text or tok.kind
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok.line, tok.col)
        return tok

    def skip_newlines(self) -> None:
        while self.tokens[self.pos].kind == "newline":
            self.pos += 1

    # formulas -------------------------------------------------------------

    def formula(self) -> Formula:
        f = self.implication()
        while self.peek().kind == "<->":
            self.next()
            f = Iff(f, self.implication())
        return f

    def implication(self) -> Formula:
        f = self.disjunction()
        if self.peek().kind == "->":
            self.next()
            return Implies(f, self.implication())
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek().kind == "|":
            self.next()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek().kind == "!":
            self.next()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.next()
        if tok.kind == "(":
            self.depth += 1
            f = self.formula()
            self.expect(")")
            self.depth -= 1
            return f
        if tok.kind == "ident":
            if tok.text == "true":
                return TRUE
            if tok.text == "false":
                return FALSE
            if self.vocabulary is not None and tok.text not in self.vocabulary:
                raise UndeclaredAtomError(f"atom {tok.text!r} not declared in vars", tok.line, tok.col)
            return Atom(tok.text)
        shown = tok.text or tok.kind
        raise ParseError(f"expected a formula, found {shown!r}", tok.line, tok.col)

    # problem files ---------------------------------------------------------

    def weight(self) -> Fraction:
        tok = self.expect("number")
        return parse_weight(tok.text, tok.line, tok.col)

    def kb_body(self, name: str) -> PossibilisticKB:
        self.skip_newlines()
        self.expect("{")
        items = []
        while True:
            while self.peek().kind in ("newline", ";"):
                self.next()
            if self.peek().kind == "}":
                self.next()
                break
            f = self.formula()
            self.expect(":")
            items.append(WeightedFormula(f, self.weight()))
            if self.peek().kind not in ("newline", ";", "}"):
                tok = self.peek()
                raise ParseError(f"expected ';', newline or '}}', found {tok.text or tok.kind!r}", tok.line, tok.col)
        return PossibilisticKB(items, name=name)

    def end_of_statement(self) -> None:
        tok = self.peek()
        if tok.kind not in ("newline", "eof"):
            raise ParseError(f"unexpected {tok.text!r} after statement", tok.line, tok.col)


class Problem(NamedTuple):
    profile: Profile
    constraint: Formula
    vocabulary: Vocabulary


def parse_formula(text: str, vocabulary: Vocabulary | None = None) -> Formula:
    p = _Parser(text, vocabulary)
    p.skip_newlines()
    f = p.formula()
    p.skip_newlines()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected {tok.text!r} after formula", tok.line, tok.col)
    return f


def parse_problem(text: str) -> Problem:
    p = _Parser(text)
    bases: list[PossibilisticKB] = []
    names: set[str] = set()
    constraint: Formula | None = None
    declared: Vocabulary | None = None
    while True:
        p.skip_newlines()
        tok = p.next()
        if tok.kind == "eof":
            break
        if tok.kind != "ident" or tok.text not in ("vars", "kb", "constraint"):
            raise ParseError(f"expected 'vars', 'kb' or 'constraint', found {tok.text!r}", tok.line, tok.col)
        if tok.text == "vars":
            if declared is not None or bases or constraint is not None:
                raise ParseError("'vars' must come first and only once", tok.line, tok.col)
            atoms = []
            while p.peek().kind == "ident":
                a = p.next()
                if a.text in atoms:
                    raise ParseError(f"atom {a.text!r} declared twice", a.line, a.col)
                if a.text in ("true", "false"):
                    raise ParseError(f"{a.text!r} is reserved", a.line, a.col)
                atoms.append(a.text)
            declared = Vocabulary(tuple(atoms))
            p.vocabulary = declared
        elif tok.text == "kb":
            name = p.expect("ident")
            if name.text in names:
                raise ParseError(f"duplicate knowledge base name {name.text!r}", name.line, name.col)
            names.add(name.text)
            bases.append(p.kb_body(name.text))
        else:
            if constraint is not None:
                raise ParseError("more than one constraint", tok.line, tok.col)
            constraint = p.formula()
        p.end_of_statement()

    profile = Profile(bases)
    constraint = TRUE if constraint is None else constraint
    if declared is None:
        vocabulary = Vocabulary(tuple(sorted(profile.atoms() | constraint.atoms())))
    else:
        vocabulary = declared
    return Problem(profile, constraint, vocabulary)


def format_problem(profile: Profile, constraint: Formula, vocabulary: Vocabulary | None = None) -> str:
    """Render a problem in the file syntax; parsing the output gives the same problem."""
    lines = []
    if vocabulary is not None:
        lines.append(" ".join(["vars", *vocabulary.atoms]).rstrip())
    for name, B in zip(profile.names(), profile):
        entries = [f"{to_text(wf.formula)} : {format_weight(wf.weight)}" for wf in B]
        lines.append(f"kb {name} {{ {'; '.join(entries)} }}" if entries else f"kb {name} {{}}")
    lines.append(f"constraint {to_text(constraint)}")
    return "\n".join(lines) + "\n"

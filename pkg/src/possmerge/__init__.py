"""Lexicographic merging of possibilistic knowledge bases."""

from .logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Interpretation,
    Not,
    Or,
    Vocabulary,
    atoms,
    conjoin,
    disjoin,
    entails,
    enumerate_models,
    equivalent,
    evaluate,
    is_consistent,
)
from .possibilistic import PossibilisticKB, Profile, WeightedFormula, kb
from .semantic import degree_vector, lex_compare, merge_semantic, models_to_formula
from .syntactic import merge_syntactic, merged_entails
from .syntax import parse_formula, parse_problem

__version__ = "0.1.0"

__all__ = [
    "FALSE",
    "TRUE",
    "And",
    "Atom",
    "Formula",
    "Iff",
    "Implies",
    "Interpretation",
    "Not",
    "Or",
    "Vocabulary",
    "atoms",
    "conjoin",
    "disjoin",
    "entails",
    "enumerate_models",
    "equivalent",
    "evaluate",
    "is_consistent",
    "PossibilisticKB",
    "Profile",
    "WeightedFormula",
    "kb",
    "degree_vector",
    "lex_compare",
    "merge_semantic",
    "models_to_formula",
    "merge_syntactic",
    "merged_entails",
    "parse_formula",
    "parse_problem",
]

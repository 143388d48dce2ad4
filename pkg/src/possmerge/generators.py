"""Seeded random instances for the postulate and oracle-equivalence suites.

Everything is driven by :class:`random.Random` instances, so any instance is
reproducible from its seed and parameters.  Bases are always drawn
consistent: every formula is flipped, if needed, to agree with a hidden
witness interpretation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .logic import (
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Interpretation,
    Not,
    Or,
    Vocabulary,
    conjoin,
    evaluate,
)
from .possibilistic import ONE, PossibilisticKB, Profile, WeightedFormula
from .semantic import merge_semantic

TENTHS = tuple(Fraction(k, 10) for k in range(1, 11))


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 1
    atoms: int = 4
    bases: int = 3  # upper bound; 0 forces the empty profile
    min_bases: int = 1
    min_formulas: int = 1
    max_formulas: int = 3
    weights: tuple[Fraction, ...] = TENTHS
    depth: int = 2  # nesting bound for base formulas and constraints
    consistency_bias: float = 0.9  # chance that the constraint is forced satisfiable

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(sorted(Fraction(w) for w in self.weights)))
        if self.atoms < 1:
            raise ValueError("atoms must be positive")
        if self.bases < 0 or self.min_bases < 0 or self.min_formulas < 1:
            raise ValueError("counts must be non-negative (formulas per base at least 1)")
        if self.max_formulas < self.min_formulas or self.depth < 0:
            raise ValueError("bad formula bounds")
        if not self.weights or any(not 0 < w <= 1 for w in self.weights):
            raise ValueError("weight grid must be a nonempty subset of (0, 1]")
        if not 0 <= self.consistency_bias <= 1:
            raise ValueError("consistency_bias must lie in [0, 1]")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"p{i}" for i in range(1, self.atoms + 1))

    @property
    def vocabulary(self) -> Vocabulary:
        return Vocabulary(self.names)

    def with_seed(self, seed: int) -> GeneratorParams:
        return replace(self, seed=seed)


def random_formula(rng: random.Random, names: Sequence[str], depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.35:
        a = Atom(rng.choice(names))
        return Not(a) if rng.random() < 0.5 else a
    op = rng.choices((And, Or, Implies, Iff, Not), weights=(4, 4, 2, 1, 1))[0]
    if op is Not:
        return Not(random_formula(rng, names, depth - 1))
    return op(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def random_witness(rng: random.Random, v: Vocabulary) -> Interpretation:
    return Interpretation(v, tuple(rng.random() < 0.5 for _ in v.atoms))


def satisfied_by(f: Formula, w: Interpretation) -> Formula:
    """``f`` if w satisfies it, otherwise its negation (stripping a leading '!')."""
    if evaluate(f, w):
        return f
    return f.arg if isinstance(f, Not) else Not(f)


def random_kb(
    rng: random.Random,
    params: GeneratorParams,
    name: str | None = None,
    witness: Interpretation | None = None,
    weights: Sequence[Fraction] | None = None,
) -> PossibilisticKB:
    v = params.vocabulary
    if witness is None:
        witness = random_witness(rng, v)
    grid = params.weights if weights is None else weights
    items = []
    for _ in range(rng.randint(params.min_formulas, params.max_formulas)):
        f = satisfied_by(random_formula(rng, params.names, params.depth), witness)
        items.append(WeightedFormula(f, rng.choice(grid)))
    return PossibilisticKB(items, name=name)


def random_profile(
    rng: random.Random, params: GeneratorParams, witness: Interpretation | None = None, prefix: str = "B"
) -> Profile:
    count = 0 if params.bases == 0 else rng.randint(min(params.min_bases, params.bases), params.bases)
    return Profile(random_kb(rng, params, f"{prefix}{i + 1}", witness) for i in range(count))


def random_constraint(
    rng: random.Random, params: GeneratorParams, witness: Interpretation | None = None
) -> Formula:
    f = random_formula(rng, params.names, params.depth)
    if witness is not None:
        return satisfied_by(f, witness)
    if rng.random() < params.consistency_bias:
        return satisfied_by(f, random_witness(rng, params.vocabulary))
    if rng.random() < 0.2:
        return And(f, Not(f))
    return f


def generate_instance(params: GeneratorParams) -> tuple[Profile, Formula]:
    """A random (profile, constraint) pair, determined by ``params`` alone."""
    rng = random.Random(params.seed)
    E = random_profile(rng, params)
    return E, random_constraint(rng, params)


def generate_classical(params: GeneratorParams) -> tuple[list[tuple[Formula, ...]], Formula]:
    """A random unweighted profile and constraint.

    Unlike the weighted generator, bases here are not forced consistent and a
    base is occasionally repeated, so that duplicate and contradictory bases
    reach the classical operators.
    """
    rng = random.Random(params.seed)
    count = 0 if params.bases == 0 else rng.randint(min(params.min_bases, params.bases), params.bases)
    E = []
    for _ in range(count):
        size = rng.randint(params.min_formulas, params.max_formulas)
        witness = random_witness(rng, params.vocabulary) if rng.random() < params.consistency_bias else None
        fs = [random_formula(rng, params.names, params.depth) for _ in range(size)]
        E.append(tuple(fs if witness is None else (satisfied_by(f, witness) for f in fs)))
    if E and rng.random() < 0.2:
        E.append(rng.choice(E))
    return E, random_constraint(rng, params)


# ---------------------------------------------------------------------------
# Equivalence-preserving rewrites
# ---------------------------------------------------------------------------


def rewrite_formula(rng: random.Random, f: Formula) -> Formula:
    """A classically equivalent variant of ``f``."""
    if isinstance(f, (And, Or, Implies, Iff)):
        left, right = rewrite_formula(rng, f.left), rewrite_formula(rng, f.right)
        if isinstance(f, Implies):
            out = Or(Not(left), right) if rng.random() < 0.3 else Implies(left, right)
        elif isinstance(f, And) and rng.random() < 0.2:
            out = Not(Or(Not(left), Not(right)))
        elif rng.random() < 0.5 and not isinstance(f, Implies):
            out = type(f)(right, left)
        else:
            out = type(f)(left, right)
    elif isinstance(f, Not):
        out = Not(rewrite_formula(rng, f.arg))
    else:
        out = f
    if rng.random() < 0.15:
        out = Not(Not(out))
    return out


def rewrite_kb(rng: random.Random, B: PossibilisticKB) -> PossibilisticKB:
    """A cut-wise equivalent base with different syntax."""
    items = [WeightedFormula(rewrite_formula(rng, wf.formula), wf.weight) for wf in B]
    if len(items) >= 2 and rng.random() < 0.3:
        # fuse two entries of equal weight into one conjunction
        by_weight: dict[Fraction, list[int]] = {}
        for i, wf in enumerate(items):
            by_weight.setdefault(wf.weight, []).append(i)
        groups = [g for g in by_weight.values() if len(g) >= 2]
        if groups:
            i, j = rng.sample(rng.choice(groups), 2)
            fused = WeightedFormula(And(items[i].formula, items[j].formula), items[i].weight)
            items = [wf for k, wf in enumerate(items) if k not in (i, j)] + [fused]
    if items and rng.random() < 0.2:
        a = Atom(rng.choice(sorted(B.atoms()) or ["p1"]))
        items.append(WeightedFormula(Or(a, Not(a)), rng.choice([wf.weight for wf in items])))
    rng.shuffle(items)
    return PossibilisticKB(items, name=B.name)


def rewrite_profile(rng: random.Random, E: Profile) -> Profile:
    bases = [rewrite_kb(rng, B) for B in E]
    rng.shuffle(bases)
    return Profile(bases)


# ---------------------------------------------------------------------------
# Postulate instances
# ---------------------------------------------------------------------------


@dataclass
class Instance:
    """Everything a postulate quantifies over.  Unused slots stay None."""

    vocabulary: Vocabulary
    profile: Profile
    constraint: Formula
    profile2: Profile | None = None
    constraint2: Formula | None = None
    note: str = ""
    meta: dict = field(default_factory=dict)


POSTULATES = tuple(f"P{i}" for i in range(1, 11))
IC_POSTULATES = tuple(f"IC{i}" for i in range(0, 9))


def _merge_witness(rng: random.Random, E: Profile, mu: Formula, v: Vocabulary) -> Interpretation | None:
    models = merge_semantic(E, mu, v)
    return rng.choice(models) if models else None


def _classical_profile(
    rng: random.Random, params: GeneratorParams, witness: Interpretation | None = None, prefix: str = "K"
) -> Profile:
    """Weight-1 profile whose bases are single consistent formulas."""
    count = 0 if params.bases == 0 else rng.randint(min(params.min_bases, params.bases), params.bases)
    bases = []
    for i in range(count):
        w = witness if witness is not None else random_witness(rng, params.vocabulary)
        f = satisfied_by(random_formula(rng, params.names, params.depth), w)
        bases.append(PossibilisticKB([WeightedFormula(f, ONE)], name=f"{prefix}{i + 1}"))
    return Profile(bases)


def _rewrite_classical(rng: random.Random, E: Profile) -> Profile:
    bases = [
        PossibilisticKB([WeightedFormula(rewrite_formula(rng, wf.formula), ONE) for wf in B], name=B.name)
        for B in E
    ]
    rng.shuffle(bases)
    return Profile(bases)


def _p9_bases(rng: random.Random, params: GeneratorParams, v: Vocabulary):
    """Two bases that both entail mu; usually with matching degree and priorities."""
    from .possibilistic import pi_consequence
    from .postulates import equally_prioritized

    mu = random_constraint(rng, params, random_witness(rng, v))
    for _ in range(6):
        B = []
        for name in ("B1", "B2"):
            w = rng.choice([x for x in v.interpretations() if evaluate(mu, x)])
            base = random_kb(rng, params, name, w)
            B.append(base.union([WeightedFormula(mu, rng.choice(params.weights))]))
        a1, a2 = pi_consequence(B[0], mu, v), pi_consequence(B[1], mu, v)
        if a1 is not None and a1 == a2 and equally_prioritized(B[0], B[1], mu, v):
            return B, mu, "random"
    # single-layer fallback: every conflict set then has the same degree on both sides
    a = rng.choice(params.weights)
    B = []
    for name in ("B1", "B2"):
        w = rng.choice([x for x in v.interpretations() if evaluate(mu, x)])
        base = random_kb(rng, params, name, w, weights=[a])
        B.append(base.union([WeightedFormula(mu, a)]))
    return B, mu, "single-layer"


def make_instance(postulate: str, params: GeneratorParams, rng: random.Random | None = None) -> Instance:
    """Draw an instance shaped for ``postulate``.

    Instances for the conditional postulates (P3, P6, P8, P9 and their IC
    counterparts) are biased so that the hypothesis holds often enough for
    the check to be informative.
    """
    if rng is None:
        rng = random.Random(params.seed)
    v = params.vocabulary
    pid = postulate.upper()
    if pid.startswith("IC"):
        return _make_ic_instance(pid, params, rng, v)
    if pid not in POSTULATES:
        raise ValueError(f"unknown postulate {postulate!r}")

    if pid == "P9":
        (B1, B2), mu, how = _p9_bases(rng, params, v)
        return Instance(v, Profile([B1, B2]), mu, note=how)

    if pid == "P3" and rng.random() < 0.5:
        w = random_witness(rng, v)
        return Instance(v, random_profile(rng, params, w), random_constraint(rng, params, w), note="shared witness")

    E, mu = random_profile(rng, params), random_constraint(rng, params)
    inst = Instance(v, E, mu)
    if pid == "P4":
        inst.profile2 = rewrite_profile(rng, E)
        inst.constraint2 = rewrite_formula(rng, mu)
    elif pid in ("P5", "P6"):
        w = _merge_witness(rng, E, mu, v) if rng.random() < 0.6 else None
        inst.profile2 = random_profile(rng, params, w, prefix="C")
        inst.note = "agreeing second profile" if w is not None else ""
    elif pid in ("P7", "P8"):
        w = _merge_witness(rng, E, mu, v) if rng.random() < 0.6 else None
        inst.constraint2 = random_constraint(rng, params, w)
        inst.note = "second constraint meets the merge" if w is not None else ""
    return inst


def _make_ic_instance(pid: str, params: GeneratorParams, rng: random.Random, v: Vocabulary) -> Instance:
    if pid not in IC_POSTULATES:
        raise ValueError(f"unknown postulate {pid!r}")
    if pid == "IC4":
        mu = random_constraint(rng, params, random_witness(rng, v))
        models = [x for x in v.interpretations() if evaluate(mu, x)]
        bases = []
        for name in ("K1", "K2"):
            f = satisfied_by(random_formula(rng, params.names, params.depth), rng.choice(models))
            bases.append(PossibilisticKB([WeightedFormula(And(mu, f), ONE)], name=name))
        return Instance(v, Profile(bases), mu)
    if pid == "IC2" and rng.random() < 0.5:
        w = random_witness(rng, v)
        return Instance(v, _classical_profile(rng, params, w), random_constraint(rng, params, w), note="shared witness")

    E, mu = _classical_profile(rng, params), random_constraint(rng, params)
    inst = Instance(v, E, mu)
    if pid == "IC3":
        inst.profile2 = _rewrite_classical(rng, E)
        inst.constraint2 = rewrite_formula(rng, mu)
    elif pid in ("IC5", "IC6"):
        w = _merge_witness(rng, E, mu, v) if rng.random() < 0.6 else None
        inst.profile2 = _classical_profile(rng, params, w, prefix="L")
    elif pid in ("IC7", "IC8"):
        w = _merge_witness(rng, E, mu, v) if rng.random() < 0.6 else None
        inst.constraint2 = random_constraint(rng, params, w)
    return inst


def classical_bases(E: Profile) -> list[tuple[Formula, ...]]:
    """Classical projections of a profile's bases."""
    return [B.classical for B in E]


def conjunction_of(E: Profile) -> Formula:
    return conjoin(f for B in E for f in B.classical)

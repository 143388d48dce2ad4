"""Serialization of merge results, traces and postulate verdicts.

Rationals are always written as ``"p/q"`` or integer strings, never floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .logic import Formula, Interpretation, Vocabulary, to_text
from .possibilistic import PossibilisticKB, Profile
from .syntactic import MergeTrace, PairRecord

FORMATS = ("models", "formula", "json")


def rational(a: Fraction) -> str:
    return str(Fraction(a))


def _pair_json(p: PairRecord) -> dict[str, Any]:
    return {
        "phi": to_text(p.phi),
        "remaining": list(p.remaining),
        "inc_s": rational(p.inc_s),
        "I": list(p.I),
        "mcs": [list(J) for J in p.mcs],
        "cardm": [list(J) for J in p.cardm],
        "maxcs": p.maxcs,
        "kept": p.kept,
    }


def trace_json(trace: MergeTrace, names: Sequence[str] | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "iterations": [
            {
                "inc": rational(it.inc),
                "pairs": [_pair_json(p) for p in it.pairs],
                "maxc": it.maxc,
                "dropped": it.dropped,
            }
            for it in trace.iterations
        ]
    }
    if names is not None:
        out["final"] = [
            {"phi": to_text(p.formula), "remaining": [names[j] for j in p.remaining]}
            for p in trace.final
        ]
    return out


def trace_text(trace: MergeTrace) -> str:
    lines = []
    for n, it in enumerate(trace.iterations, 1):
        maxc = "-inf" if it.maxc is None else it.maxc
        lines.append(f"# iteration {n}: Inc = {rational(it.inc)}, maxc = {maxc}, pairs above Inc dropped: {it.dropped}")
        for p in it.pairs:
            maxcs = "-inf" if p.maxcs is None else p.maxcs
            mark = "kept" if p.kept else "discarded"
            lines.append(
                f"#   [{mark}] phi = {to_text(p.phi)}; remaining = {{{', '.join(p.remaining)}}}; "
                f"Inc_S = {rational(p.inc_s)}; I = {list(p.I)}; MCS = {[list(J) for J in p.mcs]}; "
                f"CardM = {[list(J) for J in p.cardm]}; maxcs = {maxcs}"
            )
    return "\n".join(lines)


def render_result(
    models: Sequence[Interpretation],
    formula: Formula,
    trace: MergeTrace | None,
    format: str,
    vocabulary: Vocabulary | None = None,
    method: str = "syntactic",
    names: Sequence[str] | None = None,
) -> str:
    ordered = sorted(models, key=lambda w: w.index)
    if format == "models":
        body = "".join(w.bitstring + "\n" for w in ordered)
    elif format == "formula":
        body = to_text(formula) + "\n"
    elif format == "json":
        doc = {
            "method": method,
            "vocabulary": list(vocabulary.atoms) if vocabulary is not None else [],
            "models": [w.bitstring for w in ordered],
            "formula": to_text(formula),
            "trace": trace_json(trace, names) if trace is not None else None,
        }
        return json.dumps(doc, indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}")
    if trace is not None:
        body += trace_text(trace) + "\n"
    return body


def kb_json(B: PossibilisticKB) -> dict[str, Any]:
    return {
        "name": B.name,
        "formulas": [[to_text(wf.formula), rational(wf.weight)] for wf in B],
    }


def profile_json(E: Profile) -> list[dict[str, Any]]:
    return [kb_json(B) for B in E]

"""Classical models, the reduct, and answer sets by exhaustive enumeration.

This is the slow, trusted layer: every interpretation is an ``int`` mask and
every search walks the full powerset.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import Program, Rule, submasks

# Interpretations are atom masks; an answer-set family is a sorted tuple of them.
Interpretation = int
AnswerSetFamily = tuple[int, ...]

_Triples = tuple[tuple[int, int, int], ...]


def satisfies(i: int, r: Rule) -> bool:
    return bool(r.pos & ~i or r.neg & i or r.head & i)


def is_model(i: int, p: Program) -> bool:
    return _is_model(i, _triples(p))


def _triples(p: Program) -> _Triples:
    return p.triples


def _is_model(i: int, rules) -> bool:
    for head, pos, neg in rules:
        if not (pos & ~i or neg & i or head & i):
            return False
    return True


def _reduct(rules, y: int) -> tuple[tuple[int, int], ...]:
    return tuple((h, pos) for h, pos, neg in rules if not neg & y)


def _positive_model(i: int, rules) -> bool:
    for head, pos in rules:
        if not (pos & ~i or head & i):
            return False
    return True


def reduct(p: Program, y: int) -> Program:
    """Drop rules whose negative body meets ``y``; strip the rest to their positive part.

    ``:- not a.`` with ``a`` outside ``y`` reduces to the empty rule, which no
    interpretation satisfies.
    """
    rules = frozenset(Rule(r.head, r.pos, 0) for r in p.rules if not r.neg & y)
    return Program(rules, p.universe, p.ws)


def models(p: Program, universe: int | None = None) -> list[int]:
    u = p.universe if universe is None else universe | p.atoms
    rules = _triples(p)
    return [i for i in submasks(u) if _is_model(i, rules)]


def minimal_models(p: Program, universe: int | None = None) -> list[int]:
    ms = models(p, universe)
    return [m for m in ms if not any(o != m and o & ~m == 0 for o in ms)]


def answer_sets(p: Program, universe: int | None = None) -> AnswerSetFamily:
    u = p.universe if universe is None else universe | p.atoms
    return _answer_sets(_triples(p), u)


def answer_sets_with(p: Program, ctx: Program, universe: int) -> AnswerSetFamily:
    """``answer_sets(p | ctx, universe)`` without building the union program."""
    return _answer_sets(tuple(sorted(set(p.triples + ctx.triples))), universe | p.atoms | ctx.atoms)


@lru_cache(maxsize=1 << 18)
def _answer_sets(rules: _Triples, universe: int) -> AnswerSetFamily:
    heads = 0
    for h, _, _ in rules:
        heads |= h
    out = []
    # an atom that heads no rule can be dropped from any model of a reduct
    for y in submasks(universe & heads):
        if not _is_model(y, rules):
            continue
        red = _reduct(rules, y)
        if _is_minimal(y, red):
            out.append(y)
    return tuple(out)


def _is_minimal(y: int, red) -> bool:
    if not y:
        return True
    z = (y - 1) & y
    while True:
        if _positive_model(z, red):
            return False
        if z == 0:
            return True
        z = (z - 1) & y


def is_answer_set(y: int, p: Program) -> bool:
    rules = _triples(p)
    return _is_model(y, rules) and _is_minimal(y, _reduct(rules, y))


def reduct_models_below(p: Program, y: int) -> list[int]:
    """Every ``z`` with ``z <= y`` (subset) and ``z |= p^y``, including ``y`` if it qualifies."""
    red = _reduct(_triples(p), y)
    return [z for z in submasks(y) if _positive_model(z, red)]


def ordinary_equivalent(p: Program, q: Program, universe: int | None = None) -> bool:
    u = p.universe | q.universe if universe is None else universe
    return answer_sets(p, u) == answer_sets(q, u)


def simplify_context(p: Program, r: Program, y: int) -> Program:
    """Positive replacement for context ``r`` that keeps ``y``'s answer-set status in ``p | r``."""
    return reduct(r, y)

"""Containment and equivalence verdicts with concrete unary counterexamples."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Iterator

from .characterization import _h_total, _reduct_table, hb_models, is_h_total, preceq
from .semantics import (_answer_sets, answer_sets_with, _is_model, _positive_model, _reduct, _triples,
                        answer_sets)
from .syntax import (AlphabetPair, Program, Rule, Workspace, classify_rule, in_class,
                     iter_bits, popcount, submasks)

DEFAULT_BUDGET = 1 << 20
LATTICE_BUDGET = 1 << 16

P_IN_Q = "p-in-q"
Q_IN_P = "q-in-p"


class DecisionError(RuntimeError):
    pass


class BudgetExceededError(DecisionError):
    pass


class InvalidWitnessError(DecisionError):
    pass


class InconsistencyError(DecisionError):
    """Two decision routes disagreed; always a bug."""


class NotPositiveError(ValueError):
    pass


def default_budget() -> int:
    env = os.environ.get("HBEQ_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Witness:
    x: int
    y: int
    direction: str = P_IN_Q


@dataclass(frozen=True)
class Counterexample:
    context: Program
    distinguishing: int
    # "first" when y is an answer set of first | context only, "second" otherwise
    side: str


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    method: str
    witness: Witness | None = None
    counterexample: Counterexample | None = None
    alphabet: AlphabetPair | None = None
    universe: int = 0

    def __bool__(self) -> bool:
        return self.equivalent


def _setup(p: Program, q: Program, ab: AlphabetPair, universe: int | None):
    u = p.atoms | q.atoms if universe is None else universe | p.atoms | q.atoms
    return u, ab.restrict(u)


def _ws(p: Program, q: Program) -> Workspace | None:
    return p.ws or q.ws


def _witness_x(y: int, p_below, q_below, ab: AlphabetPair) -> int | None:
    p_proper = [z for z in p_below if z != y]
    for x in q_below:
        if x == y:
            continue
        if not any(preceq(x, x2, ab) for x2 in p_proper):
            return x
    return None


def find_witness(p: Program, q: Program, ab: AlphabetPair, universe: int | None = None,
                 direction: str = P_IN_Q) -> Witness | None:
    """First pair refuting ``p`` contained in ``q``, scanning y then x in mask order.

    When y is not a model of ``q`` every x qualifies; we return ``(y, y)``
    since that is the choice the counterexample construction needs.
    """
    u, ab = _setup(p, q, ab, universe)
    p_tab = _reduct_table(_triples(p), u)
    q_tab = _reduct_table(_triples(q), u)
    for y, p_below in p_tab.items():
        if not _h_total(y, p_below, ab.heads):
            continue
        q_below = q_tab.get(y)
        if q_below is None:
            return Witness(y, y, direction)
        x = _witness_x(y, p_below, q_below, ab)
        if x is not None:
            return Witness(x, y, direction)
    return None


def witnesses(p: Program, q: Program, ab: AlphabetPair,
              universe: int | None = None) -> list[tuple[int, int]]:
    """Every pair meeting the witness conditions literally, for exhaustive checks."""
    u, ab = _setup(p, q, ab, universe)
    p_rules, q_rules = _triples(p), _triples(q)
    out = []
    for y in submasks(u):
        if not is_h_total(p, y, ab.heads):
            continue
        p_red, q_red = _reduct(p_rules, y), _reduct(q_rules, y)
        for x in submasks(y):
            if not _is_model(y, q_rules):
                out.append((x, y))
            elif (x != y and _positive_model(x, q_red)
                  and not any(x2 != y and preceq(x, x2, ab) and _positive_model(x2, p_red)
                              for x2 in submasks(y))):
                out.append((x, y))
    return out


def unary_context(x: int, y: int, ab: AlphabetPair, ws: Workspace | None = None) -> Program:
    """Facts ``x|H`` plus ``a :- b`` for head atoms a and body atoms b of ``y \\ x``."""
    rules = [Rule(1 << a, 0, 0) for a in iter_bits(x & ab.heads)]
    gap = y & ~x
    rules += [Rule(1 << a, 1 << b, 0)
              for a in iter_bits(gap & ab.heads) for b in iter_bits(gap & ab.bodies)]
    return Program.of(rules, ws)


def witness_to_counterexample(w: Witness, ab: AlphabetPair, first: Program,
                              second: Program, universe: int | None = None) -> Counterexample:
    """Build the unary context from a witness against ``first`` contained in ``second``.

    The result is checked by recomputing answer sets; a failed check raises
    :class:`InvalidWitnessError`.
    """
    u, ab = _setup(first, second, ab, universe)
    x = w.x
    if not _is_model(w.y, _triples(second)):
        x = w.y
    ctx = unary_context(x, w.y, ab, _ws(first, second))
    cex = Counterexample(ctx, w.y, "first")
    problem = validate_counterexample(cex, ab, first, second, u)
    if problem:
        raise InvalidWitnessError(f"witness ({w.x:#b}, {w.y:#b}): {problem}")
    return cex


def validate_counterexample(cex: Counterexample, ab: AlphabetPair, p: Program, q: Program,
                            universe: int | None = None) -> str | None:
    """Return ``None`` if ``cex`` is a valid counterexample, else the reason it is not.

    ``cex.side`` names ``p`` as "first" and ``q`` as "second".
    """
    u, ab = _setup(p, q, ab, universe)
    ctx = cex.context
    if not all(classify_rule(r).is_unary for r in ctx.rules):
        return "context is not unary"
    if not in_class(ctx, ab):
        return "context leaves the alphabet class"
    in_p = cex.distinguishing in answer_sets_with(p, ctx, u)
    in_q = cex.distinguishing in answer_sets_with(q, ctx, u)
    if in_p == in_q:
        return "distinguishing interpretation does not separate the programs"
    if in_p != (cex.side == "first"):
        return "side label does not match the separation"
    return None


def decide_containment(p: Program, q: Program, ab: AlphabetPair,
                       universe: int | None = None) -> Verdict:
    u, ab = _setup(p, q, ab, universe)
    w = find_witness(p, q, ab, u)
    if w is None:
        return Verdict(True, "witness-search", alphabet=ab, universe=u)
    cex = witness_to_counterexample(w, ab, p, q, u)
    return Verdict(False, "witness-search", w, cex, ab, u)


def decide_equivalence(p: Program, q: Program, ab: AlphabetPair, universe: int | None = None,
                       cross_check: bool = True) -> Verdict:
    """Compare <H,B>-models; on a difference, extract a witness from either direction."""
    u, ab = _setup(p, q, ab, universe)
    same = hb_models(p, ab, u) == hb_models(q, ab, u)
    if same and not cross_check:
        return Verdict(True, "sigma-comparison", alphabet=ab, universe=u)
    w = find_witness(p, q, ab, u, P_IN_Q)
    if w is None:
        w = find_witness(q, p, ab, u, Q_IN_P)
    if same:
        if w is not None:
            raise InconsistencyError("equal characterizations but a witness exists")
        return Verdict(True, "sigma-comparison", alphabet=ab, universe=u)
    if w is None:
        raise InconsistencyError("characterizations differ but no witness exists")
    return Verdict(False, "sigma-comparison", w, _oriented_counterexample(w, ab, p, q, u), ab, u)


def _oriented_counterexample(w: Witness, ab: AlphabetPair, p: Program, q: Program,
                             u: int) -> Counterexample:
    if w.direction == P_IN_Q:
        return witness_to_counterexample(w, ab, p, q, u)
    return replace(witness_to_counterexample(w, ab, q, p, u), side="second")


def _unary_items(ab: AlphabetPair) -> list[Rule]:
    heads = list(iter_bits(ab.heads))
    items = [Rule(1 << a, 0, 0) for a in heads]
    items += [Rule(1 << a, 1 << b, 0) for a in heads for b in iter_bits(ab.bodies)]
    return items


def context_count(ab: AlphabetPair) -> int:
    h, b = popcount(ab.heads), popcount(ab.bodies)
    return 1 << (h + h * b)


def unary_contexts(ab: AlphabetPair, ws: Workspace | None = None) -> Iterator[Program]:
    """Every unary program in the class, self-loops ``a :- a`` included."""
    items = _unary_items(ab)
    for sel in range(1 << len(items)):
        yield Program.of((items[i] for i in iter_bits(sel)), ws)


def _check_budget(ab: AlphabetPair, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    n = context_count(ab)
    if n > budget:
        raise BudgetExceededError(
            f"{n} unary contexts exceed the budget of {budget}; use decide_equivalence")


def oracle_equivalence(p: Program, q: Program, ab: AlphabetPair, universe: int | None = None,
                       budget: int | None = None) -> Verdict:
    """Try every unary context; the first one with different answer sets refutes equivalence."""
    u, ab = _setup(p, q, ab, universe)
    _check_budget(ab, budget)
    pt, qt = _triples(p), _triples(q)
    for ctx in unary_contexts(ab, _ws(p, q)):
        ct = _triples(ctx)
        as_p = _answer_sets(tuple(sorted(set(pt + ct))), u)
        as_q = _answer_sets(tuple(sorted(set(qt + ct))), u)
        if as_p != as_q:
            y = min(set(as_p) ^ set(as_q))
            side = "first" if y in as_p else "second"
            return Verdict(False, "oracle", None, Counterexample(ctx, y, side), ab, u)
    return Verdict(True, "oracle", alphabet=ab, universe=u)


def oracle_profile(p: Program, ab: AlphabetPair, universe: int | None = None,
                   budget: int | None = None) -> tuple:
    """Answer sets of ``p`` joined with each unary context, in enumeration order.

    Two programs are oracle-equivalent exactly when their profiles match.
    """
    u = p.atoms if universe is None else universe | p.atoms
    ab = ab.restrict(u)
    _check_budget(ab, budget)
    pt = _triples(p)
    return tuple(_answer_sets(tuple(sorted(set(pt + _triples(ctx)))), u)
                 for ctx in unary_contexts(ab))


def h_total_models(p: Program, h: int, universe: int | None = None) -> tuple[int, ...]:
    u = p.atoms if universe is None else universe | p.atoms
    return tuple(y for y in submasks(u) if is_h_total(p, y, h))


def decide_equivalence_positive(p: Program, q: Program, h: int, universe: int | None = None,
                                bodies: int = 0) -> Verdict:
    """Positive programs: equivalence is sameness of H-total models, whatever the bodies.

    ``bodies`` only shapes the counterexample reported on a negative verdict.
    """
    for prog in (p, q):
        if not prog.is_positive:
            raise NotPositiveError("program has a negative body literal")
    u, ab = _setup(p, q, AlphabetPair(h, bodies), universe)
    if h_total_models(p, ab.heads, u) == h_total_models(q, ab.heads, u):
        return Verdict(True, "positive-fast-path", alphabet=ab, universe=u)
    w = find_witness(p, q, ab, u, P_IN_Q) or find_witness(q, p, ab, u, Q_IN_P)
    if w is None:
        raise InconsistencyError("H-total models differ but no witness exists")
    cex = _oriented_counterexample(w, ab, p, q, u)
    return Verdict(False, "positive-fast-path", w, cex, ab, u)


def sigma_equal(p: Program, q: Program, ab: AlphabetPair, universe: int | None = None) -> bool:
    u, ab = _setup(p, q, ab, universe)
    return hb_models(p, ab, u) == hb_models(q, ab, u)


def equivalence_lattice_report(p: Program, q: Program, universe: int | None = None,
                               budget: int = LATTICE_BUDGET) -> dict[tuple[int, int], bool]:
    """Verdict for every alphabet pair over the universe, keyed by ``(heads, bodies)``."""
    u = p.atoms | q.atoms if universe is None else universe | p.atoms | q.atoms
    n = 1 << (2 * popcount(u))
    if n > budget:
        raise BudgetExceededError(
            f"{n} alphabet pairs exceed the lattice budget of {budget}; shrink the universe")
    return {(h, b): sigma_equal(p, q, AlphabetPair(h, b), u)
            for h in submasks(u) for b in submasks(u)}


def corners(universe: int) -> dict[str, tuple[int, int]]:
    return {
        "ordinary": (0, universe),
        "uniform": (universe, 0),
        "strong": (universe, universe),
        "trivial": (0, 0),
    }


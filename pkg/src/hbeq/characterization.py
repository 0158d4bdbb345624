"""<H,B>-models and the classical model families they generalize.

The SE/UE/relativized families are written out from their own closed-form
conditions rather than delegating to :func:`hb_models`, so agreement between
the two is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple

from .semantics import AnswerSetFamily, _positive_model, _reduct, _triples, _is_model
from .syntax import AlphabetPair, Program, submasks


class ModelPair(NamedTuple):
    x: int
    y: int

    @property
    def total(self) -> bool:
        return self.x == self.y


@dataclass(frozen=True)
class Characterization:
    """A canonical (sorted) set of model pairs.  Equality looks at the pairs only."""

    pairs: tuple[ModelPair, ...]
    alphabet: AlphabetPair | None = field(default=None, compare=False)
    universe: int = field(default=0, compare=False)

    @classmethod
    def build(cls, pairs: Iterable[tuple[int, int]], alphabet: AlphabetPair | None,
              universe: int) -> Characterization:
        return cls(tuple(sorted({ModelPair(x, y) for x, y in pairs})), alphabet, universe)

    def __contains__(self, pair) -> bool:
        return ModelPair(*pair) in set(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def totals(self) -> tuple[int, ...]:
        return tuple(sorted(p.y for p in self.pairs if p.total))


def preceq(v: int, z: int, ab: AlphabetPair) -> bool:
    """``v`` is below ``z``: at most ``z``'s head atoms, at least ``z``'s body atoms."""
    return not (v & ab.heads & ~z) and not (z & ab.bodies & ~v)


def prec_strict(v: int, z: int, ab: AlphabetPair) -> bool:
    hb = ab.heads | ab.bodies
    return preceq(v, z, ab) and (v & hb) != (z & hb)


def prec_strict_by_converse(v: int, z: int, ab: AlphabetPair) -> bool:
    return preceq(v, z, ab) and not preceq(z, v, ab)


@lru_cache(maxsize=1 << 16)
def _reduct_table(rules, universe: int) -> dict[int, tuple[int, ...]]:
    """For every model ``y`` of the rules: the subsets of ``y`` that satisfy the reduct."""
    table = {}
    for y in submasks(universe):
        if _is_model(y, rules):
            red = _reduct(rules, y)
            table[y] = tuple(z for z in submasks(y) if _positive_model(z, red))
    return table


def _universe(p: Program, universe: int | None) -> int:
    return p.universe if universe is None else universe | p.atoms


def reduct_table(p: Program, universe: int | None = None) -> dict[int, tuple[int, ...]]:
    return _reduct_table(_triples(p), _universe(p, universe))


def _h_total(y: int, below: tuple[int, ...], h: int) -> bool:
    yh = y & h
    return all(z == y or (z & h) != yh for z in below)


def is_h_total(p: Program, y: int, h: int) -> bool:
    rules = _triples(p)
    if not _is_model(y, rules):
        return False
    red = _reduct(rules, y)
    yh = y & h
    for z in submasks(y):
        if z != y and _positive_model(z, red) and (z & h) == yh:
            return False
    return True


def is_preceq_maximal(p: Program, x: int, y: int, ab: AlphabetPair) -> bool:
    red = _reduct(_triples(p), y)
    if not _positive_model(x, red):
        return False
    for x2 in submasks(y):
        if x2 != y and prec_strict(x, x2, ab) and _positive_model(x2, red):
            return False
    return True


def hb_models(p: Program, ab: AlphabetPair, universe: int | None = None) -> Characterization:
    u = _universe(p, universe)
    return Characterization(_hb_pairs(_triples(p), ab, u), ab, u)


@lru_cache(maxsize=1 << 16)
def _hb_pairs(rules, ab: AlphabetPair, u: int) -> tuple[ModelPair, ...]:
    hb = ab.heads | ab.bodies
    pairs = set()
    for y, below in _reduct_table(rules, u).items():
        if not _h_total(y, below, ab.heads):
            continue
        pairs.add(ModelPair(y, y))
        proper = [z for z in below if z != y]
        for x1 in proper:
            if not any(prec_strict(x1, x2, ab) for x2 in proper):
                pairs.add(ModelPair(x1 & hb, y))
    return tuple(sorted(pairs))


def se_models(p: Program, universe: int | None = None) -> Characterization:
    u = _universe(p, universe)
    rules = _triples(p)
    pairs = []
    for y in submasks(u):
        if _is_model(y, rules):
            red = _reduct(rules, y)
            pairs.extend((x, y) for x in submasks(y) if _positive_model(x, red))
    return Characterization.build(pairs, AlphabetPair(u, u), u)


def ue_models(p: Program, universe: int | None = None) -> Characterization:
    u = _universe(p, universe)
    rules = _triples(p)
    pairs = []
    for y in submasks(u):
        if not _is_model(y, rules):
            continue
        red = _reduct(rules, y)
        for x in submasks(y):
            if not _positive_model(x, red):
                continue
            # every x2 strictly between x and y must fail the reduct
            if any(x2 != x and x2 != y and x2 & x == x and _positive_model(x2, red)
                   for x2 in submasks(y)):
                continue
            pairs.append((x, y))
    return Characterization.build(pairs, AlphabetPair(u, 0), u)


def _rel_total(y: int, rules, a: int) -> bool:
    """Condition (2): y is a model and every reduct model below y loses an A-atom."""
    if not _is_model(y, rules):
        return False
    red = _reduct(rules, y)
    ya = y & a
    for y2 in submasks(y):
        if y2 != y and _positive_model(y2, red) and (y2 & a) == ya:
            return False
    return True


def rel_se_models(p: Program, a: int, universe: int | None = None) -> Characterization:
    u = _universe(p, universe)
    a &= u
    rules = _triples(p)
    pairs = []
    for y in submasks(u):
        if not _rel_total(y, rules, a):
            continue
        pairs.append((y, y))
        red = _reduct(rules, y)
        for x in submasks(y & a):
            if x == y & a:
                continue
            if any(x1 & a == x and _positive_model(x1, red) for x1 in submasks(y)):
                pairs.append((x, y))
    return Characterization.build(pairs, AlphabetPair(a, a), u)


def rel_ue_models(p: Program, a: int, universe: int | None = None) -> Characterization:
    u = _universe(p, universe)
    a &= u
    rules = _triples(p)
    pairs = []
    for y in submasks(u):
        if not _rel_total(y, rules, a):
            continue
        pairs.append((y, y))
        red = _reduct(rules, y)
        sat = [z for z in submasks(y) if _positive_model(z, red)]
        for x in submasks(y & a):
            if x == y & a:
                continue
            if not any(x1 & a == x for x1 in sat):
                continue
            # no reduct model below y may project strictly above x
            if any(x2 != y and (x2 & a) & x == x and (x2 & a) != x for x2 in sat):
                continue
            pairs.append((x, y))
    return Characterization.build(pairs, AlphabetPair(a, 0), u)


def body_relativized_models(p: Program, b: int, universe: int | None = None) -> Characterization:
    """Closed form of the <U,B>-models."""
    u = _universe(p, universe)
    b &= u
    rules = _triples(p)
    pairs = []
    for y in submasks(u):
        if not _is_model(y, rules):
            continue
        red = _reduct(rules, y)
        sat = [z for z in submasks(y) if _positive_model(z, red)]
        for x in sat:
            if any(x2 != x and x2 != y and x2 & x == x and (x2 & b) == (x & b)
                   for x2 in sat):
                continue
            pairs.append((x, y))
    return Characterization.build(pairs, AlphabetPair(u, b), u)


def head_relativized_models(p: Program, h: int, universe: int | None = None) -> Characterization:
    """Closed form of the <H,U>-models."""
    u = _universe(p, universe)
    h &= u
    rules = _triples(p)
    pairs = []
    for y in submasks(u):
        if not is_h_total(p, y, h):
            continue
        red = _reduct(rules, y)
        sat = [z for z in submasks(y) if _positive_model(z, red)]
        for x in sat:
            if any(x2 != x and x2 & x == x2 and (x2 & h) == (x & h) for x2 in sat):
                continue
            pairs.append((x, y))
    return Characterization.build(pairs, AlphabetPair(h, u), u)


def answer_sets_via_characterization(p: Program, universe: int | None = None) -> AnswerSetFamily:
    u = _universe(p, universe)
    return hb_models(p, AlphabetPair(0, u), u).totals()

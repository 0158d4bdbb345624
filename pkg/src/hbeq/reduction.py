"""Compile <H,B>-equivalence into ordinary equivalence.

Both programs receive the same guess program, whose answer sets select one
unary context each: ``c__a__b`` switches on the rule ``a :- b`` and
``c__a__f__ctx`` the fact ``a`` (via the always-true atom ``f__ctx``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import AlphabetPair, Program, Rule, Workspace, iter_bits, popcount

DISJUNCTIVE = "disjunctive"
NORMAL = "normal"


class FreshNamer:
    """Hands out atom names that no user atom already uses."""

    def __init__(self, ws: Workspace, reserved: int):
        self.ws = ws
        self.reserved = reserved
        self.fresh = 0

    def __call__(self, base: str) -> int:
        name = base
        while name in self.ws and (1 << self.ws.id_of(name)) & self.reserved:
            name += "_"
        bit = 1 << self.ws.intern(name)
        self.fresh |= bit
        return bit


@dataclass(frozen=True)
class ReductionOutput:
    left: Program
    right: Program
    guess: Program
    fresh: int
    mode: str


def build_guess_program(ab: AlphabetPair, namer: FreshNamer) -> Program:
    ws = namer.ws
    f = namer("f__ctx")
    f_name = ws.names(f)[0]
    rules = [Rule(f)]
    for a in iter_bits(ab.heads):
        a_name = ws.name(a)
        for b in [1 << i for i in iter_bits(ab.bodies)] + [f]:
            b_name = f_name if b == f else ws.names(b)[0]
            c = namer(f"c__{a_name}__{b_name}")
            nc = namer(f"nc__{a_name}__{b_name}")
            rules.append(Rule(c | nc))
            rules.append(Rule(1 << a, b | c))
    return Program.of(rules, ws)


def normalize_guess(g: Program) -> Program:
    """Swap each disjunctive guess ``c | nc.`` for ``c :- not nc.`` and ``nc :- not c.``"""
    rules = []
    for r in g.rules:
        if popcount(r.head) == 2 and not r.body:
            c, nc = (1 << i for i in iter_bits(r.head))
            rules += [Rule(c, 0, nc), Rule(nc, 0, c)]
        else:
            rules.append(r)
    return Program(frozenset(rules), g.universe, g.ws)


def reduce_to_ordinary(p: Program, q: Program, ab: AlphabetPair, mode: str = DISJUNCTIVE,
                       universe: int | None = None) -> ReductionOutput:
    if mode not in (DISJUNCTIVE, NORMAL):
        raise ValueError(f"unknown mode {mode!r}")
    ws = p.ws or q.ws
    if ws is None:
        raise ValueError("programs carry no workspace for fresh atoms")
    user = p.atoms | q.atoms if universe is None else universe | p.atoms | q.atoms
    namer = FreshNamer(ws, user)
    guess = build_guess_program(ab.restrict(user), namer)
    if mode == NORMAL:
        guess = normalize_guess(guess)
    u = user | namer.fresh
    left = (p | guess).with_universe(u)
    right = (q | guess).with_universe(u)
    return ReductionOutput(left, right, guess, namer.fresh, mode)

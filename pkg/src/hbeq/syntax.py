"""Atoms, rules, programs and the textual program format.

Atom sets are plain ``int`` bitmasks: bit ``i`` stands for the atom with
interned id ``i``.  Every other module works on these masks directly.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*")


class ProgramSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class EmptyRuleError(ProgramSyntaxError):
    """A rule with neither head nor body."""


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


class Workspace:
    """Interns atom names to dense ids; the only mutable object in the package."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        self._lock = threading.Lock()
        for name in names:
            self.intern(name)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def intern(self, name: str) -> int:
        if not ATOM_RE.fullmatch(name):
            raise ValueError(f"invalid atom name {name!r}")
        with self._lock:
            idx = self._ids.get(name)
            if idx is None:
                idx = len(self._names)
                self._names.append(name)
                self._ids[name] = idx
            return idx

    def atom(self, name: str) -> Atom:
        return Atom(self.intern(name), name)

    def id_of(self, name: str) -> int:
        return self._ids[name]

    def name(self, idx: int) -> str:
        return self._names[idx]

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for n in names:
            m |= 1 << self.intern(n)
        return m

    def names(self, mask: int) -> list[str]:
        return [self._names[i] for i in iter_bits(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    @property
    def all(self) -> int:
        return (1 << len(self._names)) - 1


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, order=True)
class Rule:
    """``head :- pos, not neg.`` with each part an atom mask.

    The all-empty rule only arises as the reduct of a purely negative
    constraint; the parser never produces it.
    """

    head: int = 0
    pos: int = 0
    neg: int = 0

    @property
    def body(self) -> int:
        return self.pos | self.neg

    @property
    def atoms(self) -> int:
        return self.head | self.pos | self.neg

    def sort_key(self) -> tuple:
        return (list(iter_bits(self.head)), list(iter_bits(self.pos)),
                list(iter_bits(self.neg)))


@dataclass(frozen=True)
class Program:
    rules: frozenset[Rule] = frozenset()
    universe: int = 0
    ws: Workspace | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        used = 0
        for r in self.rules:
            used |= r.atoms
        if used & ~self.universe:
            object.__setattr__(self, "universe", self.universe | used)

    @classmethod
    def of(cls, rules: Iterable[Rule], ws: Workspace | None = None,
           universe: int = 0) -> Program:
        return cls(frozenset(rules), universe, ws)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.sorted_rules())

    def sorted_rules(self) -> list[Rule]:
        return sorted(self.rules, key=Rule.sort_key)

    def union(self, other: Program) -> Program:
        return Program(self.rules | other.rules, self.universe | other.universe,
                       self.ws or other.ws)

    __or__ = union

    def with_universe(self, universe: int) -> Program:
        return Program(self.rules, self.universe | universe, self.ws)

    @cached_property
    def atoms(self) -> int:
        m = 0
        for r in self.rules:
            m |= r.atoms
        return m

    @cached_property
    def triples(self) -> tuple[tuple[int, int, int], ...]:
        """Rules as sorted ``(head, pos, neg)`` tuples; a hashable cache key."""
        return tuple(sorted((r.head, r.pos, r.neg) for r in self.rules))

    @property
    def is_positive(self) -> bool:
        return all(not r.neg for r in self.rules)

    @property
    def is_normal(self) -> bool:
        return all(popcount(r.head) <= 1 for r in self.rules)

    def __str__(self) -> str:
        return render_program(self)


@dataclass(frozen=True)
class AlphabetPair:
    heads: int
    bodies: int

    def restrict(self, universe: int) -> AlphabetPair:
        return AlphabetPair(self.heads & universe, self.bodies & universe)

    @property
    def both(self) -> int:
        return self.heads | self.bodies


class RuleClass(NamedTuple):
    is_fact: bool
    is_constraint: bool
    is_positive: bool
    is_normal: bool
    is_unary: bool


class SymbolSets(NamedTuple):
    heads: int
    bodies: int
    atoms: int


def classify_rule(r: Rule) -> RuleClass:
    n_head = popcount(r.head)
    fact = n_head == 1 and not r.body
    return RuleClass(
        is_fact=fact,
        is_constraint=n_head == 0,
        is_positive=not r.neg,
        is_normal=n_head <= 1,
        is_unary=fact or (n_head == 1 and popcount(r.pos) == 1 and not r.neg),
    )


def symbol_sets(p: Program) -> SymbolSets:
    heads = bodies = 0
    for r in p.rules:
        heads |= r.head
        bodies |= r.body
    return SymbolSets(heads, bodies, heads | bodies)


def in_class(p: Program, ab: AlphabetPair) -> bool:
    """Whether ``p`` uses only ``ab.heads`` in heads and ``ab.bodies`` in bodies."""
    s = symbol_sets(p)
    return not (s.heads & ~ab.heads) and not (s.bodies & ~ab.bodies)


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<dot>\.)
  | (?P<bar>\|)
  | (?P<comma>,)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ProgramSyntaxError(f"unexpected character {text[pos]!r}",
                                     line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ws: Workspace):
        self.toks = _tokenize(text)
        self.i = 0
        self.ws = ws

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.toks[self.i]
        if tok.kind != kind:
            want = {"dot": "'.'", "ident": "atom", "if": "':-'"}.get(kind, kind)
            got = tok.text or "end of input"
            raise ProgramSyntaxError(f"expected {want}, got {got!r}", tok.line, tok.col)
        self.i += 1
        return tok

    def atom(self) -> int:
        tok = self.take("ident")
        if tok.text == "not" or not ATOM_RE.fullmatch(tok.text):
            raise ProgramSyntaxError(f"invalid atom {tok.text!r}", tok.line, tok.col)
        return 1 << self.ws.intern(tok.text)

    def rule(self) -> Rule:
        start = self.peek()
        head = pos = neg = 0
        if self.peek().kind == "ident":
            head |= self.atom()
            while self.peek().kind == "bar":
                self.i += 1
                head |= self.atom()
        if self.peek().kind == "if":
            self.i += 1
            while True:
                tok = self.peek()
                if tok.kind == "ident" and tok.text == "not":
                    self.i += 1
                    neg |= self.atom()
                else:
                    pos |= self.atom()
                if self.peek().kind != "comma":
                    break
                self.i += 1
        self.take("dot")
        if not (head or pos or neg):
            raise EmptyRuleError("rule has neither head nor body", start.line, start.col)
        return Rule(head, pos, neg)

    def program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.rule())
        return Program.of(rules, self.ws)


def parse_program(text: str, ws: Workspace | None = None) -> Program:
    if ws is None:
        ws = Workspace()
    return _Parser(text, ws).program()


def parse_rule(text: str, ws: Workspace) -> Rule:
    (r,) = parse_program(text, ws).rules
    return r


def render_rule(r: Rule, ws: Workspace) -> str:
    if not r.atoms:
        raise ValueError("the empty rule has no textual form")
    head = " | ".join(ws.names(r.head))
    body = ws.names(r.pos) + ["not " + n for n in ws.names(r.neg)]
    if not body:
        return head + "."
    if not head:
        return ":- " + ", ".join(body) + "."
    return head + " :- " + ", ".join(body) + "."


def render_program(p: Program) -> str:
    if p.ws is None:
        raise ValueError("program has no workspace to name its atoms")
    return "\n".join(render_rule(r, p.ws) for r in p.sorted_rules())

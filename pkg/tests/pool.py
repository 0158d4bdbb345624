"""Program pools over the atoms a, b, c for the exhaustive differential suites."""

from __future__ import annotations

import itertools
import random

from hbeq import Program, Rule, Workspace

ATOMS = "abc"
U = 0b111

# (role, atom) slots; role 0 head, 1 positive body, 2 negative body
_SLOTS = [(role, a) for a in range(3) for role in range(3)]


def rule_vocabulary(max_literals: int = 2, atoms: int = U) -> list[Rule]:
    """Every rule with 1..max_literals literal slots over the given atoms."""
    out = set()
    slots = [(role, a) for role, a in _SLOTS if (1 << a) & atoms]
    for k in range(1, max_literals + 1):
        for comb in itertools.combinations(slots, k):
            parts = [0, 0, 0]
            for role, a in comb:
                parts[role] |= 1 << a
            out.add(Rule(*parts))
    return sorted(out)


def program_pool(ws: Workspace, max_rules: int = 2, max_literals: int = 2,
                 atoms: int = U, positive_only: bool = False) -> list[Program]:
    rules = [r for r in rule_vocabulary(max_literals, atoms) if not (positive_only and r.neg)]
    return [Program.of(c, ws) for k in range(max_rules + 1)
            for c in itertools.combinations(rules, k)]


def random_pairs(ws: Workspace, n: int, seed: int = 2024, max_rules: int = 3,
                 max_literals: int = 3) -> list[tuple[Program, Program]]:
    rng = random.Random(seed)
    rules = rule_vocabulary(max_literals)
    def draw():
        return Program.of(rng.sample(rules, rng.randint(0, max_rules)), ws)
    return [(draw(), draw()) for _ in range(n)]


def alphabet_masks(universe: int = U) -> list[tuple[int, int]]:
    subs = [s for s in range(universe + 1) if s & ~universe == 0]
    return [(h, b) for h in subs for b in subs]


PERMUTATIONS = list(itertools.permutations(range(3)))


def permute_mask(mask: int, perm) -> int:
    out = 0
    for i in range(3):
        if mask >> i & 1:
            out |= 1 << perm[i]
    return out


def permute_program(p: Program, perm) -> Program:
    return Program.of((Rule(permute_mask(r.head, perm), permute_mask(r.pos, perm),
                            permute_mask(r.neg, perm)) for r in p.rules), p.ws)


def workspace() -> Workspace:
    return Workspace(ATOMS)

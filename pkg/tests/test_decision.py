import pytest

from hbeq import AlphabetPair, Program, Rule, Workspace, answer_sets, parse_program
from hbeq.decision import (P_IN_Q, Q_IN_P, BudgetExceededError, Counterexample,
                           InvalidWitnessError, NotPositiveError, Witness, context_count,
                           corners, decide_containment, decide_equivalence,
                           decide_equivalence_positive, equivalence_lattice_report,
                           find_witness, oracle_equivalence, unary_context, unary_contexts,
                           validate_counterexample, witness_to_counterexample, witnesses)
from hbeq.syntax import render_program

from pool import U, alphabet_masks, random_pairs

EX1_VERDICTS = [("ab", "ab", False), ("ab", "", True), ("ab", "b", True), ("a", "ab", True),
                ("b", "ab", False), ("ab", "a", False)]


@pytest.mark.parametrize("heads,bodies,expected", EX1_VERDICTS)
def test_example_verdicts(ex, heads, bodies, expected):
    ab = ex.ab(heads, bodies)
    assert decide_equivalence(ex.P, ex.Q, ab).equivalent is expected
    assert oracle_equivalence(ex.P, ex.Q, ab).equivalent is expected


@pytest.mark.parametrize("heads,bodies", [("b", "ab"), ("ab", "a")])
def test_find_witness_examples(ex, heads, bodies):
    ab = ex.ab(heads, bodies)
    assert find_witness(ex.P, ex.Q, ab) == Witness(0, ex.U, P_IN_Q)
    assert witnesses(ex.P, ex.Q, ab) == [(0, ex.U)]
    assert find_witness(ex.Q, ex.P, ab) is None


@pytest.mark.parametrize("heads,bodies,text", [
    ("b", "ab", "b :- a.\nb :- b."),
    ("ab", "a", "a :- a.\nb :- a."),
    ("ab", "", ""),
])
def test_unary_context_shapes(ex, heads, bodies, text):
    ctx = unary_context(0, ex.U, ex.ab(heads, bodies), ex.ws)
    assert render_program(ctx) == text


def test_counterexample_separates_example_programs(ex):
    ab = ex.ab("b", "ab")
    cex = witness_to_counterexample(Witness(0, ex.U), ab, ex.P, ex.Q)
    assert cex.distinguishing == ex.U and cex.side == "first"
    assert ex.U in answer_sets(ex.P | cex.context)
    assert ex.U not in answer_sets(ex.Q | cex.context)


def test_non_model_witness_uses_facts_of_y():
    ws = Workspace("a")
    p, q = parse_program("a :- a.", ws), parse_program(":- a.", ws)
    ab = AlphabetPair(1, 0)
    assert (0, 1) in witnesses(p, q, ab)
    w = find_witness(p, q, ab)
    assert w == Witness(1, 1, P_IN_Q)
    cex = witness_to_counterexample(Witness(0, 1), ab, p, q)
    assert render_program(cex.context) == "a."
    assert validate_counterexample(cex, ab, p, q) is None


def test_bogus_witness_is_rejected(ex):
    with pytest.raises(InvalidWitnessError):
        witness_to_counterexample(Witness(0, ex.U), ex.ab("ab", "b"), ex.P, ex.Q)


def test_validation_reasons(ex):
    ab = ex.ab("b", "ab")
    good = witness_to_counterexample(Witness(0, ex.U), ab, ex.P, ex.Q)
    assert validate_counterexample(good, ab, ex.P, ex.Q) is None
    flipped = Counterexample(good.context, good.distinguishing, "second")
    assert "side" in validate_counterexample(flipped, ab, ex.P, ex.Q)
    outside = Counterexample(ex.prog("a :- b."), ex.U, "first")
    assert "alphabet" in validate_counterexample(outside, ab, ex.P, ex.Q)
    not_unary = Counterexample(ex.prog("b :- a, b."), ex.U, "first")
    assert "unary" in validate_counterexample(not_unary, ab, ex.P, ex.Q)
    empty = Counterexample(Program(ws=ex.ws), ex.U, "first")
    assert "separate" in validate_counterexample(empty, ab, ex.P, ex.Q)


def test_containment_directions(ex):
    ab = ex.ab("b", "ab")
    assert not decide_containment(ex.P, ex.Q, ab)
    assert decide_containment(ex.Q, ex.P, ab)


def test_second_side_counterexample(ex):
    v = decide_equivalence(ex.Q, ex.P, ex.ab("b", "ab"))
    assert v.witness.direction == Q_IN_P
    assert v.counterexample.side == "second"
    assert validate_counterexample(v.counterexample, v.alphabet, ex.Q, ex.P) is None


def test_universe_extension_adds_idle_atoms(ex):
    ws = ex.ws
    u = ex.U | ws.mask("c")
    for heads, bodies, expected in EX1_VERDICTS:
        ab = ex.ab(heads, bodies)
        assert decide_equivalence(ex.P, ex.Q, ab, u).equivalent is expected


def test_oracle_counterexample_is_valid(ex):
    ab = ex.ab("ab", "ab")
    v = oracle_equivalence(ex.P, ex.Q, ab)
    assert not v
    assert validate_counterexample(v.counterexample, ab, ex.P, ex.Q) is None


def test_context_enumeration(ex):
    ab = ex.ab("ab", "b")
    ctxs = list(unary_contexts(ab, ex.ws))
    assert len(ctxs) == context_count(ab) == 16
    assert len(set(ctxs)) == 16
    assert ctxs[0] == Program(ws=ex.ws)


def test_budget(ex, monkeypatch):
    with pytest.raises(BudgetExceededError):
        oracle_equivalence(ex.P, ex.Q, ex.ab("ab", "ab"), budget=8)
    monkeypatch.setenv("HBEQ_BUDGET", "4")
    with pytest.raises(BudgetExceededError):
        oracle_equivalence(ex.P, ex.Q, ex.ab("ab", "b"))
    with pytest.raises(BudgetExceededError):
        equivalence_lattice_report(ex.P, ex.Q, budget=15)


def test_positive_fast_path(ex):
    p2 = ex.prog("a. a :- b.")
    assert decide_equivalence_positive(ex.P, p2, ex.m("ab"))
    for bodies in ("", "a", "b", "ab"):
        assert decide_equivalence(ex.P, p2, ex.ab("ab", bodies))
    q = ex.prog("a | b.")
    v = decide_equivalence_positive(ex.P, q, ex.m("a"), bodies=ex.m("b"))
    assert not v
    assert validate_counterexample(v.counterexample, v.alphabet, ex.P, q) is None
    with pytest.raises(NotPositiveError):
        decide_equivalence_positive(ex.P, ex.Q, ex.U)


def test_lattice_report(ex):
    rep = equivalence_lattice_report(ex.P, ex.Q)
    assert len(rep) == 16
    c = corners(ex.U)
    assert rep[c["ordinary"]] and rep[c["uniform"]] and rep[c["trivial"]]
    assert not rep[c["strong"]]
    for (h, b), ok in rep.items():
        if ok:
            for (h2, b2), ok2 in rep.items():
                if h2 & ~h == 0 and b2 & ~b == 0:
                    assert ok2


def test_reflexive_and_symmetric_on_random_pairs():
    ws = Workspace("abc")
    for p, q in random_pairs(ws, 40, seed=7):
        for h, b in alphabet_masks()[::5]:
            ab = AlphabetPair(h, b)
            assert decide_equivalence(p, p, ab, U)
            forward = decide_equivalence(p, q, ab, U).equivalent
            assert decide_equivalence(q, p, ab, U).equivalent == forward


def test_larger_alphabet_refines_smaller():
    ws = Workspace("abc")
    for p, q in random_pairs(ws, 40, seed=11):
        for h, b in alphabet_masks()[::3]:
            if decide_equivalence(p, q, AlphabetPair(h, b), U):
                for h2 in (h & 3, h & 5):
                    for b2 in (b & 3, b & 6):
                        assert decide_equivalence(p, q, AlphabetPair(h2, b2), U)


def test_witness_search_matches_literal_enumeration():
    ws = Workspace("abc")
    for p, q in random_pairs(ws, 60, seed=3):
        for h, b in alphabet_masks()[::4]:
            ab = AlphabetPair(h, b)
            assert (find_witness(p, q, ab, U) is None) == (not witnesses(p, q, ab, U))


def test_answer_sets_under_context_are_h_total():
    from hbeq import is_h_total
    ws = Workspace("abc")
    for p, _ in random_pairs(ws, 30, seed=13):
        for h, b in alphabet_masks()[::9]:
            ab = AlphabetPair(h, b)
            for ctx in unary_contexts(ab, ws):
                for y in answer_sets(p | ctx, U):
                    assert is_h_total(p, y, h)


def test_equivalence_is_both_containments():
    ws = Workspace("abc")
    for p, q in random_pairs(ws, 60, seed=17):
        for h, b in alphabet_masks()[::5]:
            ab = AlphabetPair(h, b)
            both = decide_containment(p, q, ab, U).equivalent and \
                decide_containment(q, p, ab, U).equivalent
            assert decide_equivalence(p, q, ab, U).equivalent == both


def test_ordinary_corner_is_ordinary_equivalence():
    from hbeq.semantics import ordinary_equivalent
    ws = Workspace("abc")
    for p, q in random_pairs(ws, 60, seed=19):
        rep = equivalence_lattice_report(p, q, U)
        assert rep[corners(U)["ordinary"]] == ordinary_equivalent(p, q, U)

import itertools
import random

import numpy as np
import pytest

from interp_forge import errors
from interp_forge.benchgen import clique_color_sequent
from interp_forge.randgen import random_formula
from interp_forge.semantics import (between, brute_interpolant, eval_classical, interpolant_bounds, monotone_in,
                                    semantic_monotone, sequent_valid, truth_table)
from interp_forge.syntax import EMPTY, Language, Multiset, parse_formula, parse_sequent

F = parse_formula
CLASSICAL = Language.make(negation=True, plus=True)


def ms(*fs):
    return Multiset([F(x) for x in fs])


def test_eval_examples():
    assert eval_classical(F("(fuse p q)"), {"p": 1, "q": 0}) == 0
    for v in (0, 1):
        assert eval_classical(F("(plus p (not p))"), {"p": v}) == 1
    assert eval_classical(F("(imp one zero)"), {}) == 0


def test_eval_errors():
    with pytest.raises(errors.UnboundAtom):
        eval_classical(F("p"), {})
    with pytest.raises(errors.ModalNotSupported):
        eval_classical(F("(box p)"), {"p": 1})


def test_sequent_valid_examples():
    assert sequent_valid(parse_sequent("(seq (p) (p))"))
    assert not sequent_valid(parse_sequent("(seq (p) (q))"))
    assert sequent_valid(clique_color_sequent(3, 3, 2))


def test_budget(monkeypatch):
    s = clique_color_sequent(3, 3, 2)
    with pytest.raises(errors.BudgetExceeded):
        sequent_valid(s, 10)
    monkeypatch.setenv("INTERP_FORGE_BUDGET", "10")
    with pytest.raises(errors.BudgetExceeded):
        sequent_valid(s)


def test_truth_table_matches_pointwise_eval():
    rng = random.Random(1)
    for _ in range(50):
        f = random_formula(rng, CLASSICAL, ("a", "b", "c"), 3)
        atoms = sorted(f.vars())
        t = truth_table(f, atoms)
        for i, bits in enumerate(itertools.product((0, 1), repeat=len(atoms))):
            alpha = {a: (i >> j) & 1 for j, a in enumerate(atoms)}
            assert t[i] == bool(eval_classical(f, alpha))


def test_brute_interpolant_examples():
    assert brute_interpolant(ms("(and p q)"), EMPTY, ms("(or q r)")) == F("q")
    assert brute_interpolant(EMPTY, EMPTY, ms("(or p (not p))")) == F("top")
    with pytest.raises(errors.InvalidInput):
        brute_interpolant(ms("p"), ms("p"), EMPTY)


def test_brute_interpolant_is_between():
    rng = random.Random(3)
    done = 0
    while done < 20:
        a = random_formula(rng, CLASSICAL, ("p", "q", "r"), 2)
        b = random_formula(rng, CLASSICAL, ("q", "r", "s"), 2)
        if not sequent_valid(parse_sequent(f"(seq ({a.key}) ({b.key}))")):
            continue
        c = brute_interpolant(Multiset([a]), EMPTY, Multiset([b]), max_size=7)
        assert between(c, Multiset([a]), EMPTY, Multiset([b]))
        assert c.vars() <= a.vars() & b.vars()
        done += 1


def test_bounds_order():
    shared, lo, hi = interpolant_bounds(ms("(and p q)"), EMPTY, ms("(or q r)"))
    assert shared == ["q"]
    assert np.all(~lo | hi)


def test_semantic_monotone_examples():
    assert semantic_monotone(F("(and p (or q p))"))
    assert not semantic_monotone(F("(not p)"))
    assert semantic_monotone(F("(not (not p))"))


def test_monotone_in_subset():
    f = F("(and p (not q))")
    assert monotone_in(f, ["p"]) and not monotone_in(f, ["q"])


def test_syntactic_positivity_implies_semantic_monotonicity():
    rng = random.Random(9)
    for _ in range(300):
        f = random_formula(rng, CLASSICAL, ("a", "b", "c"), 3, monotone=True)
        assert semantic_monotone(f)

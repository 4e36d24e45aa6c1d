import random

import pytest

from interp_forge import errors
from interp_forge.builders import Builder
from interp_forge.calculi import builtin
from interp_forge.kernel import (Derivation, check, h_length, imported, lk, lk_prove, node_count, parse_proof,
                                 proof_leaves, proof_size, serialize_proof)
from interp_forge.randgen import ProofGenerator, mutate
from interp_forge.schema import Substitution
from interp_forge.semantics import sequent_valid
from interp_forge.syntax import EMPTY, Multiset, Sequent, parse_formula, parse_sequent, size

from test_calculi import classical_formula

F = parse_formula


def test_identity_node(fle):
    d = Builder(fle).ident(F("p"))
    assert check(fle, d)
    assert proof_size(d) > size(d.sequent)


def test_mismatched_child_rejected(fle):
    b = Builder(fle)
    child = Derivation(parse_sequent("(seq (q) (p))"), "id", Substitution({"phi": F("p")}))
    bad = Derivation(parse_sequent("(seq ((and p q)) (p))"), "Land1",
                     Substitution({"phi": F("p"), "psi": F("q")}, {"G": EMPTY, "D": Multiset([F("p")])}), (child,))
    with pytest.raises(errors.CheckFailure) as e:
        check(fle, bad)
    assert e.value.path == ()
    assert check(fle, b.apply("Land1", [b.ident(F("p"))], phi=F("p"), psi=F("q")))


def test_worked_example(fle, worked):
    assert check(fle, worked)
    assert worked.sequent == parse_sequent("(seq ((and p q)) ((or p r)))")
    sizes = [proof_size(d) for _, d in worked.nodes()]
    assert proof_size(worked) == sizes[0]
    assert sizes[0] > sizes[1] > sizes[2]
    assert proof_leaves(worked) == 1 and node_count(worked) == 3


def test_proof_round_trip(fle, worked):
    text = serialize_proof(worked)
    assert parse_proof(text, fle.language) == worked
    assert text.startswith("(proof (node (seq")


def test_wrong_child_count(fle, worked):
    d = Derivation(worked.sequent, worked.rule, worked.subst, ())
    with pytest.raises(errors.CheckFailure):
        check(fle, d)


def test_imports_need_permission(fle):
    d = imported(parse_sequent("(seq (p) (p))"))
    with pytest.raises(errors.CheckFailure):
        check(fle, d)
    assert check(fle, d, allow_imports=True)


def test_h_length(fle):
    h = builtin("FLew")
    b = Builder(h)
    p = F("p")
    inside = b.apply("Land1", [b.ident(p)], phi=p, psi=F("q"))
    assert h_length(fle, h, inside) == 0
    top = b.apply("Lw", [inside], phi=F("r"))
    assert h_length(fle, h, top) == 1
    assert h_length(fle, h, top) <= node_count(top)
    assert h_length(fle, h, Builder(h).apply("Lw", [imported(inside.sequent)], phi=F("r"))) == 1
    with pytest.raises(errors.NotAnExtension):
        h_length(h, fle, top)


def test_discipline_enforced(fle):
    d = Derivation(parse_sequent("(seq (bot) (p q))"), "bot-l",
                   Substitution({}, {"G": EMPTY, "D": Multiset([F("p"), F("q")])}))
    with pytest.raises(errors.CheckFailure):
        check(fle, d)


def test_lk_prove_examples():
    d = lk_prove(parse_sequent("(seq (p) (p))"))
    assert node_count(d) == 1
    em = parse_sequent("(seq () ((or p (not p))))")
    assert check(lk(), lk_prove(em)) and sequent_valid(em)
    pq = parse_sequent("(seq (p) (q))")
    with pytest.raises(errors.NotFound):
        lk_prove(pq)
    assert not sequent_valid(pq)


def test_lk_prove_agrees_with_truth_tables():
    rng = random.Random(2)
    for _ in range(200):
        s = Sequent(Multiset([classical_formula(rng, ("p", "q", "r"), 2) for _ in range(rng.randrange(3))]),
                    Multiset([classical_formula(rng, ("p", "q", "r"), 3)]))
        valid = sequent_valid(s)
        try:
            d = lk_prove(s)
        except errors.NotFound:
            assert not valid, s
            continue
        assert valid and check(lk(), d) and d.sequent == s


@pytest.mark.parametrize("name", ["FLe", "CFLe", "ILL", "FLe+S4"])
def test_random_proofs_check_and_mutants_fail(name):
    h = builtin(name)
    rng = random.Random(8)
    g = ProofGenerator(h, rng)
    for _ in range(30):
        d = g.proof()
        assert check(h, d)
        try:
            m = mutate(d, rng, h)
        except errors.InvalidInput:
            continue
        with pytest.raises(errors.CheckFailure):
            check(h, m)

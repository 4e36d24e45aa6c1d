import random
from dataclasses import replace

import pytest

from interp_forge import errors
from interp_forge.builders import Builder
from interp_forge.calculi import builtin, focused_cpc
from interp_forge.interpolation import (Split, format_split, interpolate, interpolate_axiom, interpolate_mc,
                                        interpolate_monotone, interpolate_sc, parse_result, parse_split,
                                        serialize_result, verify_interpolation)
from interp_forge.kernel import Derivation, check
from interp_forge.randgen import ProofGenerator, random_parts, random_split
from interp_forge.semantics import sequent_valid
from interp_forge.syntax import EMPTY, Multiset, Sequent, parse_formula

F = parse_formula


def M(*fs):
    return Multiset([F(x) for x in fs])


# ---------------------------------------------------------------- axiom cases

def test_identity_in_sigma(fle):
    d = Builder(fle).ident(F("p"))
    assert interpolate_axiom(fle, d, Split.single(d.sequent, M("p"))).interpolant == F("p")


def test_identity_in_lambda(fle):
    d = Builder(fle).ident(F("p"))
    assert interpolate_axiom(fle, d, Split.single(d.sequent, EMPTY)).interpolant == F("one")


def test_context_free_left_axiom():
    h = focused_cpc()
    d = Builder(h).axiom("neg-l", phi=F("q"))
    r = interpolate_axiom(h, d, Split.strong(d.sequent, M("q"), EMPTY))
    assert r.interpolant == F("q")
    assert r.left.sequent == Sequent(M("q"), M("q"))
    assert r.right.sequent == Sequent(M("(not q)", "q"), EMPTY)
    assert verify_interpolation(h, r.split, r).ok


def test_interpolate_axiom_rejects_rules(fle, worked):
    with pytest.raises(errors.NotAFocusedAxiom):
        interpolate_axiom(fle, worked, Split.single(worked.sequent, EMPTY))


# ---------------------------------------------------------------- single-conclusion

def test_land_example(fle):
    b = Builder(fle)
    d = b.apply("Land1", [b.ident(F("p"))], phi=F("p"), psi=F("q"))
    r = interpolate_sc(fle, d, Split.single(d.sequent, d.sequent.ant))
    assert r.interpolant == F("p")
    assert verify_interpolation(fle, r.split, r).ok


def test_ror_example(fle):
    b = Builder(fle)
    d = b.apply("Ror1", [b.ident(F("p"))], phi=F("p"), psi=F("q"))
    assert interpolate_sc(fle, d, Split.single(d.sequent, M("p"))).interpolant == F("p")


def test_k_example():
    h = builtin("FLe+K")
    b = Builder(h)
    d = b.apply("K", [b.ident(F("p"))], phi=F("p"))
    r = interpolate_sc(h, d, Split.single(d.sequent, d.sequent.ant))
    assert r.interpolant == F("(box p)")
    assert verify_interpolation(h, r.split, r).ok


@pytest.mark.parametrize("sigma", [(), ("(and p q)",)])
def test_worked_example_all_splits(fle, worked, sigma):
    r = interpolate(fle, worked, Split.single(worked.sequent, M(*sigma)))
    rep = verify_interpolation(fle, r.split, r)
    assert rep.ok and all(line.endswith("ok") for line in rep.lines())


def test_sc_rejects_multi_calculus(worked):
    h = builtin("CFLe")
    with pytest.raises(errors.InterpForgeError):
        interpolate_sc(h, worked, Split.single(worked.sequent, EMPTY))


def test_split_must_match_root(fle, worked):
    with pytest.raises(errors.SplitMismatch):
        interpolate(fle, worked, Split.single(Sequent(M("p"), M("p")), EMPTY))


# ---------------------------------------------------------------- multi-conclusion

def test_k_with_box_in_theta():
    h = builtin("CFLe+K")
    b = Builder(h)
    d = b.apply("K", [b.ident(F("p"))], phi=F("p"))
    r = interpolate_mc(h, d, Split.strong(d.sequent, EMPTY, d.sequent.suc))
    c = r.interpolant
    # ¬□¬D written with implications into 0
    assert c.op == "imp" and c.args[1] == F("zero") and c.args[0].op == "box"
    assert c.args[0].args[0].op == "imp" and c.args[0].args[0].args[1] == F("zero")
    assert verify_interpolation(h, r.split, r).ok


def test_excluded_middle_axiom_strong_split():
    h = focused_cpc()
    d = Builder(h).axiom("neg-r", phi=F("p"))
    r = interpolate_mc(h, d, Split.strong(d.sequent, EMPTY, M("p")))
    assert r.interpolant == F("(not p)")
    assert r.left.sequent == Sequent(EMPTY, M("(not p)", "p")) and r.left.rule == "neg-r"
    assert r.right.sequent == Sequent(M("(not p)"), M("(not p)")) and r.right.rule == "id"


def test_degenerate_split_has_no_variables():
    h = builtin("CFLe")
    rng = random.Random(6)
    g = ProofGenerator(h, rng)
    for _ in range(30):
        d = g.proof()
        r = interpolate_mc(h, d, Split.strong(d.sequent, EMPTY, EMPTY))
        assert r.interpolant.vars() == set()


def test_mall_negated_identity_needs_stronger_base():
    h = builtin("MALL")
    d = Builder(h).ident(F("p"))
    with pytest.raises(errors.BaseTooWeak):
        interpolate_mc(h, d, Split.strong(d.sequent, EMPTY, M("p")))


# ---------------------------------------------------------------- monotone

def test_monotone_identity():
    h = focused_cpc()
    d = Builder(h).ident(F("p"))
    r = interpolate_monotone(h, d, Split.monotone(d.sequent, [M("p"), EMPTY]))
    assert r.interpolants == (F("p"), F("zero"))


def test_monotone_context_right_axiom():
    h = focused_cpc()
    d = Builder(h).axiom("neg-bot", {"G": M("a"), "D": M("x", "y")})
    r = interpolate_monotone(h, d, Split.monotone(d.sequent, [M("(not bot)"), M("x", "y")]))
    assert r.interpolants[1] == F("(plus bot bot)")
    assert verify_interpolation(h, r.split, r).ok


def test_monotone_single_part():
    h = focused_cpc()
    rng = random.Random(12)
    g = ProofGenerator(h, rng)
    done = 0
    for _ in range(40):
        d = g.proof()
        try:
            r = interpolate_monotone(h, d, Split.monotone(d.sequent, [d.sequent.suc]))
        except errors.NotStronglyFocusedAxiom:
            continue
        c = Multiset([r.interpolant])
        assert sequent_valid(Sequent(d.sequent.ant, c)) and sequent_valid(Sequent(c, d.sequent.suc))
        done += 1
    assert done >= 10


def test_monotone_not_strongly_focused():
    h = focused_cpc()
    d = Builder(h).axiom("neg-r", phi=F("p"))
    with pytest.raises(errors.NotStronglyFocusedAxiom):
        interpolate_monotone(h, d, Split.monotone(d.sequent, [M("p"), M("(not p)")]))


def test_monotone_rejects_unfocused_rule():
    h = builtin("CFLe")
    b = Builder(h)
    d = b.apply("Rimp", [b.ident(F("p"))], phi=F("p"), psi=F("p"))
    with pytest.raises(errors.NotMPF):
        interpolate_monotone(h, d, Split.monotone(d.sequent, [d.sequent.suc]))


# ---------------------------------------------------------------- verification report

def test_report_flags_variable_violation(fle):
    b = Builder(fle)
    d = b.apply("Ror1", [b.ident(F("p"))], phi=F("p"), psi=F("q"))
    r = interpolate_sc(fle, d, Split.single(d.sequent, M("p")))
    bad = replace(r, interpolants=(F("q"),))
    rep = verify_interpolation(fle, r.split, bad)
    assert not rep.variables_ok and not rep.ok


def test_report_flags_corrupted_witness(fle, worked):
    r = interpolate(fle, worked, Split.single(worked.sequent, worked.sequent.ant))
    w = r.left
    broken = Derivation(w.sequent, w.rule, w.subst.with_formula("phi", F("(and r r)")) if "phi" in w.subst.formulas
                        else w.subst, w.children)
    if broken == w:
        broken = Derivation(w.sequent, "Lfuse", w.subst, w.children)
    rep = verify_interpolation(fle, r.split, replace(r, left=broken))
    assert not rep.left_ok and rep.right_ok


def test_deterministic(fle, worked):
    sp = Split.single(worked.sequent, worked.sequent.ant)
    a, b = interpolate(fle, worked, sp), interpolate(fle, worked, sp)
    assert a.interpolants == b.interpolants and a.left == b.left and a.right == b.right


# ---------------------------------------------------------------- text formats

def test_parse_split_indices():
    s = Sequent(M("a", "b"), M("c", "d"))
    sp = parse_split("ant:0=S,1=L;suc:0=T,1=D", s, "mc")
    assert sp.sigma == M("a") and sp.lam == M("b") and sp.theta == M("c") and sp.delta == M("d")
    assert parse_split(format_split(sp), s, "mc") == sp


def test_parse_split_repeated_occurrences():
    s = Sequent(M("p", "p"), M("p"))
    sp = parse_split("ant:0=S,1=L", s, "sc")
    assert sp.sigma == M("p") and sp.lam == M("p")


def test_parse_split_errors():
    s = Sequent(M("a"), M("c"))
    with pytest.raises(errors.InterpForgeError):
        parse_split("ant:5=S", s, "sc")
    with pytest.raises(errors.InterpForgeError):
        parse_split("suc:0=T", s, "sc")


def test_parse_parts():
    s = Sequent(M("a"), M("c", "d"))
    sp = parse_split("suc:0=1,1=2", s, "monotone")
    assert sp.parts == (M("c"), M("d"))


@pytest.mark.parametrize("name", ["FLe", "CFLe", "FocusedCPC"])
def test_result_round_trip(name):
    h = builtin(name)
    rng = random.Random(21)
    d = ProofGenerator(h, rng).proof()
    sp = random_split(rng, d.sequent, strong=not h.single)
    r = interpolate(h, d, sp)
    back = parse_result(serialize_result(r), r.left, r.rights, h.language)
    assert back.interpolants == r.interpolants and back.split == r.split and back.mode == r.mode
    assert verify_interpolation(h, back.split, back).lines() == verify_interpolation(h, sp, r).lines()


def test_monotone_result_round_trip():
    h = focused_cpc()
    rng = random.Random(22)
    g = ProofGenerator(h, rng, monotone=True, rules=[r.name for r in h.axioms + h.rules
                                                      if r.name not in ("neg-l", "neg-r")])
    for _ in range(50):
        d = g.proof()
        try:
            r = interpolate_monotone(h, d, random_parts(rng, d.sequent, 2))
        except errors.InterpForgeError:
            continue
        back = parse_result(serialize_result(r), r.left, r.rights, h.language)
        assert back.interpolants == r.interpolants and back.split == r.split
        return
    pytest.fail("no monotone instance generated")

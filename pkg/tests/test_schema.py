import random

import pytest

from interp_forge import errors
from interp_forge.calculi import builtin, library
from interp_forge.schema import (ABSENT, NON_POSITIVE, POSITIVE, Substitution, check_occurrence_preserving,
                                 classify_axiom, classify_rule, instantiate, match_mseq, parse_mseq, parse_rule,
                                 polarity)
from interp_forge.syntax import EMPTY, Multiset, parse_formula, parse_sequent

F = parse_formula
SC = library("single")
MC = library("multi")

DYCKHOFF = """(rule Dyck (premises (mseq (ant $G (imp ?psi ?gamma)) (suc (imp ?phi ?psi)))
                               (mseq (ant $G ?gamma) (suc $D)))
                     (conclusion (mseq (ant $G (imp (imp ?phi ?psi) ?gamma)) (suc $D))))"""
KC = """(rule KC (premises (mseq (ant $G ?phi) (suc ?psi (not $D))))
                (conclusion (mseq (ant $G) (suc (imp ?phi ?psi) (not $D)))))"""


def ms(*fs):
    return Multiset([F(x) for x in fs])


def test_instantiate_land():
    sigma = Substitution({"phi": F("p"), "psi": F("q")}, {"G": EMPTY, "D": ms("p")})
    prem, concl = instantiate(SC["Land1"], sigma)
    assert prem == [parse_sequent("(seq (p) (p))")]
    assert concl == parse_sequent("(seq ((and p q)) (p))")


def test_instantiate_rfuse():
    sigma = Substitution({"phi": F("p"), "psi": F("q")}, {"G": ms("a"), "S": ms("b"), "D": EMPTY, "L": EMPTY})
    prem, concl = instantiate(MC["Rfuse"], sigma)
    assert prem == [parse_sequent("(seq (a) (p))"), parse_sequent("(seq (b) (q))")]
    assert concl == parse_sequent("(seq (a b) ((fuse p q)))")


def test_instantiate_k_with_empty_context():
    prem, concl = instantiate(SC["K"], Substitution({"phi": F("p")}, {"G": EMPTY}))
    assert prem == [parse_sequent("(seq () (p))")]
    assert concl == parse_sequent("(seq () ((box p)))")


def test_instantiate_errors():
    with pytest.raises(errors.MissingBinding):
        instantiate(SC["Land1"], Substitution({"phi": F("p")}, {"G": EMPTY, "D": EMPTY}))
    with pytest.raises(errors.DisciplineViolation):
        instantiate(SC["Land1"], Substitution({"phi": F("p"), "psi": F("q")}, {"G": EMPTY, "D": ms("p", "q")}))


def test_match_round_trip():
    rng = random.Random(4)
    rule = MC["Rfuse"]
    sigma = Substitution({"phi": F("(and p q)"), "psi": F("r")},
                         {"G": ms("a", "b"), "S": ms("c"), "D": ms("d"), "L": EMPTY})
    _, concl = instantiate(rule, sigma)
    found = [m for m in match_mseq(rule.conclusion, concl, None, rng)]
    assert any(instantiate(rule, m)[1] == concl for m in found)
    assert all(instantiate(rule, m)[1] == concl for m in found)


def test_occurrence_preserving():
    assert check_occurrence_preserving(SC["Land1"])
    assert not check_occurrence_preserving(MC["cut"])
    assert check_occurrence_preserving(SC["Lw"])


def test_polarity():
    assert polarity(F("(and p (or q p))"), "p") == POSITIVE
    assert polarity(F("(imp p q)"), "p") == NON_POSITIVE
    assert polarity(F("(not (not p))"), "p") == NON_POSITIVE
    assert polarity(F("q"), "p") == ABSENT


@pytest.mark.parametrize("name", ["Land1", "Land2", "Lor", "Lfuse", "Lplus"])
def test_left_rules_focused(name):
    c = classify_rule(MC[name])
    assert c.semi_analytic and c.focused_left and c.ppf and c.mpf


@pytest.mark.parametrize("name", ["Rand", "Ror1", "Ror2", "Rplus"])
def test_right_rules_focused(name):
    c = classify_rule(MC[name])
    assert c.semi_analytic and c.focused_right and c.ppf and c.mpf


def test_non_examples():
    assert not classify_rule(MC["cut"]).semi_analytic
    assert not classify_rule(parse_rule(KC)).semi_analytic


def test_dyckhoff_context_sharing():
    c = classify_rule(parse_rule(DYCKHOFF, discipline="single"))
    assert c.context_sharing and c.semi_analytic


def test_single_rimp_not_focused():
    c = classify_rule(SC["Rimp"])
    assert c.right_semi_analytic and not c.focused


def test_axioms():
    a = classify_axiom(parse_mseq("(mseq (ant ?phi) (suc ?phi))"))
    assert a.kind == "identity" and a.strongly_focused
    a = classify_axiom(parse_mseq("(mseq (ant) (suc ?phi (not ?phi)))"))
    assert a.focused and not a.strongly_focused
    a = classify_axiom(parse_mseq("(mseq (ant $G (not top)) (suc $D))"))
    assert a.kind == "ctx-left" and a.strongly_focused


def test_classification_is_pure():
    r = parse_rule(DYCKHOFF, discipline="single")
    assert classify_rule(r) == classify_rule(r)


def test_focused_subsets():
    for name in ("FLe", "CFLe", "MALL", "FocusedCPC", "CLL"):
        for r in builtin(name).rules:
            c = classify_rule(r)
            if c.ppf or c.mpf:
                assert c.focused, r.name


@pytest.mark.parametrize("name", ["FLe-", "FLe", "FLew", "FLec", "CFLe-", "CFLe", "CFLew", "CFLec", "MALL", "ILL",
                                  "CLL", "FLe+K", "FLe+KD", "FLe+S4", "FLe+K4", "CFLe+K", "FocusedCPC"])
def test_builtins_semi_analytic(name):
    h = builtin(name)
    for r in h.rules:
        c = classify_rule(r)
        # 4 and 4D are modal rules outside the semi-analytic class, recognised on their own
        assert c.semi_analytic or c.modal in ("4", "4D"), r.name
    for a in h.axioms:
        assert classify_axiom(a.conclusion).focused, a.name


def test_lk_cut_not_semi_analytic():
    assert not classify_rule(builtin("LK").get("cut")).semi_analytic

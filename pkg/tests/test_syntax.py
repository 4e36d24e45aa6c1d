import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interp_forge import errors
from interp_forge.calculi import builtin
from interp_forge.randgen import random_formula
from interp_forge.syntax import (FULL, Formula, Multiset, Sequent, canonical_translation, identity_translation,
                                 parse, parse_formula, parse_sequent, serialize, size, translate)

F = parse_formula


def test_vars_examples():
    assert F("(and p (imp q p))").vars() == {"p", "q"}
    assert F("one").vars() == set()
    assert F("(not top)").vars() == set()


def test_size_examples():
    assert size(F("p")) == 1
    pq = F("(and p q)")
    assert size(pq) == size(F("p")) + size(F("q")) + 1


def test_translate_examples():
    t = canonical_translation()
    assert translate(t, F("(fuse p q)")) == F("(and p q)")
    assert translate(t, F("one")) == F("top")
    assert translate(t, F("zero")) == F("bot")
    g = F("(imp (fuse p q) (plus r zero))")
    assert translate(identity_translation(), g) == g


def test_translation_size_bound():
    t = canonical_translation()
    rng = random.Random(0)
    for _ in range(1000):
        f = random_formula(rng, FULL, ("p", "q", "r", "s"), depth=5)
        assert size(translate(t, f)) <= t.bound_constant * size(f)
        assert translate(t, f).vars() <= f.vars()


def test_parse_examples():
    assert parse("(and p q)") == Formula("and", (F("p"), F("q")))
    s = parse("(seq ((and p q)) (p))")
    assert isinstance(s, Sequent)
    assert s.ant == Multiset([F("(and p q)")]) and s.suc == Multiset([F("p")])
    with pytest.raises(errors.ArityMismatch):
        parse("(and p)")


def test_syntax_error_has_position():
    with pytest.raises(errors.SyntaxError) as e:
        parse("(and p q")
    assert "offset" in str(e.value)


def test_undeclared_connective_rejected_by_language():
    assert not builtin("FLe").language.admits(F("(box p)"))


formulas = st.builds(lambda seed, d: random_formula(random.Random(seed), FULL, ("a", "b", "c", "d", "e", "f"), d),
                     st.integers(0, 10**9), st.integers(0, 8))


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_round_trip(f):
    assert parse(serialize(f)) == f
    assert serialize(parse(serialize(f))) == serialize(f)


@settings(max_examples=100, deadline=None)
@given(st.lists(formulas, max_size=5), st.lists(formulas, max_size=5), st.lists(formulas, max_size=5))
def test_multiset_laws(a, b, c):
    A, B, C = Multiset(a), Multiset(b), Multiset(c)
    assert (A + B) - B == A
    assert A + B == B + A
    assert (A + B) + C == A + (B + C)


def test_sequent_round_trip():
    s = parse_sequent("(seq (p (fuse p q)) (r))")
    assert parse_sequent(serialize(s)) == s

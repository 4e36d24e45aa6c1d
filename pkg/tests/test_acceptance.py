"""The seven acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""
import itertools
import random
import time

import pytest

from interp_forge import errors
from interp_forge.benchgen import (clique_color_pipeline, clique_color_sequent, edge_atoms, measure, report,
                                   separates)
from interp_forge.calculi import builtin, focused_cpc
from interp_forge.focusing import lk_to_focused
from interp_forge.interpolation import Split, interpolate, interpolate_monotone, verify_interpolation
from interp_forge.kernel import check, lk_prove, proof_size
from interp_forge.randgen import ProofGenerator, mutations, random_parts, random_split
from interp_forge.schema import classify_axiom, classify_rule, is_monotone, parse_mseq, parse_rule
from interp_forge.calculi import library
from interp_forge.semantics import between, brute_interpolant, monotone_in, semantic_monotone, sequent_valid
from interp_forge.syntax import EMPTY, Formula, Multiset, Sequent, big

from test_schema import DYCKHOFF, KC


def detail(request, text):
    request.node.user_properties.append(("detail", text))


# ---------------------------------------------------------------- 1. kernel soundness

KERNEL_POOL = ["FLe", "FLew", "FLec", "CFLe", "MALL", "ILL", "FocusedCPC"]


@pytest.mark.criterion(1)
def test_kernel_soundness(request):
    rng = random.Random(1001)
    gens = {n: ProofGenerator(builtin(n), rng) for n in KERNEL_POOL}
    t0 = time.perf_counter()
    checked = rejected = mutated = 0
    for i in range(500):
        name = KERNEL_POOL[i % len(KERNEL_POOL)]
        h = builtin(name)
        d = gens[name].proof()
        assert check(h, d)
        checked += 1
        for m in mutations(d):
            mutated += 1
            with pytest.raises(errors.CheckFailure):
                check(h, m)
            rejected += 1
    elapsed = time.perf_counter() - t0
    detail(request, f"{checked} checked, {rejected}/{mutated} single-binding mutants rejected, {elapsed:.2f}s")
    assert checked == 500 and rejected == mutated > 0
    assert elapsed < 10


# ---------------------------------------------------------------- 2. interpolation contract

SC_POOL = ["FLe-", "FLe", "FLew", "FLec", "ILL", "FLe+K", "FLe+KD", "FLe+S4", "FLe+K4"]
MC_POOL = ["CFLe-", "CFLe", "CFLew", "CFLec", "CLL", "CFLe+K", "FocusedCPC"]


def _contract(names, per_calculus, seed):
    rng = random.Random(seed)
    n = worst = 0.0
    count = 0
    for name in names:
        h = builtin(name)
        g = ProofGenerator(h, rng)
        for _ in range(per_calculus):
            d = g.proof()
            sp = random_split(rng, d.sequent, strong=not h.single)
            t0 = time.perf_counter()
            r = interpolate(h, d, sp)
            rep = verify_interpolation(h, sp, r)
            worst = max(worst, time.perf_counter() - t0)
            assert rep.ok, (name, rep.lines())
            assert r.interpolant.size() <= proof_size(d) ** 2
            count += 1
    return count, worst


@pytest.mark.criterion(2)
def test_interpolation_contract_single_conclusion(request):
    count, worst = _contract(SC_POOL, 200, 2002)
    detail(request, f"sc: {count} ok, slowest {worst:.3f}s")
    assert count >= 200 and worst < 1


@pytest.mark.criterion(2)
def test_interpolation_contract_multi_conclusion(request):
    count, worst = _contract(MC_POOL, 200, 2003)
    detail(request, f"mc: {count} ok, slowest {worst:.3f}s")
    assert count >= 200 and worst < 1


@pytest.mark.criterion(2)
def test_interpolation_contract_mall(request):
    # MALL has neither implication nor negation; a split that puts the two
    # sides of an identity into Λ and Θ needs a negated interpolant and is
    # refused with BaseTooWeak.  Every other instance must meet the contract.
    rng = random.Random(2004)
    h = builtin("MALL")
    g = ProofGenerator(h, rng)
    ok = refused = 0
    for _ in range(200):
        d = g.proof()
        sp = random_split(rng, d.sequent, strong=True)
        try:
            r = interpolate(h, d, sp)
        except errors.BaseTooWeak:
            refused += 1
            continue
        assert verify_interpolation(h, sp, r).ok
        ok += 1
    detail(request, f"MALL: {ok} ok, {refused} refused as BaseTooWeak")
    assert ok + refused == 200 and ok >= 150


# ---------------------------------------------------------------- 3. semantic cross-validation

@pytest.mark.criterion(3)
def test_semantic_cross_validation(request):
    h = focused_cpc()
    rng = random.Random(3003)
    g = ProofGenerator(h, rng)
    valid = brute = 0
    while valid < 100 or brute < 30:
        d = g.proof()
        sp = random_split(rng, d.sequent, strong=False)
        sp = Split.strong(d.sequent, sp.sigma, EMPTY)
        r = interpolate(h, d, sp)
        c = Multiset([r.interpolant])
        assert sequent_valid(Sequent(sp.sigma, c))
        assert sequent_valid(Sequent(sp.lam + c, sp.delta))
        valid += 1
        shared = big("fuse", sp.sigma.items).vars() & (big("fuse", sp.lam.items).vars() | big("plus", sp.delta.items).vars())
        if brute < 30 and len(shared) <= 3 and sp.sigma:
            brute_interpolant(sp.sigma, sp.lam, sp.delta, max_size=7)
            assert between(r.interpolant, sp.sigma, sp.lam, sp.delta)
            brute += 1
    detail(request, f"{valid} truth-table checks, {brute} oracle comparisons")


# ---------------------------------------------------------------- 4. monotone variant

MONO_EXCLUDED = {"neg-l", "neg-r", "Limp-f"}


@pytest.mark.criterion(4)
def test_monotone_variant(request):
    h = focused_cpc()
    pool = [r.name for r in h.axioms + h.rules if r.name not in MONO_EXCLUDED and not r.name.startswith("Lnot")]
    rng = random.Random(4004)
    g = ProofGenerator(h, rng, monotone=True, rules=pool)
    done = 0
    ks = set()
    while done < 100:
        d = g.proof()
        if not all(is_monotone(f) for f in d.sequent.ant):
            continue
        k = rng.choice((1, 2, 3))
        sp = random_parts(rng, d.sequent, k)
        r = interpolate_monotone(h, d, sp)
        rep = verify_interpolation(h, sp, r)
        assert rep.ok and rep.monotone_ok, rep.lines()
        assert all(semantic_monotone(c) for c in r.interpolants)
        ks.add(k)
        done += 1
    detail(request, f"{done} instances, k in {sorted(ks)}")
    assert ks == {1, 2, 3}


# ---------------------------------------------------------------- 5. LK / FocusedCPC equivalence

def _connectives(f: Formula) -> int:
    return sum(1 for g in f.subformulas() if g.op not in ("atom",))


def _classical(rng, atoms, depth):
    if depth == 0 or rng.random() < 0.25:
        return Formula("atom", (), rng.choice(atoms))
    op = rng.choice(("and", "or", "imp", "not"))
    if op == "not":
        return Formula("not", (_classical(rng, atoms, depth - 1),))
    return Formula(op, (_classical(rng, atoms, depth - 1), _classical(rng, atoms, depth - 1)))


@pytest.mark.criterion(5)
def test_equivalence(request):
    t0 = time.perf_counter()
    rng = random.Random(5005)
    atoms = ("p", "q", "r")
    complete = 0
    while complete < 100:
        s = Sequent(Multiset(_classical(rng, atoms, 2) for _ in range(rng.randrange(3))),
                    Multiset(_classical(rng, atoms, 3) for _ in range(rng.randrange(1, 3))))
        if sum(_connectives(f) for f in s.ant.items + s.suc.items) > 10 or not sequent_valid(s):
            continue
        out = lk_to_focused(lk_prove(s))
        assert out.sequent == s and check(focused_cpc(), out)
        complete += 1
    h = focused_cpc()
    g = ProofGenerator(h, rng)
    for _ in range(200):
        assert sequent_valid(g.proof().sequent)
    elapsed = time.perf_counter() - t0
    detail(request, f"100 LK->focused, 200 sound roots, {elapsed:.1f}s")
    assert elapsed < 60


# ---------------------------------------------------------------- 6. Clique-Color

@pytest.mark.criterion(6)
def test_clique_color_validity(request):
    t0 = time.perf_counter()
    assert sequent_valid(clique_color_sequent(3, 3, 2))
    t3 = time.perf_counter() - t0
    t0 = time.perf_counter()
    # n=4 has 6 edge atoms, 12 clique selectors and 8 colour atoms
    assert sequent_valid(clique_color_sequent(4, 3, 2), 26)
    t4 = time.perf_counter() - t0
    detail(request, f"valid at n=3 ({t3:.2f}s) and n=4 ({t4:.1f}s)")
    assert t3 < 5 and t4 < 120


@pytest.mark.criterion(6)
def test_clique_color_interpolant(request):
    r = clique_color_pipeline(3)
    c = r.interpolant
    assert c.vars() <= set(edge_atoms(3))
    assert monotone_in(c, edge_atoms(3))
    assert separates(c, 3, 3, 2)
    rows = measure([3, 4])
    table = report(rows)
    print(table)
    sizes = ", ".join(f"n={m.n}: |C|={m.interpolant_size}, |pi|={m.proof_size}" for m in rows)
    detail(request, f"separates at n=3; {sizes}")


# ---------------------------------------------------------------- 7. classification fixtures

@pytest.mark.criterion(7)
def test_classification_fixtures(request):
    mc = library("multi")
    sc = library("single")
    table = {}
    for name in ("Land1", "Land2", "Ror1", "Ror2", "Lor", "Rand", "Lfuse", "Rfuse", "Lplus", "Rplus"):
        c = classify_rule(mc[name])
        table[name] = c.semi_analytic and c.focused and c.ppf and c.mpf
    table["cut rejected"] = not classify_rule(mc["cut"]).semi_analytic
    table["KC rejected"] = not classify_rule(parse_rule(KC)).semi_analytic
    table["Dyckhoff context-sharing"] = classify_rule(parse_rule(DYCKHOFF, discipline="single")).context_sharing
    em = classify_axiom(parse_mseq("(mseq (ant) (suc ?phi (not ?phi)))"))
    table["=>phi,not phi focused, not strongly"] = em.focused and not em.strongly_focused
    rimp = classify_rule(sc["Rimp"])
    table["single R-> right semi-analytic, not focused"] = rimp.right_semi_analytic and not rimp.focused
    top = classify_axiom(parse_mseq("(mseq (ant $G (not top)) (suc $D))"))
    table["G,not top=>D ctx-left strongly focused"] = top.kind == "ctx-left" and top.strongly_focused
    ident = classify_axiom(parse_mseq("(mseq (ant ?phi) (suc ?phi))"))
    table["identity strongly focused"] = ident.kind == "identity" and ident.strongly_focused
    bad = [k for k, v in table.items() if not v]
    detail(request, f"{len(table) - len(bad)}/{len(table)} fixtures match")
    assert not bad, bad

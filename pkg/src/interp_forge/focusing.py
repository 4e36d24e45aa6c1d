"""Translation of LK derivations into the focused classical calculus.

An LK proof of Γ, Γ′ ⇒ Δ, Δ′ becomes a FocusedCPC proof of Γ, ¬Δ ⇒ ¬Γ′, Δ′:
formulas tagged "moved" cross the arrow under a negation, the rest stay put.
"""
from __future__ import annotations

import sys
from typing import Dict, Tuple

from . import errors
from .builders import Builder
from .calculi import focused_cpc
from .kernel import Derivation, check, lk
from .schema import subst_formula
from .syntax import EMPTY, Formula, Multiset, Sequent


def _neg(f: Formula) -> Formula:
    return Formula("not", (f,))


def _negs(ms: Multiset) -> Multiset:
    return Multiset(_neg(f) for f in ms)


def translated_sequent(s: Sequent, moved_ant: Multiset = EMPTY, moved_suc: Multiset = EMPTY) -> Sequent:
    """Γ, ¬Δ ⇒ ¬Γ′, Δ′ for moved antecedent part Γ′ and moved succedent part Δ."""
    if not moved_ant.issubset(s.ant) or not moved_suc.issubset(s.suc):
        raise errors.SplitMismatch("moved formulas must come from the sequent")
    return Sequent((s.ant - moved_ant) + _negs(moved_suc), (s.suc - moved_suc) + _negs(moved_ant))


class _Translator:
    def __init__(self):
        self.h = focused_cpc()
        self.b = Builder(self.h)
        self.lk = lk()
        self.memo: Dict[Tuple[int, str, str], Derivation] = {}

    def go(self, node: Derivation, am: Multiset, sm: Multiset) -> Derivation:
        key = (id(node), am.key, sm.key)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._step(node, am, sm)
            self.memo[key] = hit
        return hit

    def _step(self, node: Derivation, am: Multiset, sm: Multiset) -> Derivation:
        b = self.b
        name = node.rule
        if name == "cut":
            raise errors.UnsupportedRule("cut has no focused counterpart; supply a cut-free LK proof")
        rule = self.lk.get(name)
        sub = node.subst
        fm = sub.formulas
        if name == "id":
            f = fm["phi"]
            a_mv, s_mv = f in am, f in sm
            if not a_mv and not s_mv:
                return b.ident(f)
            if a_mv and s_mv:
                return b.ident(_neg(f))
            if s_mv:
                return b.axiom("neg-l", phi=f)
            return b.axiom("neg-r", phi=f)

        concl = rule.conclusion
        if concl.ant_formulas:
            side, pat = "ant", concl.ant_formulas[0]
        else:
            side, pat = "suc", concl.suc_formulas[0]
        f = subst_formula(pat, fm)
        moved = f in (am if side == "ant" else sm)
        gm = am.remove(f) if side == "ant" and moved else am
        dm = sm.remove(f) if side == "suc" and moved else sm
        g = sub.contexts.get("G", EMPTY)
        d = sub.contexts.get("D", EMPTY)
        cant = (g - gm) + _negs(dm)
        csuc = (d - dm) + _negs(gm)
        ctx = {"G": cant, "D": csuc}
        phi, psi = fm.get("phi"), fm.get("psi")

        def kid(i, ant_moved=(), suc_moved=()):
            return self.go(node.children[i], gm.add(*ant_moved), dm.add(*suc_moved))

        if name == "top-r":
            return b.axiom("neg-top" if moved else "top-r", ctx)
        if name == "bot-l":
            return b.axiom("neg-bot" if moved else "bot-l", ctx)
        if name == "Land":
            if not moved:
                p = kid(0)
                p = b.apply("Land1", [p], phi=phi, psi=psi)
                p = b.apply("Land2", [p], phi=phi, psi=psi)
                return b.apply("Lc", [p], phi=f)
            p = kid(0, (phi, psi))
            p = b.apply("Rnot-and1", [p], phi=phi, psi=psi)
            p = b.apply("Rnot-and2", [p], phi=phi, psi=psi)
            return b.apply("Rc", [p], phi=_neg(f))
        if name == "Ror":
            if not moved:
                p = kid(0)
                p = b.apply("Ror1", [p], phi=phi, psi=psi)
                p = b.apply("Ror2", [p], phi=phi, psi=psi)
                return b.apply("Rc", [p], phi=f)
            p = kid(0, (), (phi, psi))
            p = b.apply("Lnot-or1", [p], phi=phi, psi=psi)
            p = b.apply("Lnot-or2", [p], phi=phi, psi=psi)
            return b.apply("Lc", [p], phi=_neg(f))
        if name == "Rand":
            if not moved:
                return b.apply("Rand", [kid(0), kid(1)], ctx, phi=phi, psi=psi)
            return b.apply("Lnot-and", [kid(0, (), (phi,)), kid(1, (), (psi,))], ctx, phi=phi, psi=psi)
        if name == "Lor":
            if not moved:
                return b.apply("Lor", [kid(0), kid(1)], ctx, phi=phi, psi=psi)
            return b.apply("Rnot-or", [kid(0, (phi,)), kid(1, (psi,))], ctx, phi=phi, psi=psi)
        if name == "Limp":
            if not moved:
                p = b.apply("Limp-f", [kid(0, (), (phi,)), kid(1)], phi=phi, psi=psi)
            else:
                p = b.apply("Rnot-imp", [kid(0), kid(1, (psi,))], phi=phi, psi=psi)
            p = b.contract_left(p, cant)
            return b.contract_right(p, csuc)
        if name == "Rimp":
            if not moved:
                return b.apply("Rimp-f", [kid(0, (phi,))], phi=phi, psi=psi)
            return b.apply("Lnot-imp", [kid(0, (), (psi,))], phi=phi, psi=psi)
        if name == "Lnot":
            if not moved:
                return kid(0, (), (phi,))
            return b.apply("Rnot-not", [kid(0)], phi=phi)
        if name == "Rnot":
            if not moved:
                return kid(0, (phi,))
            return b.apply("Lnot-not", [kid(0)], phi=phi)
        if name in ("Lw", "Rw"):
            if not moved:
                return b.apply(name, [kid(0)], phi=f)
            return b.apply("Rw" if name == "Lw" else "Lw", [kid(0)], phi=_neg(f))
        if name == "Lc":
            if not moved:
                return b.apply("Lc", [kid(0)], phi=f)
            return b.apply("Rc", [kid(0, (f, f))], phi=_neg(f))
        if name == "Rc":
            if not moved:
                return b.apply("Rc", [kid(0)], phi=f)
            return b.apply("Lc", [kid(0, (), (f, f))], phi=_neg(f))
        raise errors.UnsupportedRule(f"no translation for LK rule {name}")


def lk_to_focused(proof: Derivation, moved_ant: Multiset = EMPTY, moved_suc: Multiset = EMPTY,
                  verify: bool = True) -> Derivation:
    """Translate a cut-free LK derivation; the result proves ``translated_sequent``."""
    check(lk(), proof)
    target = translated_sequent(proof.sequent, moved_ant, moved_suc)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 50000))
    try:
        out = _Translator().go(proof, moved_ant, moved_suc)
    finally:
        sys.setrecursionlimit(old)
    if out.sequent != target:
        raise AssertionError(f"translation produced {out.sequent}, expected {target}")
    if verify:
        check(focused_cpc(), out)
    return out


def focused_from_split(proof: Derivation, split, verify: bool = True) -> Derivation:
    """Read Λ as the moved antecedent part Γ′ and Θ as the moved succedent part Δ."""
    return lk_to_focused(proof, split.lam, split.theta, verify)

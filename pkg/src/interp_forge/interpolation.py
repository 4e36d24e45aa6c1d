"""Interpolant extraction with witness derivations.

Three recursions over a checked derivation:

* ``interpolate_sc``: Σ, Λ ⇒ Δ  gives  Σ ⇒ C  and  Λ, C ⇒ Δ;
* ``interpolate_mc``: Σ, Λ ⇒ Θ, Δ  gives  Σ ⇒ C, Θ  and  Λ, C ⇒ Δ;
* ``interpolate_monotone``: Σ ⇒ Λ_1, ..., Λ_k  gives  Σ ⇒ C_1, ..., C_k  and  C_j ⇒ Λ_j.

Inside the recursions "low" names the Σ/Θ side of a split and "high" the Λ/Δ side.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import errors
from .builders import Builder
from .calculi import Calculus
from .kernel import Derivation, check, proof_size
from .schema import (
    CtxVar, RuleSchema, Substitution, classify_axiom, classify_rule, instantiate_mseq, is_monotone,
    subst_formula,
)
from .syntax import BOT, EMPTY, ONE, TOP, ZERO, Formula, Multiset, Sequent, big

MODAL_KINDS = ("K", "D", "RS4", "4", "4D")


# ---------------------------------------------------------------- splits

@dataclass(frozen=True)
class Split:
    sequent: Sequent
    sigma: Multiset
    lam: Multiset
    theta: Multiset = EMPTY
    delta: Multiset = EMPTY
    parts: Optional[Tuple[Multiset, ...]] = None

    @classmethod
    def single(cls, sequent: Sequent, sigma: Multiset) -> "Split":
        if not sigma.issubset(sequent.ant):
            raise errors.SplitMismatch("Σ is not part of the antecedent")
        return cls(sequent, sigma, sequent.ant - sigma, EMPTY, sequent.suc)

    @classmethod
    def strong(cls, sequent: Sequent, sigma: Multiset, theta: Multiset) -> "Split":
        if not sigma.issubset(sequent.ant) or not theta.issubset(sequent.suc):
            raise errors.SplitMismatch("split does not match the sequent")
        return cls(sequent, sigma, sequent.ant - sigma, theta, sequent.suc - theta)

    @classmethod
    def monotone(cls, sequent: Sequent, parts: Sequence[Multiset]) -> "Split":
        total = EMPTY
        for p in parts:
            total = total + p
        if total != sequent.suc or not parts:
            raise errors.SplitMismatch("parts must partition the succedent")
        return cls(sequent, sequent.ant, EMPTY, EMPTY, EMPTY, tuple(parts))

    def validate(self) -> None:
        if self.parts is not None:
            total = EMPTY
            for p in self.parts:
                total = total + p
            if total != self.sequent.suc or self.sigma != self.sequent.ant:
                raise errors.SplitMismatch("parts must partition the succedent")
            return
        if self.sigma + self.lam != self.sequent.ant or self.theta + self.delta != self.sequent.suc:
            raise errors.SplitMismatch("split does not cover the sequent exactly")


@dataclass(frozen=True)
class InterpolationResult:
    mode: str
    interpolants: Tuple[Formula, ...]
    left: Derivation
    rights: Tuple[Derivation, ...]
    split: Split
    proof_size: int

    @property
    def interpolant(self) -> Formula:
        return self.interpolants[0]

    @property
    def right(self) -> Derivation:
        return self.rights[0]


@dataclass
class _R:
    c: Formula
    left: Derivation
    right: Derivation


# ---------------------------------------------------------------- shared helpers

def _split_conclusion(rule: RuleSchema, sigma: Substitution, sp: Split):
    """Assign the conclusion's principal formula and contexts to low/high."""
    pools = {"ant": [sp.sigma, sp.lam], "suc": [sp.theta, sp.delta]}
    principal = None
    concl = rule.conclusion
    for side, items in (("ant", concl.ant), ("suc", concl.suc)):
        for it in items:
            if isinstance(it, Formula):
                f = subst_formula(it, sigma.formulas)
                low, high = pools[side]
                if f in high:
                    pools[side][1] = high.remove(f)
                    principal = (side, "high", f)
                elif f in low:
                    pools[side][0] = low.remove(f)
                    principal = (side, "low", f)
                else:
                    raise errors.SplitMismatch(f"principal formula {f} is not in the split")
    cs: Dict[str, Tuple[Multiset, Multiset]] = {}
    for side, items in (("ant", concl.ant), ("suc", concl.suc)):
        for it in items:
            if isinstance(it, CtxVar):
                m = it.apply(sigma.contexts[it.name])
                low, high = pools[side]
                lo = m & low
                hi = m - lo
                if not hi.issubset(high):
                    raise errors.SplitMismatch("split does not match the node's contexts")
                pools[side] = [low - lo, high - hi]
                if it.wrap:
                    lo = Multiset(f.args[0] for f in lo)
                    hi = Multiset(f.args[0] for f in hi)
                cs[it.name] = (lo, hi)
    if any(pools["ant"]) or any(pools["suc"]):
        raise errors.SplitMismatch("split does not match the node's sequent")
    return principal, cs


def _premise_split(rule: RuleSchema, i: int, sigma: Substitution, cs, ant_to: str, suc_to: str,
                   swap_ant_ctx: bool = False) -> Split:
    p = rule.premises[i]
    out = {"ant": [[], []], "suc": [[], []]}
    for side, items, to in (("ant", p.ant, ant_to), ("suc", p.suc, suc_to)):
        for it in items:
            if isinstance(it, CtxVar):
                lo, hi = cs[it.name]
                lo, hi = it.apply(lo), it.apply(hi)
                if side == "ant" and swap_ant_ctx:
                    lo, hi = hi, lo
                out[side][0].extend(lo.items)
                out[side][1].extend(hi.items)
            else:
                f = subst_formula(it, sigma.formulas)
                out[side][0 if to == "low" else 1].append(f)
    seq = instantiate_mseq(p, sigma)
    return Split(seq, Multiset(out["ant"][0]), Multiset(out["ant"][1]),
                 Multiset(out["suc"][0]), Multiset(out["suc"][1]))


def _groups(rule: RuleSchema) -> Dict[str, List[int]]:
    g: Dict[str, List[int]] = {}
    for i, p in enumerate(rule.premises):
        g.setdefault(p.ant_ctx[0].name, []).append(i)
    return g


def _suc_ctx(rule: RuleSchema, i: int) -> Optional[str]:
    sc = rule.premises[i].suc_ctx
    return sc[0].name if sc else None


class _Base:
    def __init__(self, h: Calculus):
        self.h = h
        self.b = Builder(h)
        self._modal_cache: Dict[Tuple[str, str], str] = {}

    def modal_rule(self, kind: str, wrap: str) -> str:
        key = (kind, wrap)
        if key not in self._modal_cache:
            for r in self.h.rules + self.h.admissible:
                c = classify_rule(r)
                if c.modal == kind and c.modality == wrap:
                    self._modal_cache[key] = r.name
                    break
            else:
                raise errors.BaseTooWeak(f"{self.h.name} has no {kind} rule for {wrap}")
        return self._modal_cache[key]

    def rule_of(self, node: Derivation) -> RuleSchema:
        if node.is_import:
            raise errors.UnsupportedRule("imported sequents carry no derivation to interpolate")
        try:
            return self.h.get(node.rule)
        except KeyError:
            raise errors.UnsupportedRule(f"unknown rule {node.rule}") from None

    def reinstance(self, rule: RuleSchema, node: Derivation, children, ctx) -> Derivation:
        return self.b.apply(rule.name, children, ctx, **node.subst.formulas)


# ---------------------------------------------------------------- Maehara recursion

class _Maehara(_Base):
    def __init__(self, h: Calculus, mode: str):
        super().__init__(h)
        self.mode = mode

    def run(self, node: Derivation, sp: Split) -> _R:
        rule = self.rule_of(node)
        if rule.is_axiom:
            return self.axiom(node, rule, sp)
        c = classify_rule(rule)
        if c.modal in MODAL_KINDS:
            return self.modal(node, rule, c, sp)
        principal, cs = _split_conclusion(rule, node.subst, sp)
        if principal is None:
            raise errors.UnsupportedRule(f"{rule.name} has no principal formula")
        side, where, _ = principal
        if self.mode == "sc":
            ok = c.right_semi_analytic if side == "suc" else (c.left_semi_analytic or c.context_sharing)
            if not ok:
                raise errors.UnsupportedRule(f"{rule.name} is not semi-analytic")
            if where == "high":
                return self.high(node, rule, cs)
            return self.sc_low(node, rule, cs)
        if not (c.mc_left_semi_analytic or c.mc_right_semi_analytic):
            raise errors.UnsupportedRule(f"{rule.name} is not multi-conclusion semi-analytic")
        if where == "high":
            return self.high(node, rule, cs)
        return self.mc_low(node, rule, cs)

    # principal formula on the Λ/Δ side: C = ⊛_i ⋀_r C_ir
    def high(self, node, rule, cs) -> _R:
        b = self.b
        groups = _groups(rule)
        rec = {i: self.run(node.children[i], _premise_split(rule, i, node.subst, cs, "high", "high"))
               for i in range(len(rule.premises))}
        names = list(groups)
        conj = {g: [rec[i].c for i in groups[g]] for g in names}
        a = [big("and", conj[g]) for g in names]
        c = big("fuse", a)
        left = b.r_fuse([b.r_and([rec[i].left for i in groups[g]], conj[g]) for g in names], a)
        ctx = {name: hi for name, (lo, hi) in cs.items()}
        for g, ag in zip(names, a):
            ctx[g] = cs[g][1].add(ag)
        kids = [None] * len(rule.premises)
        for g in names:
            for k, i in enumerate(groups[g]):
                kids[i] = b.l_and(rec[i].right, k, conj[g])
        right = b.l_fuse(self.reinstance(rule, node, kids, ctx), a)
        return _R(c, left, right)

    # single-conclusion left rule with the principal formula in Σ
    def sc_low(self, node, rule, cs) -> _R:
        b = self.b
        groups = _groups(rule)
        names = list(groups)
        gamma_prem = {g: [i for i in groups[g] if _suc_ctx(rule, i) is not None] for g in names}
        pi_prem = {g: [i for i in groups[g] if _suc_ctx(rule, i) is None] for g in names}
        first = None
        for g in names:
            if gamma_prem[g] and cs[_suc_ctx(rule, gamma_prem[g][0])][1]:
                first = g
                break
        if first is None:
            first = next((g for g in names if gamma_prem[g]), None)
        rec = {}
        for i in range(len(rule.premises)):
            g = rule.premises[i].ant_ctx[0].name
            if g == first and i in gamma_prem[g]:
                sp = _premise_split(rule, i, node.subst, cs, "low", "high")
            else:
                sp = _premise_split(rule, i, node.subst, cs, "high", "high", swap_ant_ctx=True)
            rec[i] = self.run(node.children[i], sp)
        others = [g for g in names if g != first]
        conj = {g: [rec[i].c for i in groups[g]] for g in others}
        a = {g: big("and", conj[g]) for g in others}
        e_list = [rec[i].c for i in pi_prem[first]] if first is not None else []
        e = big("and", e_list) if e_list else None
        d_list = [rec[i].c for i in gamma_prem[first]] if first is not None else []
        d = big("or", d_list) if first is not None else ZERO
        lst = [a[g] for g in others] + ([e] if e is not None else [])
        c = Formula("imp", (big("fuse", lst), d)) if lst else d

        # left witness: Σ ⇒ C
        ctx = {name: lo for name, (lo, hi) in cs.items()}
        for g in others:
            ctx[g] = cs[g][0].add(a[g])
        if e is not None:
            ctx[first] = cs[first][0].add(e)
        for i in range(len(rule.premises)):
            dn = _suc_ctx(rule, i)
            if dn is not None:
                ctx[dn] = Multiset([d]) if (first is not None and i in gamma_prem[first]) else EMPTY
        kids = [None] * len(rule.premises)
        for g in names:
            if g == first:
                for k, i in enumerate(gamma_prem[g]):
                    p = b.r_or(rec[i].left, k, d_list)
                    kids[i] = b.weaken_left(p, Multiset([e])) if e is not None else p
                for k, i in enumerate(pi_prem[g]):
                    kids[i] = b.l_and(rec[i].right, k, e_list)
            else:
                for k, i in enumerate(groups[g]):
                    kids[i] = b.l_and(rec[i].right, k, conj[g])
        inst = self.reinstance(rule, node, kids, ctx)
        if first is None:
            inst = b.apply("R0", [inst])
        if lst:
            left = b.apply("Rimp", [b.l_fuse(inst, lst)], phi=big("fuse", lst), psi=d)
        else:
            left = inst

        # right witness: Λ, C ⇒ Δ
        if first is not None:
            dn = _suc_ctx(rule, gamma_prem[first][0])
            right_d = b.l_or([rec[i].right for i in gamma_prem[first]], d_list)
        else:
            right_d = b.zero_l()
        if not lst:
            return _R(c, left, right_d)
        parts = [b.r_and([rec[i].left for i in groups[g]], conj[g]) for g in others]
        if e is not None:
            parts.append(b.r_and([rec[i].left for i in pi_prem[first]], e_list))
        lp = b.r_fuse(parts, lst)
        if e is not None and cs[first][1]:
            extra = EMPTY
            for g in others:
                extra = extra + cs[g][1]
            right = b.apply("Limp-cs", [lp, b.weaken_left(right_d, extra)], phi=big("fuse", lst), psi=d)
        else:
            right = b.apply("Limp", [lp, right_d], phi=big("fuse", lst), psi=d)
        return _R(c, left, right)

    # multi-conclusion rule with the principal formula on the Σ/Θ side: C = ⊕_i ⋁_r C_ir
    def mc_low(self, node, rule, cs) -> _R:
        b = self.b
        groups = _groups(rule)
        names = list(groups)
        rec = {i: self.run(node.children[i], _premise_split(rule, i, node.subst, cs, "low", "low"))
               for i in range(len(rule.premises))}
        disj = {g: [rec[i].c for i in groups[g]] for g in names}
        bb = [big("or", disj[g]) for g in names]
        c = big("plus", bb)
        ctx = {name: lo for name, (lo, hi) in cs.items()}
        for g, bg in zip(names, bb):
            dn = _suc_ctx(rule, groups[g][0])
            ctx[dn] = cs[dn][0].add(bg)
        kids = [None] * len(rule.premises)
        for g in names:
            for k, i in enumerate(groups[g]):
                kids[i] = b.r_or(rec[i].left, k, disj[g])
        left = b.r_plus(self.reinstance(rule, node, kids, ctx), bb)
        right = b.l_plus([b.l_or([rec[i].right for i in groups[g]], disj[g]) for g in names], bb)
        return _R(c, left, right)

    # -------------------------------------------------------------- modal rules

    def modal(self, node, rule, c, sp) -> _R:
        b = self.b
        kind, wrap = c.modal, c.modality
        principal, cs = _split_conclusion(rule, node.subst, sp)
        gname = rule.conclusion.ant_ctx[0].name
        lo, hi = cs[gname]
        where = principal[1] if principal else "high"
        phi = node.subst.formulas.get("phi")
        if principal is not None:
            phi = principal[2].args[0]
        low_case = where == "low"
        sub = _premise_split(rule, 0, node.subst, cs, "low", "low" if low_case else "high")
        r = self.run(node.children[0], sub)
        d = r.c
        box = lambda f: Formula(wrap, (f,))  # noqa: E731
        if kind in ("D", "4D"):
            intro = self.modal_rule("K" if kind == "D" else "4", wrap)
            left = b.apply(intro, [r.left], {gname: lo}, phi=d)
            right_kid = r.right if kind == "D" else b.apply("Lw-box", [r.right], phi=d)
            right = b.apply(rule.name, [right_kid], {gname: hi.add(d)})
            return _R(box(d), left, right)
        if not low_case:
            left = b.apply(rule.name, [r.left], {gname: lo}, phi=d)
            if kind == "K":
                kid = r.right
            elif kind == "RS4":
                kid = b.apply(self.modal_rule("LS4", wrap), [r.right], phi=d)
            else:
                kid = b.apply("Lw-box", [r.right], phi=d)
            right = b.apply(rule.name, [kid], {gname: hi.add(d)}, phi=phi)
            return _R(box(d), left, right)
        # principal in Θ: C = ¬□¬D with ¬X read as X → 0
        nd = b.neg(d)
        a = b.apply("Limp", [r.left, b.zero_l()], phi=d, psi=ZERO)
        if kind == "RS4":
            a = b.apply(self.modal_rule("LS4", wrap), [a], phi=nd)
        elif kind == "4":
            a = b.apply("Lw-box", [a], phi=nd)
        a = b.apply(rule.name, [a], {gname: lo.add(nd)}, phi=phi)
        a = b.apply("R0", [a])
        left = b.apply("Rimp", [a], phi=box(nd), psi=ZERO)
        q = b.apply("R0", [r.right])
        q = b.apply("Rimp", [q], phi=d, psi=ZERO)
        q = b.apply(rule.name, [q], {gname: hi}, phi=nd)
        right = b.apply("Limp", [q, b.zero_l()], phi=box(nd), psi=ZERO)
        return _R(b.neg(box(nd)), left, right)

    # -------------------------------------------------------------- axioms

    def axiom(self, node, rule, sp) -> _R:
        b = self.b
        kind = classify_axiom(rule.conclusion).kind
        if kind is None:
            raise errors.NotAFocusedAxiom(f"{rule.name} is not a focused axiom")
        sigma = node.subst
        concl = rule.conclusion
        ant_f = [subst_formula(f, sigma.formulas) for f in concl.ant_formulas]
        suc_f = [subst_formula(f, sigma.formulas) for f in concl.suc_formulas]
        gname = concl.ant_ctx[0].name if concl.ant_ctx else None
        dname = concl.suc_ctx[0].name if concl.suc_ctx else None

        def inst(g=EMPTY, dd=EMPTY):
            ctx = {}
            if gname:
                ctx[gname] = g
            if dname:
                ctx[dname] = dd
            return self.reinstance(rule, node, [], ctx)

        if kind == "identity":
            f = ant_f[0]
            a_low = f in sp.sigma
            s_low = f in sp.theta
            if a_low and s_low:
                return _R(ZERO, b.apply("R0", [b.ident(f)]), b.zero_l())
            if a_low:
                return _R(f, b.ident(f), b.ident(f))
            if s_low:
                return self._negated_identity(f)
            return _R(ONE, b.one_r(), b.apply("L1", [b.ident(f)]))
        if kind == "cf-right":
            if not sp.theta:
                return _R(ONE, b.one_r(), b.apply("L1", [inst()]))
            dl = list(sp.delta.items)
            return _R(big("plus", dl), b.r_plus(inst(), dl), b.l_plus([b.ident(f) for f in dl], dl))
        if kind == "cf-left":
            bs = list(sp.sigma.items)
            if bs and not sp.lam:
                return _R(ZERO, b.apply("R0", [inst()]), b.zero_l())
            return _R(big("fuse", bs), b.r_fuse([b.ident(f) for f in bs], bs), b.l_fuse(inst(), bs))
        if kind == "ctx-left":
            phis = Multiset(ant_f)
            p_low = phis & sp.sigma
            p_high = phis - p_low
            g_low, g_high = sp.sigma - p_low, sp.lam - p_high
            if not p_low:
                return _R(TOP, b.top(sp.sigma, sp.theta), inst(g_high.add(TOP), sp.delta))
            if not p_high:
                return _R(BOT, inst(g_low, sp.theta.add(BOT)), b.bot(sp.lam, sp.delta))
            need = bool(g_low or sp.theta)
            items = list(p_low.items) + ([TOP] if need else [])
            proofs = [b.ident(f) for f in p_low] + ([b.top(g_low, sp.theta)] if need else [])
            right = b.l_fuse(inst(g_high.add(TOP) if need else g_high, sp.delta), items)
            return _R(big("fuse", items), b.r_fuse(proofs, items), right)
        # ctx-right
        phis = Multiset(suc_f)
        p_low = phis & sp.theta
        p_high = phis - p_low
        d_low, d_high = sp.theta - p_low, sp.delta - p_high
        if not p_low:
            return _R(TOP, b.top(sp.sigma, sp.theta), inst(sp.lam.add(TOP), d_high))
        if not p_high:
            return _R(BOT, inst(sp.sigma, d_low.add(BOT)), b.bot(sp.lam, sp.delta))
        need = bool(sp.lam or d_high)
        items = list(p_high.items) + ([BOT] if need else [])
        left = b.r_plus(inst(sp.sigma, d_low.add(BOT) if need else d_low), items)
        proofs = [b.ident(f) for f in p_high] + ([b.bot(sp.lam, d_high)] if need else [])
        return _R(big("plus", items), left, b.l_plus(proofs, items))

    def _negated_identity(self, f: Formula) -> _R:
        b = self.b
        h = self.h
        if h.can_use("Limp") and h.can_use("Rimp"):
            left = b.apply("Rimp", [b.apply("R0", [b.ident(f)])], phi=f, psi=ZERO)
            right = b.apply("Limp", [b.ident(f), b.zero_l()], phi=f, psi=ZERO)
            return _R(b.neg(f), left, right)
        if h.can_use("neg-l") and h.can_use("neg-r"):
            return _R(Formula("not", (f,)), b.axiom("neg-r", phi=f), b.axiom("neg-l", phi=f))
        raise errors.BaseTooWeak(f"{h.name} cannot express a negated interpolant (no implication or negation rules)")


# ---------------------------------------------------------------- monotone recursion

@dataclass
class _M:
    cs: List[Formula]
    left: Derivation
    rights: List[Derivation]


def _distribute(m: Multiset, pools: List[Multiset]) -> Tuple[List[Multiset], List[Multiset]]:
    out = []
    for j, pool in enumerate(pools):
        take = m & pool
        m = m - take
        pools[j] = pool - take
        out.append(take)
    if m:
        raise errors.SplitMismatch("parts do not match the node's succedent")
    return out, pools


class _Monotone(_Base):
    def __init__(self, h: Calculus, k: int):
        super().__init__(h)
        self.k = k

    def run(self, node: Derivation, parts: List[Multiset]) -> _M:
        rule = self.rule_of(node)
        if rule.is_axiom:
            return self.axiom(node, rule, parts)
        c = classify_rule(rule)
        if not (c.focused and c.mpf):
            raise errors.NotMPF(f"{rule.name} is not a focused MPF rule")
        if c.focused_left:
            return self.left_rule(node, rule, parts)
        return self.right_rule(node, rule, parts)

    def _suc_split(self, rule, node, parts, principal: Optional[Formula]):
        pools = list(parts)
        j0 = None
        if principal is not None:
            for j, p in enumerate(pools):
                if principal in p:
                    j0 = j
                    pools[j] = p.remove(principal)
                    break
            else:
                raise errors.SplitMismatch("principal formula is not in any part")
        split = {}
        for it in rule.conclusion.suc_ctx:
            split[it.name], pools = _distribute(node.subst.contexts[it.name], pools)
        if any(pools):
            raise errors.SplitMismatch("parts do not match the node's succedent")
        return j0, split

    def left_rule(self, node, rule, parts) -> _M:
        b = self.b
        k = self.k
        _, split = self._suc_split(rule, node, parts, None)
        groups = _groups(rule)
        names = list(groups)
        rec = {i: self.run(node.children[i], list(split[_suc_ctx(rule, i)])) for i in range(len(rule.premises))}
        disj = {(g, j): [rec[i].cs[j] for i in groups[g]] for g in names for j in range(k)}
        bb = {(g, j): big("or", disj[(g, j)]) for g in names for j in range(k)}
        kids = [None] * len(rule.premises)
        for g in names:
            for r, i in enumerate(groups[g]):
                p = rec[i].left
                for j in range(k):
                    p = b.r_or(p, r, disj[(g, j)])
                kids[i] = p
        ctx = {name: node.subst.contexts[name] for name in node.subst.contexts}
        for g in names:
            dn = _suc_ctx(rule, groups[g][0])
            ctx[dn] = Multiset([bb[(g, j)] for j in range(k)])
        left = self.reinstance(rule, node, kids, ctx)
        cs = []
        for j in range(k):
            lst = [bb[(g, j)] for g in names]
            left = b.r_plus(left, lst)
            cs.append(big("plus", lst))
        rights = []
        for j in range(k):
            rights.append(b.l_plus([b.l_or([rec[i].rights[j] for i in groups[g]], disj[(g, j)]) for g in names],
                                   [bb[(g, j)] for g in names]))
        return _M(cs, left, rights)

    def right_rule(self, node, rule, parts) -> _M:
        b = self.b
        k = self.k
        principal = subst_formula(rule.conclusion.suc_formulas[0], node.subst.formulas)
        j0, split = self._suc_split(rule, node, parts, principal)
        groups = _groups(rule)
        names = list(groups)
        rec = {}
        for i, prem in enumerate(rule.premises):
            ps = list(split[_suc_ctx(rule, i)])
            extra = Multiset(subst_formula(f, node.subst.formulas) for f in prem.suc_formulas)
            ps[j0] = ps[j0] + extra
            rec[i] = self.run(node.children[i], ps)
        conj = {g: [rec[i].cs[j0] for i in groups[g]] for g in names}
        a = [big("and", conj[g]) for g in names]
        disj = {(g, j): [rec[i].cs[j] for i in groups[g]] for g in names for j in range(k) if j != j0}
        bb = {key: big("or", v) for key, v in disj.items()}
        block_proofs = []
        for g in names:
            ps = []
            for r, i in enumerate(groups[g]):
                p = rec[i].left
                for j in range(k):
                    if j != j0:
                        p = b.r_or(p, r, disj[(g, j)])
                ps.append(p)
            block_proofs.append(b.r_and(ps, conj[g]))
        left = b.r_fuse(block_proofs, a)
        cs = [None] * k
        cs[j0] = big("fuse", a)
        for j in range(k):
            if j != j0:
                lst = [bb[(g, j)] for g in names]
                left = b.r_plus(left, lst)
                cs[j] = big("plus", lst)
        rights = [None] * k
        kids = [None] * len(rule.premises)
        for g in names:
            for r, i in enumerate(groups[g]):
                kids[i] = b.l_and(rec[i].rights[j0], r, conj[g])
        ctx = {}
        for g, ag in zip(names, a):
            ctx[g] = Multiset([ag])
        for i in range(len(rule.premises)):
            dn = _suc_ctx(rule, i)
            ctx[dn] = split[dn][j0]
        rights[j0] = b.l_fuse(self.reinstance(rule, node, kids, ctx), a)
        for j in range(k):
            if j != j0:
                rights[j] = b.l_plus([b.l_or([rec[i].rights[j] for i in groups[g]], disj[(g, j)]) for g in names],
                                     [bb[(g, j)] for g in names])
        return _M(cs, left, rights)

    def axiom(self, node, rule, parts) -> _M:
        b = self.b
        k = self.k
        cls = classify_axiom(rule.conclusion)
        if cls.kind is None:
            raise errors.NotAFocusedAxiom(f"{rule.name} is not a focused axiom")
        concl = rule.conclusion
        sigma = node.subst
        suc_f = [subst_formula(f, sigma.formulas) for f in concl.suc_formulas]
        gname = concl.ant_ctx[0].name if concl.ant_ctx else None
        dname = concl.suc_ctx[0].name if concl.suc_ctx else None

        def inst(dd):
            ctx = {}
            if gname:
                ctx[gname] = sigma.contexts[gname]
            if dname:
                ctx[dname] = dd
            return self.reinstance(rule, node, [], ctx)

        def zeros_around(proof, skip=None):
            for j in range(k):
                if j != skip:
                    proof = b.apply("R0", [proof])
            return proof

        if cls.kind == "identity":
            f = suc_f[0]
            j0 = next(j for j, p in enumerate(parts) if f in p)
            cs = [f if j == j0 else ZERO for j in range(k)]
            rights = [b.ident(f) if j == j0 else b.zero_l() for j in range(k)]
            return _M(cs, zeros_around(b.ident(f), j0), rights)
        if cls.kind == "cf-left":
            return _M([ZERO] * k, zeros_around(inst(EMPTY)), [b.zero_l() for _ in range(k)])
        if cls.kind == "ctx-left":
            left = inst(Multiset([BOT] * k))
            return _M([BOT] * k, left, [b.bot(EMPTY, parts[j]) for j in range(k)])
        if cls.kind == "cf-right":
            if not any(f.vars() for f in suc_f):
                left = inst(EMPTY)
                cs = []
                for j in range(k):
                    lst = list(parts[j].items)
                    left = b.r_plus(left, lst)
                    cs.append(big("plus", lst))
                rights = [b.l_plus([b.ident(f) for f in parts[j]], list(parts[j].items)) for j in range(k)]
                return _M(cs, left, rights)
            holders = [j for j, p in enumerate(parts) if p]
            if len(holders) == 1:
                j0 = holders[0]
                cs = [ONE if j == j0 else ZERO for j in range(k)]
                rights = [b.apply("L1", [inst(EMPTY)]) if j == j0 else b.zero_l() for j in range(k)]
                return _M(cs, zeros_around(b.one_r(), j0), rights)
            raise errors.NotStronglyFocusedAxiom(
                f"{rule.name} instance has variables and spans several parts")
        # ctx-right: C_j = ⊕(Λ_j ∩ φ̄) + n_j⊥
        if any(f.vars() for f in suc_f):
            raise errors.NotStronglyFocusedAxiom(f"{rule.name} instance carries variables")
        pool = Multiset(suc_f)
        fj, nj = [], []
        for j in range(k):
            take = parts[j] & pool
            pool = pool - take
            fj.append(take)
            nj.append(parts[j] - take)
        left = inst(Multiset([BOT] * sum(len(x) for x in nj)))
        cs, rights = [], []
        for j in range(k):
            items = list(fj[j].items) + [BOT] * len(nj[j])
            left = b.r_plus(left, items)
            cs.append(big("plus", items))
            proofs = [b.ident(f) for f in fj[j]] + [b.bot(EMPTY, Multiset([x])) for x in nj[j]]
            rights.append(b.l_plus(proofs, items))
        return _M(cs, left, rights)


# ---------------------------------------------------------------- public API

class _deep:
    def __enter__(self):
        self.old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(self.old, 50000))

    def __exit__(self, *exc):
        sys.setrecursionlimit(self.old)


def _prepare(h: Calculus, proof: Derivation, split: Split) -> None:
    split.validate()
    if proof.sequent != split.sequent:
        raise errors.SplitMismatch("the split is not over the proof's end sequent")
    check(h, proof)


def interpolate_axiom(h: Calculus, node: Derivation, split: Split) -> InterpolationResult:
    """Base case on its own: ``node`` must be an axiom instance."""
    rule = h.get(node.rule)
    if not rule.is_axiom:
        raise errors.NotAFocusedAxiom(f"{node.rule} is not an axiom")
    _prepare(h, node, split)
    if split.parts is not None:
        return interpolate_monotone(h, node, split)
    r = _Maehara(h, "sc" if h.single else "mc").axiom(node, rule, split)
    return InterpolationResult("sc" if h.single else "mc", (r.c,), r.left, (r.right,), split, proof_size(node))


def interpolate_sc(h: Calculus, proof: Derivation, split: Split) -> InterpolationResult:
    if not h.single:
        raise errors.UnsupportedRule(f"{h.name} is multi-conclusion; use the strong variant")
    if split.theta:
        raise errors.SplitMismatch("single-conclusion splits have an empty Θ")
    _prepare(h, proof, split)
    with _deep():
        r = _Maehara(h, "sc").run(proof, split)
    return InterpolationResult("sc", (r.c,), r.left, (r.right,), split, proof_size(proof))


def interpolate_mc(h: Calculus, proof: Derivation, split: Split) -> InterpolationResult:
    if h.single:
        raise errors.UnsupportedRule(f"{h.name} is single-conclusion")
    _prepare(h, proof, split)
    with _deep():
        r = _Maehara(h, "mc").run(proof, split)
    return InterpolationResult("mc", (r.c,), r.left, (r.right,), split, proof_size(proof))


def interpolate(h: Calculus, proof: Derivation, split: Split) -> InterpolationResult:
    if split.parts is not None:
        return interpolate_monotone(h, proof, split)
    return interpolate_sc(h, proof, split) if h.single else interpolate_mc(h, proof, split)


def interpolate_monotone(h: Calculus, proof: Derivation, split: Split) -> InterpolationResult:
    if split.parts is None:
        raise errors.SplitMismatch("monotone interpolation needs a partition of the succedent")
    _prepare(h, proof, split)
    k = len(split.parts)
    with _deep():
        r = _Monotone(h, k).run(proof, list(split.parts))
    return InterpolationResult("monotone", tuple(r.cs), r.left, tuple(r.rights), split, proof_size(proof))


# ---------------------------------------------------------------- verification

@dataclass(frozen=True)
class Report:
    left_ok: bool
    right_ok: bool
    variables_ok: bool
    size_ok: bool
    monotone_ok: Optional[bool] = None
    notes: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (self.left_ok and self.right_ok and self.variables_ok and self.size_ok
                and self.monotone_ok is not False)

    def lines(self) -> List[str]:
        out = [f"left-witness {_yn(self.left_ok)}", f"right-witness {_yn(self.right_ok)}",
               f"variables {_yn(self.variables_ok)}", f"size-bound {_yn(self.size_ok)}"]
        if self.monotone_ok is not None:
            out.append(f"monotone {_yn(self.monotone_ok)}")
        return out + list(self.notes)


def _yn(b: bool) -> str:
    return "ok" if b else "FAIL"


def _checks(h: Calculus, proof: Derivation, expect: Sequent, notes: List[str], label: str) -> bool:
    try:
        check(h, proof)
    except errors.CheckFailure as e:
        notes.append(f"{label}: {e}")
        return False
    if proof.sequent != expect:
        notes.append(f"{label}: proves {proof.sequent} instead of {expect}")
        return False
    return True


def verify_interpolation(h: Calculus, split: Split, result: InterpolationResult,
                         proof_size_value: Optional[int] = None) -> Report:
    """Re-check every clause of the interpolation contract independently."""
    notes: List[str] = []
    cs = result.interpolants
    bound = (proof_size_value if proof_size_value is not None else result.proof_size) ** 2
    size_ok = all(c.size() <= bound for c in cs)
    mono = None
    if split.parts is not None:
        left_ok = _checks(h, result.left, Sequent(split.sigma, Multiset(cs)), notes, "left")
        right_ok = len(result.rights) == len(split.parts) and all(
            _checks(h, r, Sequent(Multiset([c]), part), notes, f"right[{j}]")
            for j, (r, c, part) in enumerate(zip(result.rights, cs, split.parts)))
        vs = split.sigma.vars()
        variables_ok = all(c.vars() <= (vs & part.vars()) for c, part in zip(cs, split.parts))
        if all(is_monotone(f) for f in split.sigma):
            from .semantics import semantic_monotone

            mono = all(is_monotone(c) for c in cs)
            try:
                mono = mono and all(semantic_monotone(c) for c in cs)
            except errors.InterpForgeError as e:
                notes.append(f"semantic monotonicity not checked: {e}")
    else:
        c = cs[0]
        left_ok = _checks(h, result.left, Sequent(split.sigma, split.theta.add(c)), notes, "left")
        right_ok = len(result.rights) == 1 and _checks(h, result.rights[0], Sequent(split.lam.add(c), split.delta),
                                                       notes, "right")
        low = split.sigma.vars() | split.theta.vars()
        high = split.lam.vars() | split.delta.vars()
        variables_ok = c.vars() <= (low & high)
    if not variables_ok:
        notes.append("interpolant uses a non-shared variable")
    if not size_ok:
        notes.append("interpolant exceeds the quadratic size bound")
    return Report(left_ok, right_ok, variables_ok, size_ok, mono, tuple(notes))


# ---------------------------------------------------------------- split syntax

def parse_split(text: str, sequent: Sequent, mode: str = "sc", default_ant: str = "L",
                default_suc: str = "D") -> Split:
    """``ant:0=S,1=L;suc:0=T,1=D`` with indices into the canonical ordering.

    Unlisted occurrences take the defaults (L and D unless overridden).
    """
    tags = {"ant": {}, "suc": {}}
    for section in filter(None, (s.strip() for s in text.split(";"))):
        if ":" not in section:
            raise errors.InvalidInput(f"bad split section {section!r}")
        side, body = section.split(":", 1)
        side = side.strip()
        if side not in tags:
            raise errors.InvalidInput(f"split side must be ant or suc, got {side!r}")
        for entry in filter(None, (e.strip() for e in body.split(","))):
            if "=" not in entry:
                raise errors.InvalidInput(f"bad split entry {entry!r}")
            idx, tag = (x.strip() for x in entry.split("=", 1))
            try:
                tags[side][int(idx)] = tag
            except ValueError:
                raise errors.InvalidInput(f"bad split index {idx!r}") from None
    ant, suc = sequent.ant.items, sequent.suc.items
    for side, n in (("ant", len(ant)), ("suc", len(suc))):
        for i in tags[side]:
            if not 0 <= i < n:
                raise errors.InvalidInput(f"split index {i} out of range for the {side}")
    if mode == "monotone":
        parts: Dict[int, List[Formula]] = {}
        for i, f in enumerate(suc):
            t = tags["suc"].get(i, "1")
            try:
                j = int(t)
            except ValueError:
                raise errors.InvalidInput(f"part labels must be positive integers, got {t!r}") from None
            if j < 1:
                raise errors.InvalidInput("part labels start at 1")
            parts.setdefault(j, []).append(f)
        k = max(parts) if parts else 1
        return Split.monotone(sequent, [Multiset(parts.get(j, [])) for j in range(1, k + 1)])
    sigma = [f for i, f in enumerate(ant) if _tag(tags["ant"].get(i, default_ant), "S", "L")]
    theta = [f for i, f in enumerate(suc) if _tag(tags["suc"].get(i, default_suc), "T", "D")]
    if mode == "sc" and theta:
        raise errors.InvalidInput("single-conclusion splits cannot tag succedent formulas T")
    return Split.strong(sequent, Multiset(sigma), Multiset(theta))


def parse_parts(text: str, sequent: Sequent) -> Split:
    return parse_split(text, sequent, "monotone")


def _tag(t: str, low: str, high: str) -> bool:
    if t == low:
        return True
    if t == high:
        return False
    raise errors.InvalidInput(f"split tag must be {low} or {high}, got {t!r}")


def format_split(split: Split) -> str:
    """Inverse of ``parse_split`` for the canonical ordering."""
    seq = split.sequent
    if split.parts is not None:
        pool = [list(p.items) for p in split.parts]
        ents = []
        for i, f in enumerate(seq.suc.items):
            for j, p in enumerate(pool):
                if f in p:
                    p.remove(f)
                    ents.append(f"{i}={j + 1}")
                    break
        return "suc:" + ",".join(ents)
    sig, th = list(split.sigma.items), list(split.theta.items)
    a = []
    for i, f in enumerate(seq.ant.items):
        if f in sig:
            sig.remove(f)
            a.append(f"{i}=S")
        else:
            a.append(f"{i}=L")
    s = []
    for i, f in enumerate(seq.suc.items):
        if f in th:
            th.remove(f)
            s.append(f"{i}=T")
        else:
            s.append(f"{i}=D")
    return "ant:" + ",".join(a) + ";suc:" + ",".join(s)


# ---------------------------------------------------------------- result files

def _ms(m: Multiset) -> str:
    return "(" + " ".join(f.key for f in m) + ")"


def serialize_result(result: InterpolationResult) -> str:
    """The interpolants and split; witnesses are stored as separate proof files."""
    sp = result.split
    if sp.parts is not None:
        split = "(parts" + "".join(" " + _ms(p) for p in sp.parts) + ")"
    else:
        split = f"(split {_ms(sp.sigma)} {_ms(sp.lam)} {_ms(sp.theta)} {_ms(sp.delta)})"
    cs = " ".join(c.key for c in result.interpolants)
    return (f"(interpolation (mode {result.mode}) {sp.sequent.key} {split} "
            f"(proof-size {result.proof_size}) (interpolants {cs}))\n")


def parse_result(text: str, left: Derivation, rights: Sequence[Derivation], language=None) -> InterpolationResult:
    from .syntax import SList, formula_from_sexpr, multiset_from_sexpr, read_one, sequent_from_sexpr

    x = read_one(text)
    if not (isinstance(x, SList) and len(x) == 6 and x[0] == "interpolation"):
        raise errors.SyntaxError("expected (interpolation (mode M) SEQ SPLIT (proof-size N) (interpolants ...))",
                                 getattr(x, "pos", 0))
    mode = str(x[1][1])
    seq = sequent_from_sexpr(x[2], language)
    sp = x[3]
    if sp[0] == "parts":
        split = Split.monotone(seq, [multiset_from_sexpr(p, language) for p in sp[1:]])
    elif sp[0] == "split" and len(sp) == 5:
        s, l, t, d = (multiset_from_sexpr(p, language) for p in sp[1:])
        split = Split(seq, s, l, t, d)
        split.validate()
    else:
        raise errors.SyntaxError("expected (split Σ Λ Θ Δ) or (parts ...)", getattr(sp, "pos", 0))
    try:
        size = int(str(x[4][1]))
    except (ValueError, IndexError):
        raise errors.SyntaxError("expected (proof-size N)", getattr(x[4], "pos", 0)) from None
    cs = tuple(formula_from_sexpr(f, language) for f in x[5][1:])
    return InterpolationResult(mode, cs, left, tuple(rights), split, size)

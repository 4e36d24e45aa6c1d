"""Small proof-building helpers used to assemble witness derivations.

Every helper produces ordinary kernel nodes with explicit substitutions;
context bindings are recovered from the children by schema matching, which
is unambiguous once the formula variables are fixed.
"""
from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence

from . import errors
from .calculi import Calculus
from .kernel import Derivation
from .schema import RuleSchema, Substitution, instantiate, match_mseq
from .syntax import BOT, EMPTY, ONE, TOP, ZERO, Formula, Multiset, Sequent, big

# rules that are admissible extras rather than base connective rules
_ADMISSIBLE_KIND = {"Lw", "Rw", "Lc", "Rc", "Limp-cs", "Lw-box"}


class Builder:
    def __init__(self, h: Calculus):
        self.h = h

    # -------------------------------------------------------------- core

    def schema(self, name: str) -> RuleSchema:
        try:
            return self.h.get(name)
        except KeyError:
            if name in _ADMISSIBLE_KIND:
                raise errors.MissingAdmissible(f"{self.h.name} does not list {name} among its rules or "
                                               f"admissible extras") from None
            raise errors.BaseTooWeak(f"{self.h.name} has no rule {name}") from None

    def apply(self, name: str, children: Sequence[Derivation] = (), ctx: Optional[Mapping[str, Multiset]] = None,
              **formulas: Formula) -> Derivation:
        rule = self.schema(name)
        fm = {k: v for k, v in formulas.items() if k in rule.mvar_names()}
        cm = dict(ctx or {})
        sigma = Substitution(fm, cm)
        for prem, child in zip(rule.premises, children):
            found = next(match_mseq(prem, child.sequent, sigma), None)
            if found is None:
                raise AssertionError(f"{name}: child {child.sequent} does not fit premise {prem}")
            sigma = found
        names = rule.ctx_names()
        sigma = Substitution({k: v for k, v in sigma.formulas.items() if k in rule.mvar_names()},
                             {k: sigma.contexts.get(k, EMPTY) for k in names})
        prem, concl = instantiate(rule, sigma)
        for p, c in zip(prem, children):
            if p != c.sequent:
                raise AssertionError(f"{name}: premise {p} differs from child {c.sequent}")
        return Derivation(concl, name, sigma, tuple(children))

    def axiom(self, name: str, ctx: Optional[Mapping[str, Multiset]] = None, **formulas) -> Derivation:
        return self.apply(name, (), ctx or {}, **formulas)

    # -------------------------------------------------------------- leaves

    def ident(self, f: Formula) -> Derivation:
        return self.axiom("id", phi=f)

    def top(self, ant: Multiset, suc: Multiset = EMPTY) -> Derivation:
        return self.axiom("top-r", {"G": ant, "D": suc})

    def bot(self, ant: Multiset, suc: Multiset = EMPTY) -> Derivation:
        return self.axiom("bot-l", {"G": ant, "D": suc})

    def one_r(self) -> Derivation:
        return self.axiom("one-r")

    def zero_l(self) -> Derivation:
        return self.axiom("zero-l")

    # -------------------------------------------------------------- big operators

    def r_and(self, proofs: Sequence[Derivation], fs: Sequence[Formula],
              ant: Multiset = EMPTY, suc: Multiset = EMPTY) -> Derivation:
        """From Γ ⇒ A_i, Δ for each i derive Γ ⇒ ⋀A, Δ (top-r for an empty list)."""
        if not fs:
            return self.top(ant, suc)
        if len(fs) == 1:
            return proofs[0]
        rest = self.r_and(proofs[1:], fs[1:])
        return self.apply("Rand", [proofs[0], rest], phi=fs[0], psi=big("and", fs[1:]))

    def l_and(self, proof: Derivation, i: int, fs: Sequence[Formula]) -> Derivation:
        """From Γ, A_i ⇒ Δ derive Γ, ⋀A ⇒ Δ."""
        n = len(fs)
        cur = proof
        if n == 1:
            return cur
        if i < n - 1:
            cur = self.apply("Land1", [cur], phi=fs[i], psi=big("and", fs[i + 1:]))
        for j in range(i - 1, -1, -1):
            cur = self.apply("Land2", [cur], phi=fs[j], psi=big("and", fs[j + 1:]))
        return cur

    def r_or(self, proof: Derivation, i: int, fs: Sequence[Formula]) -> Derivation:
        """From Γ ⇒ A_i, Δ derive Γ ⇒ ⋁A, Δ."""
        n = len(fs)
        cur = proof
        if n == 1:
            return cur
        if i < n - 1:
            cur = self.apply("Ror1", [cur], phi=fs[i], psi=big("or", fs[i + 1:]))
        for j in range(i - 1, -1, -1):
            cur = self.apply("Ror2", [cur], phi=fs[j], psi=big("or", fs[j + 1:]))
        return cur

    def l_or(self, proofs: Sequence[Derivation], fs: Sequence[Formula],
             ant: Multiset = EMPTY, suc: Multiset = EMPTY) -> Derivation:
        """From Γ, A_i ⇒ Δ for each i derive Γ, ⋁A ⇒ Δ (bot-l for an empty list)."""
        if not fs:
            return self.bot(ant, suc)
        if len(fs) == 1:
            return proofs[0]
        rest = self.l_or(proofs[1:], fs[1:])
        return self.apply("Lor", [proofs[0], rest], phi=fs[0], psi=big("or", fs[1:]))

    def r_fuse(self, proofs: Sequence[Derivation], fs: Sequence[Formula]) -> Derivation:
        """From Γ_i ⇒ A_i, Δ_i derive Γ_1..Γ_n ⇒ ⊛A, Δ_1..Δ_n (one-r when empty)."""
        if not fs:
            return self.one_r()
        if len(fs) == 1:
            return proofs[0]
        rest = self.r_fuse(proofs[1:], fs[1:])
        return self.apply("Rfuse", [proofs[0], rest], phi=fs[0], psi=big("fuse", fs[1:]))

    def l_fuse(self, proof: Derivation, fs: Sequence[Formula]) -> Derivation:
        """From Γ, A_1..A_n ⇒ Δ derive Γ, ⊛A ⇒ Δ (L1 when empty)."""
        if not fs:
            return self.apply("L1", [proof])
        if len(fs) == 1:
            return proof
        inner = self.l_fuse(proof, fs[1:])
        return self.apply("Lfuse", [inner], phi=fs[0], psi=big("fuse", fs[1:]))

    def r_plus(self, proof: Derivation, fs: Sequence[Formula]) -> Derivation:
        """From Γ ⇒ A_1..A_n, Δ derive Γ ⇒ ⊕A, Δ (R0 when empty)."""
        if not fs:
            return self.apply("R0", [proof])
        if len(fs) == 1:
            return proof
        inner = self.r_plus(proof, fs[1:])
        return self.apply("Rplus", [inner], phi=fs[0], psi=big("plus", fs[1:]))

    def l_plus(self, proofs: Sequence[Derivation], fs: Sequence[Formula]) -> Derivation:
        """From Γ_i, A_i ⇒ Δ_i derive Γ_1..Γ_n, ⊕A ⇒ Δ_1..Δ_n (zero-l when empty)."""
        if not fs:
            return self.zero_l()
        if len(fs) == 1:
            return proofs[0]
        rest = self.l_plus(proofs[1:], fs[1:])
        return self.apply("Lplus", [proofs[0], rest], phi=fs[0], psi=big("plus", fs[1:]))

    # -------------------------------------------------------------- structural

    def weaken_left(self, proof: Derivation, ms: Multiset, rule: str = "Lw") -> Derivation:
        cur = proof
        for f in ms:
            cur = self.apply(rule, [cur], phi=f)
        return cur

    def contract_left(self, proof: Derivation, ms: Multiset) -> Derivation:
        cur = proof
        for f in ms:
            cur = self.apply("Lc", [cur], phi=f)
        return cur

    def contract_right(self, proof: Derivation, ms: Multiset) -> Derivation:
        cur = proof
        for f in ms:
            cur = self.apply("Rc", [cur], phi=f)
        return cur

    def neg(self, f: Formula) -> Formula:
        """Negation as implication into 0."""
        return Formula("imp", (f, ZERO))

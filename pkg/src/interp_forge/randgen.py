"""Random formulas, random derivations and proof mutations for property tests."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import errors
from .calculi import Calculus
from .kernel import Derivation, proof_size
from .schema import RuleSchema, Substitution, instantiate, instantiate_mseq, match_mseq
from .syntax import BOT, EMPTY, ONE, TOP, ZERO, Formula, Multiset, Sequent

_BINARY = ("and", "or", "fuse", "plus", "imp")
_UNARY = ("not", "box", "bang")
_CONST = (TOP, BOT, ONE, ZERO)


def random_formula(rng: random.Random, language, atoms: Sequence[str] = ("p", "q", "r"), depth: int = 2,
                   monotone: bool = False) -> Formula:
    names = language.names
    binary = [o for o in _BINARY if o in names and not (monotone and o == "imp")]
    unary = [o for o in _UNARY if o in names and not (monotone and o == "not")]
    consts = [c for c in _CONST if c.op in names]

    def go(d: int) -> Formula:
        roll = rng.random()
        if d <= 0 or roll < 0.3:
            if consts and rng.random() < 0.15:
                return rng.choice(consts)
            return Formula("atom", (), rng.choice(list(atoms)))
        if unary and roll < 0.42:
            return Formula(rng.choice(unary), (go(d - 1),))
        return Formula(rng.choice(binary), (go(d - 1), go(d - 1)))

    return go(depth)


@dataclass
class ProofGenerator:
    h: Calculus
    rng: random.Random
    atoms: Tuple[str, ...] = ("p", "q", "r")
    max_depth: int = 4
    max_size: int = 400
    monotone: bool = False
    rules: Optional[Sequence[str]] = None
    formula_depth: int = 1
    _rules: List[RuleSchema] = field(init=False)
    _axioms: List[RuleSchema] = field(init=False)

    def __post_init__(self):
        pool = set(self.rules) if self.rules is not None else None
        keep = lambda r: pool is None or r.name in pool  # noqa: E731
        self._axioms = [r for r in self.h.axioms if keep(r)]
        self._rules = [r for r in self.h.rules if keep(r)]
        if not self._axioms:
            raise errors.InvalidInput("the rule pool has no axioms")

    def formula(self) -> Formula:
        return random_formula(self.rng, self.h.language, self.atoms, self.formula_depth, self.monotone)

    def proof(self, attempts: int = 200) -> Derivation:
        for _ in range(attempts):
            d = self._gen(self.max_depth)
            if d is not None and proof_size(d) <= self.max_size:
                return d
        raise errors.NotFound("no random derivation within the limits")

    # ------------------------------------------------------------------

    def _bind_free(self, rule: RuleSchema, sigma: Substitution) -> Substitution:
        fm = dict(sigma.formulas)
        cm = dict(sigma.contexts)
        for n in sorted(rule.mvar_names()):
            if n not in fm:
                fm[n] = self.formula()
        for n in sorted(rule.ctx_names()):
            if n not in cm:
                cm[n] = EMPTY
        return Substitution(fm, cm)

    def _finish(self, rule: RuleSchema, sigma: Substitution, children) -> Optional[Derivation]:
        sigma = self._bind_free(rule, sigma)
        try:
            prem, concl = instantiate(rule, sigma)
        except errors.InterpForgeError:
            return None
        if any(not self.h.language.admits(f) for f in concl.ant.items + concl.suc.items):
            return None
        if any(p != c.sequent for p, c in zip(prem, children)):
            return None
        return Derivation(concl, rule.name, sigma, tuple(children))

    def _leaf(self) -> Optional[Derivation]:
        rule = self.rng.choice(self._axioms)
        cm = {}
        for n in sorted(rule.ctx_names()):
            k = self.rng.choice((0, 0, 1, 2))
            cm[n] = Multiset(self.formula() for _ in range(k))
        return self._finish(rule, Substitution({}, cm), [])

    def _gen(self, depth: int) -> Optional[Derivation]:
        if depth <= 0 or not self._rules or self.rng.random() < 0.25:
            return self._leaf()
        rule = self.rng.choice(self._rules)
        sigma = Substitution()
        children: List[Derivation] = []
        for prem in rule.premises:
            child, sigma = self._premise(prem, sigma, children, depth)
            if child is None:
                return None
            children.append(child)
        return self._finish(rule, sigma, children)

    def _premise(self, prem, sigma: Substitution, siblings, depth):
        names = prem.ctx_names()
        if names and any(n in sigma.contexts for n in names):
            return self._close_bound(prem, sigma, siblings)
        for _ in range(3):
            child = self._gen(depth - 1)
            if child is None:
                continue
            m = next(match_mseq(prem, child.sequent, sigma, self.rng), None)
            if m is not None:
                return child, m
        return None, sigma

    def _close_bound(self, prem, sigma: Substitution, siblings):
        """Close a premise whose contexts are already fixed by an earlier sibling."""
        cm = dict(sigma.contexts)
        for n in prem.ctx_names():
            cm.setdefault(n, EMPTY)
        free = sorted(prem.mvar_names() - set(sigma.formulas))
        pool = [f for s in siblings for f in s.sequent.ant.items + s.sequent.suc.items]
        cands = list(dict.fromkeys(pool + [f for f in _CONST if self.h.language.admits(f)] + [self.formula()]))
        self.rng.shuffle(cands)
        for combo in itertools.islice(itertools.product(cands, repeat=len(free)), 60):
            fm = dict(sigma.formulas)
            fm.update(zip(free, combo))
            s2 = Substitution(fm, cm)
            try:
                target = instantiate_mseq(prem, s2)
            except errors.InterpForgeError:
                continue
            if self.h.single and len(target.suc) > 1:
                continue
            for sib in siblings:
                if sib.sequent == target:
                    return sib, s2
            for ax in self._axioms:
                m = next(match_mseq(ax.conclusion, target), None)
                if m is not None:
                    leaf = self._finish(ax, m, [])
                    if leaf is not None and leaf.sequent == target:
                        return leaf, s2
        return None, sigma


def random_split(rng: random.Random, s: Sequent, strong: bool = False):
    from .interpolation import Split

    sigma = Multiset(f for f in s.ant if rng.random() < 0.5)
    if not strong:
        return Split.single(s, sigma)
    theta = Multiset(f for f in s.suc if rng.random() < 0.5)
    return Split.strong(s, sigma, theta)


def random_parts(rng: random.Random, s: Sequent, k: int):
    from .interpolation import Split

    buckets: List[List[Formula]] = [[] for _ in range(k)]
    for f in s.suc:
        buckets[rng.randrange(k)].append(f)
    return Split.monotone(s, [Multiset(b) for b in buckets])


def mutations(proof: Derivation):
    """Every single-binding change at every node; the sequents stay as they were."""
    for path, node in proof.nodes():
        if node.is_import:
            continue
        for name in sorted(node.subst.formulas):
            f = node.subst.formulas[name]
            sub = node.subst.with_formula(name, Formula("and", (f, f)))
            yield _replace(proof, path, Derivation(node.sequent, node.rule, sub, node.children))
        for name in sorted(node.subst.contexts):
            sub = node.subst.with_context(name, node.subst.contexts[name].add(Formula("atom", (), "mut")))
            yield _replace(proof, path, Derivation(node.sequent, node.rule, sub, node.children))


def mutate(proof: Derivation, rng: random.Random, h: Calculus) -> Derivation:
    """One random element of ``mutations``."""
    options = list(mutations(proof))
    if not options:
        raise errors.InvalidInput("nothing to mutate")
    return rng.choice(options)


def _replace(proof: Derivation, path, new: Derivation) -> Derivation:
    if not path:
        return new
    kids = list(proof.children)
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return Derivation(proof.sequent, proof.rule, proof.subst, tuple(kids))

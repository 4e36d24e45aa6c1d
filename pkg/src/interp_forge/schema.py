"""Rule schemas over meta-formulas and context variables.

A context variable may be wrapped in a unary connective (``(box $Gamma)``)
which stands for the multiset obtained by applying that connective to every
element.  Instantiation is always driven by an explicit substitution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import errors
from .syntax import (
    ARITY, EMPTY, Formula, Language, Multiset, Sequent, SList, Sym,
    formula_from_sexpr, read_one, read_sexprs,
)

POSITIVE = "positive-only"
NON_POSITIVE = "has-non-positive"
ABSENT = "absent"

CTX_WRAPPERS = ("box", "bang", "not")


@dataclass(frozen=True)
class CtxVar:
    name: str
    wrap: Optional[str] = None

    @property
    def key(self) -> str:
        return f"({self.wrap} ${self.name})" if self.wrap else f"${self.name}"

    def apply(self, ms: Multiset) -> Multiset:
        if self.wrap is None:
            return ms
        return Multiset(Formula(self.wrap, (f,)) for f in ms)


Item = Union[Formula, CtxVar]


def _ikey(it: Item) -> str:
    return it.key


@dataclass(frozen=True)
class MetaSequent:
    ant: Tuple[Item, ...]
    suc: Tuple[Item, ...]

    @classmethod
    def of(cls, ant: Sequence[Item] = (), suc: Sequence[Item] = ()) -> "MetaSequent":
        return cls(tuple(ant), tuple(suc))

    @property
    def ant_formulas(self) -> Tuple[Formula, ...]:
        return tuple(i for i in self.ant if isinstance(i, Formula))

    @property
    def suc_formulas(self) -> Tuple[Formula, ...]:
        return tuple(i for i in self.suc if isinstance(i, Formula))

    @property
    def ant_ctx(self) -> Tuple[CtxVar, ...]:
        return tuple(i for i in self.ant if isinstance(i, CtxVar))

    @property
    def suc_ctx(self) -> Tuple[CtxVar, ...]:
        return tuple(i for i in self.suc if isinstance(i, CtxVar))

    @property
    def formulas(self) -> Tuple[Formula, ...]:
        return self.ant_formulas + self.suc_formulas

    def ctx_names(self) -> List[str]:
        return [c.name for c in self.ant_ctx + self.suc_ctx]

    def mvar_names(self) -> set:
        out = set()
        for f in self.formulas:
            for g in f.subformulas():
                if g.op == "mvar":
                    out.add(g.name)
        return out

    @property
    def key(self) -> str:
        a = " ".join(_ikey(i) for i in self.ant)
        s = " ".join(_ikey(i) for i in self.suc)
        return f"(mseq (ant{(' ' + a) if a else ''}) (suc{(' ' + s) if s else ''}))"

    def __str__(self):
        def show(items):
            return ", ".join(str(i) if isinstance(i, Formula) else
                             (f"{i.wrap} {i.name}" if i.wrap else i.name) for i in items)
        return f"{show(self.ant)} ⇒ {show(self.suc)}".strip()


@dataclass(frozen=True)
class RuleSchema:
    name: str
    premises: Tuple[MetaSequent, ...]
    conclusion: MetaSequent
    discipline: str = "multi"

    @property
    def is_axiom(self) -> bool:
        return not self.premises

    def mvar_names(self) -> set:
        out = set(self.conclusion.mvar_names())
        for p in self.premises:
            out |= p.mvar_names()
        return out

    def ctx_names(self) -> set:
        out = set(self.conclusion.ctx_names())
        for p in self.premises:
            out |= set(p.ctx_names())
        return out

    @property
    def key(self) -> str:
        prem = " ".join(p.key for p in self.premises)
        disc = " (discipline single)" if self.discipline == "single" else ""
        return f"(rule {self.name} (premises{(' ' + prem) if prem else ''}) (conclusion {self.conclusion.key}){disc})"


@dataclass(frozen=True)
class Substitution:
    formulas: Mapping[str, Formula] = field(default_factory=dict)
    contexts: Mapping[str, Multiset] = field(default_factory=dict)

    def with_formula(self, name: str, f: Formula) -> "Substitution":
        d = dict(self.formulas)
        d[name] = f
        return Substitution(d, dict(self.contexts))

    def with_context(self, name: str, ms: Multiset) -> "Substitution":
        d = dict(self.contexts)
        d[name] = ms
        return Substitution(dict(self.formulas), d)

    @property
    def key(self) -> str:
        parts = [f"(?{k} {v.key})" for k, v in sorted(self.formulas.items())]
        parts += [f"(${k} {v.key})" for k, v in sorted(self.contexts.items())]
        return "(bind" + "".join(" " + p for p in parts) + ")"

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return dict(self.formulas) == dict(other.formulas) and dict(self.contexts) == dict(other.contexts)

    def __hash__(self):
        return hash(self.key)


# ---------------------------------------------------------------- instantiation

def subst_formula(f: Formula, fm: Mapping[str, Formula]) -> Formula:
    if f.op == "mvar":
        try:
            return fm[f.name]
        except KeyError:
            raise errors.MissingBinding(f"no binding for ?{f.name}") from None
    if not f.args:
        return f
    if not any(a.op == "mvar" or a.args for a in f.args):
        return f
    return Formula(f.op, tuple(subst_formula(a, fm) for a in f.args))


def expand_side(items: Sequence[Item], sigma: Substitution) -> List[Tuple[Item, Multiset]]:
    out = []
    for it in items:
        if isinstance(it, CtxVar):
            try:
                ms = sigma.contexts[it.name]
            except KeyError:
                raise errors.MissingBinding(f"no binding for ${it.name}") from None
            out.append((it, it.apply(ms)))
        else:
            out.append((it, Multiset((subst_formula(it, sigma.formulas),))))
    return out


def instantiate_mseq(ms: MetaSequent, sigma: Substitution) -> Sequent:
    ant = []
    for _, m in expand_side(ms.ant, sigma):
        ant.extend(m.items)
    suc = []
    for _, m in expand_side(ms.suc, sigma):
        suc.extend(m.items)
    return Sequent(Multiset(ant), Multiset(suc))


def instantiate(rule: RuleSchema, sigma: Substitution) -> Tuple[List[Sequent], Sequent]:
    """Premises and conclusion of ``rule`` under ``sigma``.

    Single-conclusion schemas reject instances with a succedent wider than one.
    """
    missing = rule.mvar_names() - set(sigma.formulas)
    if missing:
        raise errors.MissingBinding("no binding for " + ", ".join("?" + m for m in sorted(missing)))
    missing = rule.ctx_names() - set(sigma.contexts)
    if missing:
        raise errors.MissingBinding("no binding for " + ", ".join("$" + m for m in sorted(missing)))
    for name, f in sigma.formulas.items():
        for g in f.subformulas():
            if g.op not in ("atom", "mvar") and len(g.args) != ARITY.get(g.op, -1):
                raise errors.ArityMismatch(f"binding for ?{name} is malformed")
    prem = [instantiate_mseq(p, sigma) for p in rule.premises]
    concl = instantiate_mseq(rule.conclusion, sigma)
    if rule.discipline == "single":
        for s in prem + [concl]:
            if len(s.suc) > 1:
                raise errors.DisciplineViolation(
                    f"{rule.name}: single-conclusion instance with succedent of size {len(s.suc)}")
    return prem, concl


# ---------------------------------------------------------------- matching

def match_formula(pat: Formula, f: Formula, env: Dict[str, Formula]) -> Optional[Dict[str, Formula]]:
    if pat.op == "mvar":
        bound = env.get(pat.name)
        if bound is None:
            env = dict(env)
            env[pat.name] = f
            return env
        return env if bound == f else None
    if pat.op != f.op or len(pat.args) != len(f.args):
        return None
    if pat.op == "atom":
        return env if pat.name == f.name else None
    for a, b in zip(pat.args, f.args):
        env = match_formula(a, b, env)
        if env is None:
            return None
    return env


def _unwrap_all(ms: Multiset, wrap: str) -> Optional[Multiset]:
    out = []
    for f in ms:
        if f.op != wrap:
            return None
        out.append(f.args[0])
    return Multiset(out)


def _split_boxed_pair(rest: Multiset, wrap: str) -> Optional[Multiset]:
    """Solve rest = wrap(X) ⊎ X for X, if possible."""
    items = sorted(rest.items, key=lambda g: (g.size(), g.key), reverse=True)
    pool = list(items)
    x = []
    while pool:
        big_f = pool.pop(0)
        if big_f.op != wrap:
            return None
        inner = big_f.args[0]
        try:
            pool.remove(inner)
        except ValueError:
            return None
        x.append(inner)
    return Multiset(x)


def _match_side(items: Sequence[Item], ms: Multiset, env: Dict[str, Formula],
                ctx: Dict[str, Multiset], order=None) -> Iterator[Tuple[Dict, Dict]]:
    forms = [i for i in items if isinstance(i, Formula)]
    cvars = [i for i in items if isinstance(i, CtxVar)]
    elems = list(ms.items)

    def rec(k, remaining, env):
        if k == len(forms):
            yield from _assign_ctx(cvars, Multiset(remaining), env, ctx)
            return
        seen = set()
        idxs = list(range(len(remaining)))
        if order is not None:
            order.shuffle(idxs)
        for j in idxs:
            g = remaining[j]
            if g.key in seen:
                continue
            seen.add(g.key)
            e2 = match_formula(forms[k], g, env)
            if e2 is not None:
                yield from rec(k + 1, remaining[:j] + remaining[j + 1:], e2)

    yield from rec(0, elems, env)


def _assign_ctx(cvars, rest: Multiset, env, ctx):
    if not cvars:
        if not rest:
            yield env, ctx
        return
    names = [c.name for c in cvars]
    if len(cvars) == 2 and names[0] == names[1] and bool(cvars[0].wrap) != bool(cvars[1].wrap):
        wrap = cvars[0].wrap or cvars[1].wrap
        x = _split_boxed_pair(rest, wrap)
        if x is None:
            return
        if cvars[0].name in ctx and ctx[cvars[0].name] != x:
            return
        c2 = dict(ctx)
        c2[cvars[0].name] = x
        yield env, c2
        return
    # bound variables first, the first unbound one absorbs the remainder
    c2 = dict(ctx)
    unbound = []
    for c in cvars:
        if c.name in c2:
            need = c.apply(c2[c.name])
            if not need.issubset(rest):
                return
            rest = rest - need
        else:
            unbound.append(c)
    if not unbound:
        if not rest:
            yield env, c2
        return
    if len({c.name for c in unbound}) != len(unbound):
        return
    for c in unbound[1:]:
        c2[c.name] = EMPTY
    head = unbound[0]
    if head.wrap:
        inner = _unwrap_all(rest, head.wrap)
        if inner is None:
            return
        c2[head.name] = inner
    else:
        c2[head.name] = rest
    yield env, c2


def match_mseq(ms: MetaSequent, s: Sequent, sigma: Optional[Substitution] = None,
               rng=None) -> Iterator[Substitution]:
    """All substitutions (extending ``sigma``) that instantiate ``ms`` to ``s``.

    Used only by untrusted tooling (generators, witness assembly); the kernel
    never matches.  With several unbound contexts on one side the first one
    takes the whole remainder.
    """
    env = dict(sigma.formulas) if sigma else {}
    ctx = dict(sigma.contexts) if sigma else {}
    for env1, ctx1 in _match_side(ms.ant, s.ant, env, ctx, rng):
        for env2, ctx2 in _match_side(ms.suc, s.suc, env1, ctx1, rng):
            yield Substitution(env2, ctx2)


# ---------------------------------------------------------------- polarity

def polarity(f: Formula, x: str) -> str:
    """Polarity of variable ``x`` (atom name or ``?name``) in ``f``.

    Everything under a negation or in the antecedent of an implication is
    non-positive; a double negation does not restore positivity.
    """
    found = False
    stack = [(f, True)]
    while stack:
        g, pos = stack.pop()
        if x not in g.vars():
            continue
        if g.op in ("atom", "mvar"):
            found = True
            if not pos:
                return NON_POSITIVE
            continue
        if g.op == "not":
            stack.append((g.args[0], False))
        elif g.op == "imp":
            stack.append((g.args[0], False))
            stack.append((g.args[1], pos))
        else:
            for a in g.args:
                stack.append((a, pos))
    return POSITIVE if found else ABSENT


def is_positive_in(f: Formula, names) -> bool:
    return all(polarity(f, x) != NON_POSITIVE for x in names)


def is_monotone(f: Formula) -> bool:
    return is_positive_in(f, f.vars())


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class Block:
    """Premises sharing one antecedent context (and, if any, one succedent context)."""

    ant: str
    suc: Optional[str]
    premises: Tuple[int, ...]
    pi_premises: Tuple[int, ...] = ()
    gamma_premises: Tuple[int, ...] = ()


@dataclass(frozen=True)
class RuleClassification:
    occurrence_preserving: bool = False
    left_semi_analytic: bool = False
    right_semi_analytic: bool = False
    context_sharing: bool = False
    mc_left_semi_analytic: bool = False
    mc_right_semi_analytic: bool = False
    modal: Optional[str] = None
    modality: Optional[str] = None
    focused_left: bool = False
    focused_right: bool = False
    ppf: bool = False
    mpf: bool = False
    principal_side: Optional[str] = None
    blocks: Tuple[Block, ...] = ()

    @property
    def focused(self) -> bool:
        return self.focused_left or self.focused_right

    @property
    def semi_analytic(self) -> bool:
        return (self.left_semi_analytic or self.right_semi_analytic or self.context_sharing
                or self.mc_left_semi_analytic
                or self.mc_right_semi_analytic or self.modal in ("K", "D", "RS4", "LS4"))

    def flags(self) -> Dict[str, object]:
        return {
            "occurrence-preserving": self.occurrence_preserving,
            "left-sa": self.left_semi_analytic,
            "right-sa": self.right_semi_analytic,
            "context-sharing": self.context_sharing,
            "mc-left-sa": self.mc_left_semi_analytic,
            "mc-right-sa": self.mc_right_semi_analytic,
            "modal": self.modal or "none",
            "focused-left": self.focused_left,
            "focused-right": self.focused_right,
            "PPF": self.ppf,
            "MPF": self.mpf,
        }


def check_occurrence_preserving(rule: RuleSchema) -> bool:
    principal = set()
    for f in rule.conclusion.formulas:
        principal |= f.vars()
    for p in rule.premises:
        for f in p.formulas:
            if not f.vars() <= principal:
                return False
    return True


def _modal_kind(rule: RuleSchema) -> Tuple[Optional[str], Optional[str]]:
    if len(rule.premises) != 1:
        return None, None
    p, c = rule.premises[0], rule.conclusion
    ca, cs = c.ant, c.suc
    pa, ps = p.ant, p.suc
    # LS4: Γ, φ ⇒ Δ  /  Γ, ◯φ ⇒ Δ
    if (len(ca) == 2 and len(pa) == 2 and len(cs) == 1 and ps == cs and isinstance(cs[0], CtxVar)
            and cs[0].wrap is None):
        cf, cc = c.ant_formulas, c.ant_ctx
        pf, pc = p.ant_formulas, p.ant_ctx
        if (len(cf) == 1 and len(cc) == 1 and cc == pc and cc[0].wrap is None and len(pf) == 1
                and cf[0].op in ("box", "bang") and cf[0].args[0] == pf[0]):
            return "LS4", cf[0].op
    if len(ca) != 1 or not isinstance(ca[0], CtxVar) or ca[0].wrap not in ("box", "bang"):
        return None, None
    g = ca[0]
    wrap = g.wrap
    plain = CtxVar(g.name)
    if len(cs) == 1:
        if not isinstance(cs[0], Formula) or cs[0].op != wrap:
            return None, None
        inner = cs[0].args[0]
        if len(ps) != 1 or ps[0] != inner:
            return None, None
        if pa == (plain,) and wrap == "box":
            return "K", wrap
        if pa == (g,):
            return "RS4", wrap
        if len(pa) == 2 and set(pa) == {g, plain} and wrap == "box":
            return "4", wrap
        return None, None
    if len(cs) == 0 and len(ps) == 0:
        if pa == (plain,) and wrap == "box":
            return "D", wrap
        if len(pa) == 2 and set(pa) == {g, plain} and wrap == "box":
            return "4D", wrap
    return None, None


def _plain(ctxs: Sequence[CtxVar]) -> bool:
    return all(c.wrap is None for c in ctxs)


def classify_rule(rule: RuleSchema) -> RuleClassification:
    """Match ``rule`` against the semi-analytic, focused and modal templates."""
    occ = check_occurrence_preserving(rule)
    modal, modality = _modal_kind(rule)
    if modal is not None and modal != "LS4":
        return RuleClassification(occurrence_preserving=occ, modal=modal, modality=modality,
                                  principal_side="R" if rule.conclusion.suc else "L")
    concl = rule.conclusion
    cf_ant, cf_suc = concl.ant_formulas, concl.suc_formulas
    base = RuleClassification(occurrence_preserving=occ, modal=modal, modality=modality)
    if len(cf_ant) + len(cf_suc) != 1 or not occ or not rule.premises:
        return base
    side = "L" if cf_ant else "R"
    phi = (cf_ant or cf_suc)[0]
    c_ant_ctx, c_suc_ctx = concl.ant_ctx, concl.suc_ctx
    if not (_plain(c_ant_ctx) and _plain(c_suc_ctx)):
        return base
    a_names = [c.name for c in c_ant_ctx]
    s_names = [c.name for c in c_suc_ctx]
    if len(set(a_names)) != len(a_names) or len(set(s_names)) != len(s_names) or set(a_names) & set(s_names):
        return base
    prem_ant, prem_suc = [], []
    for p in rule.premises:
        pa, ps = p.ant_ctx, p.suc_ctx
        if len(pa) != 1 or not _plain(pa) or not _plain(ps) or len(ps) > 1:
            return base
        if pa[0].name not in a_names:
            return base
        if ps and ps[0].name not in s_names:
            return base
        prem_ant.append(pa[0].name)
        prem_suc.append(ps[0].name if ps else None)
    if set(prem_ant) != set(a_names):
        return base
    if {s for s in prem_suc if s} != set(s_names):
        return base

    order = []
    for a in prem_ant:
        if a not in order:
            order.append(a)
    groups = {a: tuple(i for i, x in enumerate(prem_ant) if x == a) for a in order}

    def has_suc_formulas(i):
        return bool(rule.premises[i].suc_formulas)

    def has_ant_formulas(i):
        return bool(rule.premises[i].ant_formulas)

    flags = {}
    blocks_single: List[Block] = []
    blocks_multi: List[Block] = []

    # single-conclusion left / context-sharing
    if side == "L":
        ok_left, ok_cs, any_mixed = True, True, False
        deltas = []
        for a in order:
            idx = groups[a]
            pis = tuple(i for i in idx if prem_suc[i] is None)
            gams = tuple(i for i in idx if prem_suc[i] is not None)
            if any(has_suc_formulas(i) for i in gams):
                ok_left = ok_cs = False
                break
            ds = {prem_suc[i] for i in gams}
            if len(ds) > 1:
                ok_left = ok_cs = False
                break
            d = ds.pop() if ds else None
            if d:
                deltas.append(d)
            if pis and gams:
                ok_left = False
                any_mixed = True
            if not gams:
                ok_cs = False
            blocks_single.append(Block(a, d, idx, pis, gams))
        if len(set(deltas)) != len(deltas) or set(deltas) != set(s_names) or cf_suc:
            ok_left = ok_cs = False
        flags["left"] = ok_left
        flags["cs"] = ok_cs and any_mixed
    else:
        ok_right = not s_names and all(prem_suc[i] is None for i in range(len(rule.premises)))
        flags["right"] = ok_right
        if ok_right:
            blocks_single = [Block(a, None, groups[a], groups[a], ()) for a in order]

    # multi-conclusion forms
    ok_mc = all(s is not None for s in prem_suc)
    mdeltas = []
    if ok_mc:
        for a in order:
            ds = {prem_suc[i] for i in groups[a]}
            if len(ds) != 1:
                ok_mc = False
                break
            d = ds.pop()
            mdeltas.append(d)
            blocks_multi.append(Block(a, d, groups[a], (), groups[a]))
        if ok_mc and (len(set(mdeltas)) != len(mdeltas) or set(mdeltas) != set(s_names)):
            ok_mc = False
    mc_left = ok_mc and side == "L"
    mc_right = ok_mc and side == "R"
    n = range(len(rule.premises))
    foc_left = mc_left and not any(has_suc_formulas(i) for i in n)
    foc_right = mc_right and not any(has_ant_formulas(i) for i in n)

    ppf = False
    if foc_right:
        ppf = True
    elif foc_left:
        ppf = True
        for p in rule.premises:
            for psi in p.ant_formulas:
                for x in psi.vars():
                    pol_phi = polarity(phi, x)
                    if pol_phi == ABSENT or (pol_phi == POSITIVE and polarity(psi, x) != POSITIVE):
                        ppf = False
    blocks = tuple(blocks_multi) if ok_mc else tuple(blocks_single)
    return RuleClassification(
        occurrence_preserving=occ,
        left_semi_analytic=flags.get("left", False),
        right_semi_analytic=flags.get("right", False),
        context_sharing=flags.get("cs", False),
        mc_left_semi_analytic=mc_left,
        mc_right_semi_analytic=mc_right,
        modal=modal,
        modality=modality,
        focused_left=foc_left,
        focused_right=foc_right,
        ppf=ppf,
        mpf=ppf,
        principal_side=side,
        blocks=blocks,
    )


def single_blocks(rule: RuleSchema) -> Tuple[Block, ...]:
    """Block structure for the single-conclusion reading of a left/right rule."""
    c = classify_rule(rule)
    if c.mc_left_semi_analytic or c.mc_right_semi_analytic:
        # recompute the single reading: a premise with succedent context is a Γ-type premise
        out = []
        for b in c.blocks:
            out.append(Block(b.ant, b.suc, b.premises, (), b.premises))
        if c.right_semi_analytic:
            return tuple(Block(b.ant, None, b.premises, b.premises, ()) for b in out)
        return tuple(out)
    return c.blocks


@dataclass(frozen=True)
class AxiomClassification:
    kind: Optional[str]
    strongly_focused: bool

    @property
    def focused(self) -> bool:
        return self.kind is not None


def _pairwise_equal_vars(fs: Sequence[Formula]) -> bool:
    return len({f.vars() for f in fs}) <= 1


def classify_axiom(ms: MetaSequent) -> AxiomClassification:
    """Identify which focused-axiom form (if any) ``ms`` has."""
    af, sf = ms.ant_formulas, ms.suc_formulas
    ac, sc = ms.ant_ctx, ms.suc_ctx
    none = AxiomClassification(None, False)
    if not (_plain(ac) and _plain(sc)) or len(ac) > 1 or len(sc) > 1:
        return none
    if ac and sc and ac[0].name == sc[0].name:
        return none
    if not ac and not sc:
        if len(af) == 1 and len(sf) == 1 and af[0] == sf[0]:
            return AxiomClassification("identity", True)
        if not af and sf and _pairwise_equal_vars(sf):
            return AxiomClassification("cf-right", not any(f.vars() for f in sf))
        if af and not sf and _pairwise_equal_vars(af):
            return AxiomClassification("cf-left", True)
        return none
    if len(ac) == 1 and af and not sf and _pairwise_equal_vars(af):
        return AxiomClassification("ctx-left", True)
    if len(ac) == 1 and not af and sf and _pairwise_equal_vars(sf):
        return AxiomClassification("ctx-right", not any(f.vars() for f in sf))
    return none


# ---------------------------------------------------------------- text format

def _item_from_sexpr(x, language, pos_hint=0) -> Item:
    if isinstance(x, Sym) and x.startswith("$"):
        if len(x) < 2:
            raise errors.SyntaxError("empty context variable name", x.pos)
        return CtxVar(str(x)[1:])
    if (isinstance(x, SList) and len(x) == 2 and isinstance(x[0], Sym) and x[0] in CTX_WRAPPERS
            and isinstance(x[1], Sym) and x[1].startswith("$")):
        return CtxVar(str(x[1])[1:], str(x[0]))
    return formula_from_sexpr(x, language, meta=True)


def mseq_from_sexpr(x, language: Optional[Language] = None) -> MetaSequent:
    if not (isinstance(x, SList) and len(x) == 3 and x[0] == "mseq"):
        raise errors.SyntaxError("expected (mseq (ant ...) (suc ...))", getattr(x, "pos", 0))
    ant, suc = x[1], x[2]
    if not (isinstance(ant, SList) and ant and ant[0] == "ant"):
        raise errors.SyntaxError("expected (ant ...)", getattr(ant, "pos", 0))
    if not (isinstance(suc, SList) and suc and suc[0] == "suc"):
        raise errors.SyntaxError("expected (suc ...)", getattr(suc, "pos", 0))
    return MetaSequent(tuple(_item_from_sexpr(i, language) for i in ant[1:]),
                       tuple(_item_from_sexpr(i, language) for i in suc[1:]))


def rule_from_sexpr(x, language: Optional[Language] = None, discipline: str = "multi") -> RuleSchema:
    if not (isinstance(x, SList) and len(x) >= 4 and x[0] == "rule" and isinstance(x[1], Sym)):
        raise errors.SyntaxError("expected (rule NAME (premises ...) (conclusion ...))", getattr(x, "pos", 0))
    name = str(x[1])
    prem, concl = x[2], x[3]
    if not (isinstance(prem, SList) and prem and prem[0] == "premises"):
        raise errors.SyntaxError("expected (premises ...)", getattr(prem, "pos", 0))
    if not (isinstance(concl, SList) and len(concl) == 2 and concl[0] == "conclusion"):
        raise errors.SyntaxError("expected (conclusion MSEQ)", getattr(concl, "pos", 0))
    for extra in x[4:]:
        if isinstance(extra, SList) and len(extra) == 2 and extra[0] == "discipline" and extra[1] in ("single", "multi"):
            discipline = str(extra[1])
        else:
            raise errors.SyntaxError("unexpected clause in rule", getattr(extra, "pos", 0))
    return RuleSchema(name, tuple(mseq_from_sexpr(p, language) for p in prem[1:]),
                      mseq_from_sexpr(concl[1], language), discipline)


def parse_rule(text: str, language: Optional[Language] = None, discipline: str = "multi") -> RuleSchema:
    return rule_from_sexpr(read_one(text), language, discipline)


def parse_mseq(text: str, language: Optional[Language] = None) -> MetaSequent:
    return mseq_from_sexpr(read_one(text), language)


def parse_rules(text: str, language: Optional[Language] = None, discipline: str = "multi") -> List[RuleSchema]:
    return [rule_from_sexpr(x, language, discipline) for x in read_sexprs(text)]


def substitution_from_sexpr(x, language: Optional[Language] = None) -> Substitution:
    from .syntax import multiset_from_sexpr

    if not (isinstance(x, SList) and x and x[0] == "bind"):
        raise errors.SyntaxError("expected (bind ...)", getattr(x, "pos", 0))
    fm, cm = {}, {}
    for b in x[1:]:
        if not (isinstance(b, SList) and len(b) == 2 and isinstance(b[0], Sym)):
            raise errors.SyntaxError("malformed binding", getattr(b, "pos", 0))
        k = str(b[0])
        if k.startswith("?"):
            fm[k[1:]] = formula_from_sexpr(b[1], language)
        elif k.startswith("$"):
            cm[k[1:]] = multiset_from_sexpr(b[1], language)
        else:
            raise errors.SyntaxError(f"binding name must start with ? or $: {k}", b[0].pos)
    return Substitution(fm, cm)

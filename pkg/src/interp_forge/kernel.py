"""Derivations, the proof checker, size metrics and a classical prover."""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import errors
from .calculi import Calculus, builtin
from .schema import Substitution, instantiate, substitution_from_sexpr
from .syntax import EMPTY, Formula, Multiset, Sequent, SList, Sym, read_one, sequent_from_sexpr

IMPORT = "import"


@dataclass(frozen=True, eq=False)
class Derivation:
    sequent: Sequent
    rule: str
    subst: Substitution
    children: Tuple["Derivation", ...] = ()

    @property
    def is_import(self) -> bool:
        return self.rule == IMPORT

    def nodes(self):
        """Pre-order traversal with tree paths."""
        stack = [((), self)]
        while stack:
            path, d = stack.pop()
            yield path, d
            for i in range(len(d.children) - 1, -1, -1):
                stack.append((path + (i,), d.children[i]))

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return serialize_proof(self) == serialize_proof(other)

    def __hash__(self):
        return hash(self.sequent.key)


def imported(s: Sequent) -> Derivation:
    """A leaf standing for a sequent proved in the base calculus."""
    return Derivation(s, IMPORT, Substitution())


# ---------------------------------------------------------------- checking

def check(h: Calculus, proof: Derivation, allow_imports: bool = False) -> bool:
    """Return True or raise CheckFailure naming the first bad node."""
    lang = h.language
    for path, d in proof.nodes():
        for f in d.sequent.ant.items + d.sequent.suc.items:
            if not lang.admits(f):
                raise errors.CheckFailure(path, f"formula {f.key} is outside the language of {h.name}")
        if h.single and len(d.sequent.suc) > 1:
            raise errors.CheckFailure(path, "succedent wider than one in a single-conclusion calculus")
        if d.is_import:
            if not allow_imports:
                raise errors.CheckFailure(path, "imported sequent not permitted here")
            if d.children:
                raise errors.CheckFailure(path, "imported sequent with children")
            continue
        try:
            rule = h.get(d.rule)
        except KeyError:
            raise errors.CheckFailure(path, f"unknown rule {d.rule} in {h.name}") from None
        try:
            prem, concl = instantiate(rule, d.subst)
        except errors.InterpForgeError as e:
            raise errors.CheckFailure(path, f"{d.rule}: {e}") from None
        if concl != d.sequent:
            raise errors.CheckFailure(path, f"{d.rule} yields {concl.key}, node has {d.sequent.key}")
        if len(prem) != len(d.children):
            raise errors.CheckFailure(path, f"{d.rule} has {len(prem)} premise(s), node has "
                                            f"{len(d.children)} child(ren)")
        for i, (p, c) in enumerate(zip(prem, d.children)):
            if p != c.sequent:
                raise errors.CheckFailure(path, f"{d.rule} premise {i} should be {p.key}, child has "
                                                f"{c.sequent.key}")
    return True


def is_valid_proof(h: Calculus, proof: Derivation, allow_imports: bool = False) -> bool:
    try:
        return check(h, proof, allow_imports)
    except errors.CheckFailure:
        return False


# ---------------------------------------------------------------- metrics

def proof_size(proof: Derivation) -> int:
    """Sum of sequent sizes plus one per node for the justification."""
    return sum(d.sequent.size() + 1 for _, d in proof.nodes())


def proof_leaves(proof: Derivation) -> int:
    return sum(1 for _, d in proof.nodes() if not d.children)


def node_count(proof: Derivation) -> int:
    return sum(1 for _ in proof.nodes())


def height(proof: Derivation) -> int:
    best = 0
    for path, _ in proof.nodes():
        best = max(best, len(path) + 1)
    return best


def h_length(g: Calculus, h: Calculus, proof: Derivation) -> int:
    """Number of nodes using rules that ``h`` adds to ``g``."""
    if not h.extends(g):
        raise errors.NotAnExtension(f"{h.name} does not extend {g.name}")
    base = set(g.names)
    return sum(1 for _, d in proof.nodes() if not d.is_import and d.rule not in base)


# ---------------------------------------------------------------- text format

def serialize_proof(proof: Derivation) -> str:
    out: List[str] = ["(proof "]
    stack: List[object] = [proof]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        d = item
        out.append(f"(node {d.sequent.key} (by {d.rule} {d.subst.key}) (children")
        stack.append("))")
        for c in reversed(d.children):
            stack.append(c)
            stack.append(" ")
    out.append(")")
    return "".join(out)


def _node_from_sexpr(x, language) -> Derivation:
    # iterative post-order to survive very deep proofs
    def parts(n):
        if not (isinstance(n, SList) and len(n) == 4 and n[0] == "node"):
            raise errors.SyntaxError("expected (node (seq ...) (by ...) (children ...))", getattr(n, "pos", 0))
        by, kids = n[2], n[3]
        if not (isinstance(by, SList) and len(by) == 3 and by[0] == "by" and isinstance(by[1], Sym)):
            raise errors.SyntaxError("expected (by RULE (bind ...))", getattr(by, "pos", 0))
        if not (isinstance(kids, SList) and kids and kids[0] == "children"):
            raise errors.SyntaxError("expected (children ...)", getattr(kids, "pos", 0))
        return n[1], by, list(kids[1:])

    done: Dict[int, Derivation] = {}
    stack = [(x, False)]
    while stack:
        n, expanded = stack.pop()
        seq, by, kids = parts(n)
        if not expanded:
            stack.append((n, True))
            for k in kids:
                stack.append((k, False))
            continue
        done[id(n)] = Derivation(sequent_from_sexpr(seq, language), str(by[1]),
                                 substitution_from_sexpr(by[2], language),
                                 tuple(done.pop(id(k)) for k in kids))
    return done[id(x)]


def parse_proof(text: str, language=None) -> Derivation:
    x = read_one(text)
    if not (isinstance(x, SList) and len(x) == 2 and x[0] == "proof"):
        raise errors.SyntaxError("expected (proof NODE)", getattr(x, "pos", 0))
    return _node_from_sexpr(x[1], language)


# ---------------------------------------------------------------- LK prover

def _lk_node(rule: str, concl: Sequent, children=(), **binds) -> Derivation:
    fm = {k: v for k, v in binds.items() if isinstance(v, Formula)}
    cm = {k: v for k, v in binds.items() if isinstance(v, Multiset)}
    return Derivation(concl, rule, Substitution(fm, cm), tuple(children))


def lk_weaken(proof: Derivation, ant: Multiset = EMPTY, suc: Multiset = EMPTY) -> Derivation:
    """Extend an LK proof by weakening steps, one formula at a time."""
    cur = proof
    for f in ant:
        s = cur.sequent
        cur = _lk_node("Lw", Sequent(s.ant.add(f), s.suc), (cur,), phi=f, G=s.ant, D=s.suc)
    for f in suc:
        s = cur.sequent
        cur = _lk_node("Rw", Sequent(s.ant, s.suc.add(f)), (cur,), phi=f, G=s.ant, D=s.suc)
    return cur


def _closed(s: Sequent) -> Optional[str]:
    if any(f.op == "top" for f in s.suc):
        return "top"
    if any(f.op == "bot" for f in s.ant):
        return "bot"
    common = s.ant & s.suc
    if common:
        return "id"
    return None


def _close(s: Sequent) -> Derivation:
    how = _closed(s)
    if how == "top":
        t = Formula("top")
        return _lk_node("top-r", s, G=s.ant, D=s.suc.remove(t))
    if how == "bot":
        b = Formula("bot")
        return _lk_node("bot-l", s, G=s.ant.remove(b), D=s.suc)
    f = (s.ant & s.suc).items[0]
    base = _lk_node("id", Sequent.of([f], [f]), phi=f)
    return lk_weaken(base, s.ant.remove(f), s.suc.remove(f))


_ONE_PREMISE = {("L", "and"), ("R", "or"), ("R", "imp"), ("L", "not"), ("R", "not")}
# order in which branching rules are tried once nothing cheaper is left
_BRANCH_ORDER = {("L", "or"): 0, ("L", "imp"): 1, ("R", "and"): 2}


def _forced(f: Formula, atoms) -> bool:
    if f.op == "atom":
        return f in atoms
    if f.op == "top":
        return True
    if f.op == "and":
        return _forced(f.args[0], atoms) and _forced(f.args[1], atoms)
    if f.op == "or":
        return _forced(f.args[0], atoms) or _forced(f.args[1], atoms)
    return False


def _refuted(f: Formula, atoms) -> bool:
    if f.op == "atom":
        return f in atoms
    if f.op == "bot":
        return True
    if f.op == "or":
        return _refuted(f.args[0], atoms) and _refuted(f.args[1], atoms)
    if f.op == "and":
        return _refuted(f.args[0], atoms) or _refuted(f.args[1], atoms)
    return False


def _easy(s: Sequent) -> bool:
    """Closed, or closable by decomposing one atom-only formula."""
    if _closed(s):
        return True
    ant_atoms = set(f for f in s.ant if f.op == "atom")
    suc_atoms = set(f for f in s.suc if f.op == "atom")
    return any(_forced(f, ant_atoms) for f in s.suc) or any(_refuted(f, suc_atoms) for f in s.ant)


def _premises(s: Sequent, side: str, f: Formula) -> Tuple[str, List[Sequent], Dict[str, object]]:
    a, b = (f.args + (None, None))[:2]
    if side == "L":
        g, d = s.ant.remove(f), s.suc
        if f.op == "and":
            return "Land", [Sequent(g.add(a, b), d)], dict(phi=a, psi=b, G=g, D=d)
        if f.op == "or":
            return "Lor", [Sequent(g.add(a), d), Sequent(g.add(b), d)], dict(phi=a, psi=b, G=g, D=d)
        if f.op == "imp":
            return "Limp", [Sequent(g, d.add(a)), Sequent(g.add(b), d)], dict(phi=a, psi=b, G=g, D=d)
        if f.op == "not":
            return "Lnot", [Sequent(g, d.add(a))], dict(phi=a, G=g, D=d)
    else:
        g, d = s.ant, s.suc.remove(f)
        if f.op == "and":
            return "Rand", [Sequent(g, d.add(a)), Sequent(g, d.add(b))], dict(phi=a, psi=b, G=g, D=d)
        if f.op == "or":
            return "Ror", [Sequent(g, d.add(a, b))], dict(phi=a, psi=b, G=g, D=d)
        if f.op == "imp":
            return "Rimp", [Sequent(g.add(a), d.add(b))], dict(phi=a, psi=b, G=g, D=d)
        if f.op == "not":
            return "Rnot", [Sequent(g.add(a), d)], dict(phi=a, G=g, D=d)
    raise errors.InvalidInput(f"formula {f.key} is outside the classical language")


def _choose(s: Sequent):
    ant_atoms = set(f for f in s.ant if f.op == "atom")
    suc_atoms = set(f for f in s.suc if f.op == "atom")
    for f in s.suc:
        if f.args and _forced(f, ant_atoms):
            return "R", f
    for f in s.ant:
        if f.args and _refuted(f, suc_atoms):
            return "L", f
    candidates = [("L", f) for f in dict.fromkeys(s.ant.items) if f.args] + \
                 [("R", f) for f in dict.fromkeys(s.suc.items) if f.args]
    best, best_score = None, None
    for side, f in candidates:
        _, prems, _ = _premises(s, side, f)
        open_ = sum(1 for p in prems if not _easy(p))
        if open_ == 0:
            return side, f
        if (side, f.op) in _ONE_PREMISE:
            score = (0, 0, f.size())
        elif open_ == 1:
            score = (1, 0, f.size())
        else:
            score = (2, _BRANCH_ORDER.get((side, f.op), 3), -f.size())
        if best_score is None or score < best_score:
            best, best_score = (side, f), score
    return best


def lk_prove(s: Sequent, budget: int = 200000) -> Derivation:
    """Backward proof search in LK; every rule is invertible so no backtracking."""
    counter = [0]
    memo: Dict[str, Derivation] = {}
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))

    def go(seq: Sequent) -> Derivation:
        hit = memo.get(seq.key)
        if hit is not None:
            return hit
        counter[0] += 1
        if counter[0] > budget:
            raise errors.NotFound(f"search budget of {budget} nodes exhausted")
        if _closed(seq):
            out = _close(seq)
        else:
            pick = _choose(seq)
            if pick is None:
                raise errors.NotFound(f"{seq} is not derivable in LK")
            side, f = pick
            rule, prems, binds = _premises(seq, side, f)
            out = _lk_node(rule, seq, [go(p) for p in prems], **binds)
        memo[seq.key] = out
        return out

    try:
        for f in s.ant.items + s.suc.items:
            for g in f.subformulas():
                if g.op not in ("atom", "and", "or", "imp", "not", "top", "bot"):
                    raise errors.InvalidInput(f"connective {g.op} is outside the classical language")
        return go(s)
    finally:
        sys.setrecursionlimit(old)


def lk() -> Calculus:
    return builtin("LK")

"""Clique/Color sequents, the Hrubeš transform and a small measurement harness."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import errors
from .syntax import Formula, Multiset, Sequent, big

MAX_N = 8


def _atom(name: str) -> Formula:
    return Formula("atom", (), name)


def edge(u: int, v: int) -> Formula:
    u, v = min(u, v), max(u, v)
    return _atom(f"p_{u}_{v}")


def edges(n: int) -> List[Tuple[int, int]]:
    return list(itertools.combinations(range(1, n + 1), 2))


def _not(f: Formula) -> Formula:
    return Formula("not", (f,))


def _and(a: Formula, b: Formula) -> Formula:
    return Formula("and", (a, b))


def clique_formula(n: int, k: int) -> Formula:
    """r1_i_v says slot i holds vertex v; the selected vertices form a k-clique."""
    if not 2 <= k <= n <= MAX_N:
        raise errors.OutOfRange(f"need 2 <= k <= n <= {MAX_N}, got n={n}, k={k}")
    r = {(i, v): _atom(f"r1_{i}_{v}") for i in range(1, k + 1) for v in range(1, n + 1)}
    parts = [big("or", [r[i, v] for v in range(1, n + 1)]) for i in range(1, k + 1)]
    for i, j in itertools.combinations(range(1, k + 1), 2):
        for v in range(1, n + 1):
            parts.append(_not(_and(r[i, v], r[j, v])))
    for i, j in itertools.combinations(range(1, k + 1), 2):
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if u != v:
                    parts.append(Formula("imp", (_and(r[i, u], r[j, v]), edge(u, v))))
    return big("and", parts)


def color_formula(n: int, m: int) -> Formula:
    """r2_v_c says vertex v has colour c; the colouring is total and proper."""
    if not 1 <= m < n <= MAX_N:
        raise errors.OutOfRange(f"need 1 <= m < n <= {MAX_N}, got n={n}, m={m}")
    r = {(v, c): _atom(f"r2_{v}_{c}") for v in range(1, n + 1) for c in range(1, m + 1)}
    parts = [big("or", [r[v, c] for c in range(1, m + 1)]) for v in range(1, n + 1)]
    for u, v in edges(n):
        for c in range(1, m + 1):
            parts.append(Formula("imp", (edge(u, v), _not(_and(r[u, c], r[v, c])))))
    return big("and", parts)


def clique_color_sequent(n: int, k: int, m: int) -> Sequent:
    return Sequent(Multiset([clique_formula(n, k)]), Multiset([_not(color_formula(n, m))]))


def edge_atoms(n: int) -> List[str]:
    return [edge(u, v).name for u, v in edges(n)]


# ---------------------------------------------------------------- Hrubeš transform

def _substitute(f: Formula, env: Dict[str, Formula]) -> Formula:
    if f.op == "atom":
        return env.get(f.name, f)
    if not f.args:
        return f
    return Formula(f.op, tuple(_substitute(a, env) for a in f.args))


def hrubes_transform(a: Formula, b: Formula, n: int, p: Optional[Sequence[str]] = None,
                     q: Optional[Sequence[str]] = None, budget: Optional[int] = None) -> Sequent:
    """⋀(p_i ∨ q_i) ⇒ ¬¬A(p̄, r̄1), ¬¬B(q̄, r̄2)."""
    from .semantics import monotone_in, sequent_valid

    p = list(p) if p is not None else [f"p{i}" for i in range(1, n + 1)]
    q = list(q) if q is not None else [f"q{i}" for i in range(1, n + 1)]
    if len(p) != n or len(q) != n:
        raise errors.InvalidInput(f"need exactly {n} p-atoms and {n} q-atoms")
    ps, qs = set(p), set(q)
    r1 = a.vars() - ps
    r2 = b.vars() - qs
    if ps & qs or r1 & qs or r2 & ps or r1 & r2 or len(ps) != n or len(qs) != n:
        raise errors.VariableClash("p̄, q̄, r̄1 and r̄2 must be pairwise disjoint")
    if not monotone_in(a, p, budget):
        raise errors.InvalidInput("A must be monotone in p̄")
    flipped = _substitute(b, {qi: _not(_atom(pi)) for pi, qi in zip(p, q)})
    if not sequent_valid(Sequent(Multiset(), Multiset([Formula("or", (a, flipped))])), budget):
        raise errors.NotTautology("A(p̄) ∨ B(¬p̄) is not a classical tautology")
    ant = big("and", [Formula("or", (_atom(pi), _atom(qi))) for pi, qi in zip(p, q)])
    return Sequent(Multiset([ant]), Multiset([_not(_not(a)), _not(_not(b))]))


def clique_color_hrubes(n: int, k: int, m: int, budget: Optional[int] = None) -> Sequent:
    """A = ¬Color(p̄, r̄2) and B(q̄, r̄1) = ¬Clique(¬q̄, r̄1), so A ∨ B(¬p̄) holds when m < k."""
    ps = edge_atoms(n)
    qs = [x.replace("p_", "q_", 1) for x in ps]
    a = _not(color_formula(n, m))
    b = _not(_substitute(clique_formula(n, k), {x: _not(_atom(y)) for x, y in zip(ps, qs)}))
    return hrubes_transform(a, b, len(ps), ps, qs, budget)


# ---------------------------------------------------------------- graph helpers

def graph_assignments(n: int) -> Iterable[Dict[str, int]]:
    names = edge_atoms(n)
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


def has_clique(n: int, k: int, g: Dict[str, int]) -> bool:
    return any(all(g[edge(u, v).name] for u, v in itertools.combinations(c, 2))
               for c in itertools.combinations(range(1, n + 1), k))


def colorable(n: int, m: int, g: Dict[str, int]) -> bool:
    for col in itertools.product(range(m), repeat=n):
        if all(not g[edge(u, v).name] or col[u - 1] != col[v - 1] for u, v in edges(n)):
            return True
    return False


def separates(c: Formula, n: int, k: int, m: int) -> bool:
    """C is 1 on every graph with a k-clique and 0 on every m-colourable graph."""
    from .semantics import eval_classical

    for g in graph_assignments(n):
        val = eval_classical(c, g)
        if has_clique(n, k, g) and val != 1:
            return False
        if colorable(n, m, g) and val != 0:
            return False
    return True


# ---------------------------------------------------------------- pipeline and measurement

@dataclass(frozen=True)
class Measurement:
    n: int
    proof_size: int
    interpolant_size: int
    seconds: float

    def row(self) -> str:
        return f"{self.n}\t{self.proof_size}\t{self.interpolant_size}\t{self.seconds:.3f}"


def clique_color_pipeline(n: int, k: int = 3, m: int = 2, budget: int = 2_000_000):
    """LK search, translation to FocusedCPC, monotone interpolation with one part."""
    from .calculi import focused_cpc
    from .focusing import lk_to_focused
    from .interpolation import Split, interpolate_monotone
    from .kernel import lk_prove

    focused = lk_to_focused(lk_prove(clique_color_sequent(n, k, m), budget))
    return interpolate_monotone(focused_cpc(), focused, Split.monotone(focused.sequent, [focused.sequent.suc]))


def measure(ns: Sequence[int], k: int = 3, m: int = 2) -> List[Measurement]:
    out = []
    for n in ns:
        t0 = time.perf_counter()
        res = clique_color_pipeline(n, k, m)
        out.append(Measurement(n, res.proof_size, res.interpolant.size(), time.perf_counter() - t0))
    return out


def report(rows: Sequence[Measurement]) -> str:
    return "n\tproof_size\tinterpolant_size\tseconds\n" + "".join(r.row() + "\n" for r in rows)

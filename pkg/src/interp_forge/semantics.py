"""Two-valued semantics under the canonical translation, plus brute-force oracles."""
from __future__ import annotations

import os
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import errors
from .syntax import BOT, TOP, Formula, Multiset, Sequent, big

CHUNK_BITS = 20
DEFAULT_BUDGET = 22


def atom_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("INTERP_FORGE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise errors.InvalidInput(f"INTERP_FORGE_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _reject_modal(f: Formula) -> None:
    for g in f.subformulas():
        if g.op in ("box", "bang"):
            raise errors.ModalNotSupported(f"{g.op} has no two-valued reading")
        if g.op == "mvar":
            raise errors.InvalidInput("meta-variables have no truth value")


def eval_classical(f: Formula, alpha: Mapping[str, int]) -> int:
    _reject_modal(f)
    memo: Dict[str, bool] = {}

    def go(g: Formula) -> bool:
        k = g.key
        if k in memo:
            return memo[k]
        op = g.op
        if op == "atom":
            if g.name not in alpha:
                raise errors.UnboundAtom(f"no value for atom {g.name}")
            v = bool(alpha[g.name])
        elif op in ("top", "one"):
            v = True
        elif op in ("bot", "zero"):
            v = False
        elif op == "not":
            v = not go(g.args[0])
        elif op in ("and", "fuse"):
            v = go(g.args[0]) and go(g.args[1])
        elif op in ("or", "plus"):
            v = go(g.args[0]) or go(g.args[1])
        elif op == "imp":
            v = (not go(g.args[0])) or go(g.args[1])
        else:
            raise errors.ModalNotSupported(op)
        memo[k] = v
        return v

    return int(go(f))


def _eval_vec(f: Formula, columns: Mapping[str, np.ndarray], n: int, memo: Dict[str, np.ndarray]) -> np.ndarray:
    stack = [(f, False)]
    while stack:
        g, ready = stack.pop()
        k = g.key
        if k in memo:
            continue
        if not ready and g.args:
            stack.append((g, True))
            for a in g.args:
                if a.key not in memo:
                    stack.append((a, False))
            continue
        op = g.op
        if op == "atom":
            v = columns[g.name]
        elif op in ("top", "one"):
            v = np.ones(n, dtype=bool)
        elif op in ("bot", "zero"):
            v = np.zeros(n, dtype=bool)
        elif op == "not":
            v = ~memo[g.args[0].key]
        elif op in ("and", "fuse"):
            v = memo[g.args[0].key] & memo[g.args[1].key]
        elif op in ("or", "plus"):
            v = memo[g.args[0].key] | memo[g.args[1].key]
        elif op == "imp":
            v = ~memo[g.args[0].key] | memo[g.args[1].key]
        else:
            raise errors.ModalNotSupported(op)
        memo[k] = v
    return memo[f.key]


def _chunks(nvars: int):
    total = 1 << nvars
    step = 1 << min(CHUNK_BITS, nvars)
    for start in range(0, total, step):
        yield start, min(step, total - start)


def _columns(atoms: Sequence[str], start: int, count: int) -> Dict[str, np.ndarray]:
    idx = np.arange(start, start + count, dtype=np.int64)
    return {a: ((idx >> j) & 1).astype(bool) for j, a in enumerate(atoms)}


def truth_table(f: Formula, atoms: Optional[Sequence[str]] = None, budget: Optional[int] = None) -> np.ndarray:
    """Values of ``f`` on all assignments; bit j of the row index is atom j."""
    _reject_modal(f)
    atoms = sorted(f.vars()) if atoms is None else list(atoms)
    missing = f.vars() - set(atoms)
    if missing:
        raise errors.UnboundAtom(f"no value for atom {sorted(missing)[0]}")
    if len(atoms) > atom_budget(budget):
        raise errors.BudgetExceeded(f"{len(atoms)} atoms exceed the enumeration budget")
    parts = []
    for start, count in _chunks(len(atoms)):
        parts.append(_eval_vec(f, _columns(atoms, start, count), count, {}).copy())
    return np.concatenate(parts) if len(parts) > 1 else parts[0]


def sequent_formula(s: Sequent) -> Formula:
    return Formula("imp", (big("fuse", s.ant.items), big("plus", s.suc.items)))


def sequent_valid(s: Sequent, budget: Optional[int] = None) -> bool:
    """True iff the fusion of the antecedent implies the sum of the succedent."""
    f = sequent_formula(s)
    _reject_modal(f)
    atoms = sorted(f.vars())
    if len(atoms) > atom_budget(budget):
        raise errors.BudgetExceeded(f"{len(atoms)} atoms exceed the enumeration budget "
                                    f"of {atom_budget(budget)}")
    for start, count in _chunks(len(atoms)):
        cols = _columns(atoms, start, count)
        memo: Dict[str, np.ndarray] = {}
        ant = np.ones(count, dtype=bool)
        for g in s.ant:
            ant &= _eval_vec(g, cols, count, memo)
        suc = np.zeros(count, dtype=bool)
        for g in s.suc:
            suc |= _eval_vec(g, cols, count, memo)
        if not np.all(~ant | suc):
            return False
    return True


def semantic_monotone(f: Formula, budget: Optional[int] = None) -> bool:
    """True iff raising any atom from 0 to 1 never lowers the value of ``f``."""
    atoms = sorted(f.vars())
    if len(atoms) > min(20, atom_budget(budget)):
        raise errors.BudgetExceeded(f"{len(atoms)} atoms exceed the monotonicity budget")
    t = truth_table(f, atoms, budget)
    n = len(atoms)
    for j in range(n):
        v = t.reshape(1 << (n - j - 1), 2, 1 << j)
        if np.any(v[:, 0, :] & ~v[:, 1, :]):
            return False
    return True


def monotone_in(f: Formula, names: Iterable[str], budget: Optional[int] = None) -> bool:
    """Semantic monotonicity restricted to the given atoms."""
    atoms = sorted(f.vars())
    t = truth_table(f, atoms, budget)
    n = len(atoms)
    for name in names:
        if name not in atoms:
            continue
        j = atoms.index(name)
        v = t.reshape(1 << (n - j - 1), 2, 1 << j)
        if np.any(v[:, 0, :] & ~v[:, 1, :]):
            return False
    return True


# ---------------------------------------------------------------- interpolant oracle

def _table_bits(t: np.ndarray) -> int:
    return int.from_bytes(np.packbits(t, bitorder="little").tobytes(), "little")


def interpolant_bounds(sigma: Multiset, lam: Multiset, delta: Multiset,
                       budget: Optional[int] = None) -> Tuple[List[str], np.ndarray, np.ndarray]:
    """Shared atoms with the strongest and weakest admissible interpolant tables.

    lo = exists non-shared atoms of fuse(sigma); hi = forall non-shared of
    (fuse(lam) -> plus(delta)).  Tables are indexed over the shared atoms.
    """
    left = big("fuse", sigma.items)
    right = Formula("imp", (big("fuse", lam.items), big("plus", delta.items)))
    shared = sorted(left.vars() & right.vars())
    atoms = shared + sorted((left.vars() | right.vars()) - set(shared))
    lt = truth_table(left, atoms, budget)
    rt = truth_table(right, atoms, budget)
    m = len(shared)
    lt = lt.reshape(-1, 1 << m)
    rt = rt.reshape(-1, 1 << m)
    return shared, lt.any(axis=0), rt.all(axis=0)


def brute_interpolant(sigma: Multiset, lam: Multiset, delta: Multiset, max_size: int = 11,
                      budget: Optional[int] = None) -> Formula:
    """Smallest C over the shared atoms with sigma => C and lam, C => delta valid.

    Candidates use and/or/not/top/bot, are ordered by size and then by
    canonical serialization.
    """
    if not sequent_valid(Sequent(sigma + lam, delta), budget):
        raise errors.InvalidInput("the input sequent is not classically valid")
    shared, lo, hi = interpolant_bounds(sigma, lam, delta, budget)
    if len(shared) > 4:
        raise errors.InvalidInput(f"{len(shared)} shared atoms; the oracle handles at most 4")
    m = len(shared)
    rows = 1 << m
    full = (1 << rows) - 1
    lo_b, hi_b = _table_bits(lo), _table_bits(hi)

    def ok(t: int) -> bool:
        return (lo_b & ~t) == 0 and (t & ~hi_b) == 0

    # by_size[s] maps table -> serialization-least formula of exactly size s
    by_size: List[Dict[int, Formula]] = [dict()]
    base: Dict[int, Formula] = {}
    idx = np.arange(rows)
    for j, a in enumerate(shared):
        t = _table_bits(((idx >> j) & 1).astype(bool))
        _keep(base, t, Formula("atom", (), a))
    _keep(base, full, TOP)
    _keep(base, 0, BOT)
    by_size.append(base)
    for s in range(1, max_size + 1):
        if s >= 2:
            layer: Dict[int, Formula] = {}
            for t, f in by_size[s - 1].items():
                _keep(layer, full & ~t, Formula("not", (f,)))
            for i in range(1, s - 1):
                left, right = by_size[i], by_size[s - 1 - i]
                for ta, fa in left.items():
                    for tb, fb in right.items():
                        _keep(layer, ta & tb, Formula("and", (fa, fb)))
                        _keep(layer, ta | tb, Formula("or", (fa, fb)))
            by_size.append(layer)
        hits = [f for t, f in by_size[s].items() if ok(t)]
        if hits:
            return min(hits, key=lambda f: f.key)
    raise errors.NotFound(f"no interpolant of size <= {max_size}")


def _keep(d: Dict[int, Formula], t: int, f: Formula) -> None:
    old = d.get(t)
    if old is None or f.key < old.key:
        d[t] = f


def between(c: Formula, sigma: Multiset, lam: Multiset, delta: Multiset, budget: Optional[int] = None) -> bool:
    """Whether C lies between the strongest and weakest interpolant tables."""
    shared, lo, hi = interpolant_bounds(sigma, lam, delta, budget)
    if not c.vars() <= set(shared):
        return False
    t = truth_table(c, shared, budget) if shared else np.array([bool(eval_classical(c, {}))])
    return bool(np.all(~lo | t) and np.all(~t | hi))

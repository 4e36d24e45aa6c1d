"""Formulas, multisets, sequents, languages and translations.

Everything here is immutable.  Formulas compare by their canonical
s-expression, which also fixes the total order used inside multisets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from . import errors

ARITY: Dict[str, int] = {
    "and": 2, "or": 2, "imp": 2, "fuse": 2, "plus": 2,
    "not": 1, "box": 1, "bang": 1,
    "zero": 0, "one": 0, "top": 0, "bot": 0,
}
CONSTANTS = frozenset({"zero", "one", "top", "bot"})
UNICODE = {
    "and": "∧", "or": "∨", "imp": "→", "fuse": "*", "plus": "+",
    "not": "¬", "box": "□", "bang": "!",
    "zero": "0", "one": "1", "top": "⊤", "bot": "⊥",
}


class Formula:
    """A formula tree.  ``op`` is ``"atom"``, ``"mvar"`` or a connective name."""

    __slots__ = ("op", "args", "name", "_key", "_hash", "_size", "_vars")

    def __init__(self, op: str, args: Tuple["Formula", ...] = (), name: Optional[str] = None):
        self.op = op
        self.args = args
        self.name = name
        self._key = None
        self._hash = None
        self._size = None
        self._vars = None

    @property
    def key(self) -> str:
        k = self._key
        if k is None:
            if self.op == "atom":
                k = self.name
            elif self.op == "mvar":
                k = "?" + self.name
            elif not self.args:
                k = self.op
            else:
                k = "(" + self.op + " " + " ".join(a.key for a in self.args) + ")"
            self._key = k
        return k

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.key)
        return h

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"Formula({self.key})"

    def __str__(self):
        return pretty(self)

    @property
    def is_atom(self) -> bool:
        return self.op == "atom"

    @property
    def is_mvar(self) -> bool:
        return self.op == "mvar"

    @property
    def is_constant(self) -> bool:
        return self.op in CONSTANTS

    def size(self) -> int:
        s = self._size
        if s is None:
            s = 1 + sum(a.size() for a in self.args)
            self._size = s
        return s

    def vars(self) -> FrozenSet[str]:
        v = self._vars
        if v is None:
            if self.op == "atom":
                v = frozenset((self.name,))
            elif self.op == "mvar":
                v = frozenset(("?" + self.name,))
            elif not self.args:
                v = frozenset()
            else:
                v = frozenset().union(*(a.vars() for a in self.args))
            self._vars = v
        return v

    def subformulas(self) -> Iterator["Formula"]:
        yield self
        for a in self.args:
            yield from a.subformulas()


def Atom(name: str) -> Formula:
    return Formula("atom", (), name)


def MVar(name: str) -> Formula:
    return Formula("mvar", (), name)


def app(op: str, *args: Formula) -> Formula:
    if op not in ARITY:
        raise errors.UndeclaredConnective(f"unknown connective {op!r}")
    if len(args) != ARITY[op]:
        raise errors.ArityMismatch(f"{op} takes {ARITY[op]} argument(s), got {len(args)}")
    return Formula(op, tuple(args))


TOP = Formula("top")
BOT = Formula("bot")
ONE = Formula("one")
ZERO = Formula("zero")


def And(a, b):
    return Formula("and", (a, b))


def Or(a, b):
    return Formula("or", (a, b))


def Imp(a, b):
    return Formula("imp", (a, b))


def Fuse(a, b):
    return Formula("fuse", (a, b))


def Plus(a, b):
    return Formula("plus", (a, b))


def Not(a):
    return Formula("not", (a,))


def Box(a):
    return Formula("box", (a,))


def Bang(a):
    return Formula("bang", (a,))


_UNITS = {"and": TOP, "or": BOT, "fuse": ONE, "plus": ZERO}


def big(op: str, items: Iterable[Formula]) -> Formula:
    """Right-nested iterate of a binary connective.

    The empty iterate is the unit (``top``, ``bot``, ``one``, ``zero``) and a
    single item is returned unchanged.
    """
    items = list(items)
    if not items:
        return _UNITS[op]
    acc = items[-1]
    for f in reversed(items[:-1]):
        acc = Formula(op, (f, acc))
    return acc


def vars_of(obj) -> FrozenSet[str]:
    """Atoms (and ``?``-prefixed meta-variables) of a formula, multiset or sequent.

    The four constants never count as variables.
    """
    if isinstance(obj, Formula):
        return obj.vars()
    if isinstance(obj, Sequent):
        return obj.ant.vars() | obj.suc.vars()
    if isinstance(obj, Multiset):
        return obj.vars()
    out = frozenset()
    for x in obj:
        out |= vars_of(x)
    return out


def pretty(f: Formula) -> str:
    if f.op == "atom":
        return f.name
    if f.op == "mvar":
        return f.name
    if not f.args:
        return UNICODE[f.op]
    if len(f.args) == 1:
        return UNICODE[f.op] + pretty(f.args[0])
    return "(" + pretty(f.args[0]) + " " + UNICODE[f.op] + " " + pretty(f.args[1]) + ")"


class Multiset:
    """Finite multiset of formulas kept in canonical (serialization) order."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[Formula] = ()):
        self.items: Tuple[Formula, ...] = tuple(sorted(items, key=_key))
        self._hash = None

    @classmethod
    def _sorted(cls, items: Tuple[Formula, ...]) -> "Multiset":
        m = cls.__new__(cls)
        m.items = items
        m._hash = None
        return m

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __bool__(self):
        return bool(self.items)

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.items == other.items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.items)
        return self._hash

    def __repr__(self):
        return "Multiset(" + ", ".join(f.key for f in self.items) + ")"

    def __str__(self):
        return ", ".join(pretty(f) for f in self.items)

    def __add__(self, other: "Multiset") -> "Multiset":
        if not other.items:
            return self
        if not self.items:
            return other
        return Multiset(self.items + other.items)

    def __sub__(self, other: "Multiset") -> "Multiset":
        if not other.items:
            return self
        left = Counter(other.items)
        out = []
        for f in self.items:
            if left[f] > 0:
                left[f] -= 1
            else:
                out.append(f)
        return Multiset._sorted(tuple(out))

    def __and__(self, other: "Multiset") -> "Multiset":
        avail = Counter(other.items)
        out = []
        for f in self.items:
            if avail[f] > 0:
                avail[f] -= 1
                out.append(f)
        return Multiset._sorted(tuple(out))

    def count(self, f: Formula) -> int:
        return sum(1 for g in self.items if g == f)

    def __contains__(self, f) -> bool:
        return f in self.items

    def issubset(self, other: "Multiset") -> bool:
        have = Counter(other.items)
        for f, n in Counter(self.items).items():
            if have[f] < n:
                return False
        return True

    def add(self, *fs: Formula) -> "Multiset":
        return self + Multiset(fs)

    def remove(self, *fs: Formula) -> "Multiset":
        sub = Multiset(fs)
        if not sub.issubset(self):
            raise ValueError("cannot remove formulas that are absent")
        return self - sub

    def map(self, fn) -> "Multiset":
        return Multiset(fn(f) for f in self.items)

    def size(self) -> int:
        return sum(f.size() for f in self.items)

    def vars(self) -> FrozenSet[str]:
        out = frozenset()
        for f in self.items:
            out |= f.vars()
        return out

    @property
    def key(self) -> str:
        return "(" + " ".join(f.key for f in self.items) + ")"


def _key(f: Formula) -> str:
    return f.key


EMPTY = Multiset()


@dataclass(frozen=True)
class Sequent:
    ant: Multiset
    suc: Multiset

    @classmethod
    def of(cls, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> "Sequent":
        return cls(Multiset(ant), Multiset(suc))

    @property
    def key(self) -> str:
        return "(seq " + self.ant.key + " " + self.suc.key + ")"

    def size(self) -> int:
        return 1 + self.ant.size() + self.suc.size()

    def vars(self) -> FrozenSet[str]:
        return self.ant.vars() | self.suc.vars()

    def __str__(self):
        return f"{self.ant} ⇒ {self.suc}".strip()

    def compose(self, other: "Sequent") -> "Sequent":
        """S·T: antecedents and succedents are merged pairwise."""
        return Sequent(self.ant + other.ant, self.suc + other.suc)


def size(obj) -> int:
    """Token count of the canonical serialization (parentheses excluded)."""
    if isinstance(obj, (Formula, Sequent, Multiset)):
        return obj.size()
    from .kernel import Derivation, proof_size

    if isinstance(obj, Derivation):
        return proof_size(obj)
    raise TypeError(f"no size for {type(obj).__name__}")


# ---------------------------------------------------------------- languages

@dataclass(frozen=True)
class Connective:
    name: str
    arity: int


@dataclass(frozen=True)
class Language:
    connectives: FrozenSet[Connective]

    @classmethod
    def make(cls, negation=False, modal=False, exponential=False, plus=False) -> "Language":
        names = ["and", "or", "imp", "fuse", "zero", "one", "top", "bot"]
        if negation:
            names.append("not")
        if modal:
            names.append("box")
        if exponential:
            names.append("bang")
        if plus:
            names.append("plus")
        return cls(frozenset(Connective(n, ARITY[n]) for n in names))

    @property
    def names(self) -> FrozenSet[str]:
        return frozenset(c.name for c in self.connectives)

    def arity(self, name: str) -> Optional[int]:
        for c in self.connectives:
            if c.name == name:
                return c.arity
        return None

    @property
    def negation(self) -> bool:
        return "not" in self.names

    @property
    def modality(self) -> bool:
        return "box" in self.names

    @property
    def exponential(self) -> bool:
        return "bang" in self.names

    @property
    def plus(self) -> bool:
        return "plus" in self.names

    def union(self, other: "Language") -> "Language":
        return Language(self.connectives | other.connectives)

    def admits(self, f: Formula) -> bool:
        names = self.names
        return all(g.op in ("atom", "mvar") or g.op in names for g in f.subformulas())


FULL = Language.make(negation=True, modal=True, exponential=True, plus=True)


# ---------------------------------------------------------------- s-expressions

class Sym(str):
    pos: int = 0


class SList(list):
    pos: int = 0


def read_sexprs(text: str) -> List[Union[Sym, SList]]:
    """Read every top-level s-expression in ``text``.  ``;`` starts a comment."""
    out: List = []
    stack: List[SList] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c == "(":
            lst = SList()
            lst.pos = i
            stack.append(lst)
            i += 1
        elif c == ")":
            if not stack:
                raise errors.SyntaxError("unbalanced ')'", i)
            lst = stack.pop()
            (stack[-1] if stack else out).append(lst)
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            s = Sym(text[i:j])
            s.pos = i
            (stack[-1] if stack else out).append(s)
            i = j
    if stack:
        raise errors.SyntaxError("unclosed '('", stack[-1].pos)
    return out


def read_one(text: str):
    exprs = read_sexprs(text)
    if len(exprs) != 1:
        raise errors.SyntaxError(f"expected exactly one value, found {len(exprs)}", 0)
    return exprs[0]


def _pos(x) -> int:
    return getattr(x, "pos", 0)


def formula_from_sexpr(x, language: Optional[Language] = None, meta: bool = False) -> Formula:
    lang_names = (language or FULL).names
    expand_not = language is not None and "not" not in lang_names

    def build(x) -> Formula:
        if isinstance(x, SList):
            if not x or not isinstance(x[0], Sym) or isinstance(x[0], SList):
                raise errors.SyntaxError("expected a connective name", _pos(x))
            op = str(x[0])
            if op not in ARITY:
                raise errors.SyntaxError(f"unknown connective {op!r}", _pos(x[0]))
            if ARITY[op] == 0:
                raise errors.SyntaxError(f"constant {op!r} must not be parenthesised", _pos(x))
            args = [build(a) for a in x[1:]]
            if len(args) != ARITY[op]:
                raise errors.ArityMismatch(
                    f"{op} takes {ARITY[op]} argument(s), got {len(args)} (at offset {_pos(x)})")
            if op == "not" and expand_not:
                return Formula("imp", (args[0], ZERO))
            if op not in lang_names:
                raise errors.UndeclaredConnective(f"connective {op!r} is not in the language (at offset {_pos(x)})")
            return Formula(op, tuple(args))
        s = str(x)
        if s in CONSTANTS:
            if s not in lang_names:
                raise errors.UndeclaredConnective(f"constant {s!r} is not in the language")
            return Formula(s)
        if s in ARITY:
            raise errors.ArityMismatch(f"{s} takes {ARITY[s]} argument(s) (at offset {_pos(x)})")
        if s.startswith("?"):
            if not meta or len(s) < 2:
                raise errors.SyntaxError(f"meta-variable {s!r} not allowed here", _pos(x))
            return MVar(s[1:])
        if s.startswith("$"):
            raise errors.SyntaxError(f"context variable {s!r} not allowed here", _pos(x))
        return Atom(s)

    return build(x)


def multiset_from_sexpr(x, language=None) -> Multiset:
    if not isinstance(x, SList):
        raise errors.SyntaxError("expected a parenthesised list of formulas", _pos(x))
    return Multiset(formula_from_sexpr(e, language) for e in x)


def sequent_from_sexpr(x, language=None) -> Sequent:
    if not (isinstance(x, SList) and len(x) == 3 and x[0] == "seq"):
        raise errors.SyntaxError("expected (seq (ANT...) (SUC...))", _pos(x))
    return Sequent(multiset_from_sexpr(x[1], language), multiset_from_sexpr(x[2], language))


def parse(text: str, language: Optional[Language] = None) -> Union[Formula, Sequent]:
    x = read_one(text)
    if isinstance(x, SList) and x and x[0] == "seq":
        return sequent_from_sexpr(x, language)
    return formula_from_sexpr(x, language)


def parse_formula(text: str, language: Optional[Language] = None) -> Formula:
    v = parse(text, language)
    if not isinstance(v, Formula):
        raise errors.SyntaxError("expected a formula", 0)
    return v


def parse_sequent(text: str, language: Optional[Language] = None) -> Sequent:
    x = read_one(text)
    return sequent_from_sexpr(x, language)


def serialize(v) -> str:
    if isinstance(v, (Formula, Sequent, Multiset)):
        return v.key
    raise TypeError(f"cannot serialize {type(v).__name__}")


# ---------------------------------------------------------------- translations

@dataclass(frozen=True)
class Translation:
    """Maps connectives to templates over placeholder atoms ``p1 .. pn``.

    Connectives listed in ``fixed`` are copied unchanged.
    """

    templates: Dict[str, Formula] = field(default_factory=dict)
    fixed: FrozenSet[str] = frozenset()

    def __post_init__(self):
        for op, tpl in self.templates.items():
            placeholders = {f"p{i + 1}" for i in range(ARITY[op])}
            counts = Counter(g.name for g in tpl.subformulas() if g.op == "atom")
            for name, c in counts.items():
                if name not in placeholders:
                    raise errors.InvalidInput(f"template for {op} mentions foreign atom {name!r}")
                if c > 1:
                    raise errors.InvalidInput(f"placeholder {name} occurs {c} times in the template for {op}")

    @property
    def bound_constant(self) -> int:
        """c with |translate(t, φ)| <= c·|φ|."""
        return max([1] + [tpl.size() for tpl in self.templates.values()])

    def __hash__(self):
        return hash((tuple(sorted((k, v.key) for k, v in self.templates.items())), self.fixed))


def identity_translation() -> Translation:
    return Translation({}, frozenset(ARITY))


def canonical_translation() -> Translation:
    p1, p2 = Atom("p1"), Atom("p2")
    return Translation(
        {"fuse": And(p1, p2), "plus": Or(p1, p2), "one": TOP, "zero": BOT},
        frozenset({"and", "or", "imp", "not", "top", "bot", "box", "bang"}),
    )


def translate(t: Translation, f: Formula) -> Formula:
    memo: Dict[str, Formula] = {}

    def go(g: Formula) -> Formula:
        if g.op in ("atom", "mvar"):
            return g
        hit = memo.get(g.key)
        if hit is not None:
            return hit
        args = tuple(go(a) for a in g.args)
        if g.op in t.templates:
            env = {f"p{i + 1}": a for i, a in enumerate(args)}
            out = _plug(t.templates[g.op], env)
        elif g.op in t.fixed:
            out = Formula(g.op, args)
        else:
            raise errors.UndeclaredConnective(f"translation does not cover {g.op!r}")
        memo[g.key] = out
        return out

    return go(f)


def _plug(tpl: Formula, env: Dict[str, Formula]) -> Formula:
    if tpl.op == "atom":
        return env.get(tpl.name, tpl)
    if not tpl.args:
        return tpl
    return Formula(tpl.op, tuple(_plug(a, env) for a in tpl.args))

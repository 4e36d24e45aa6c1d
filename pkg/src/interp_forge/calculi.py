"""Built-in sequent calculi, the calculus file format and its invariants."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from . import errors
from .schema import (
    MetaSequent, RuleClassification, RuleSchema, classify_axiom, classify_rule,
    mseq_from_sexpr, rule_from_sexpr,
)
from .syntax import FULL, Language, SList, Sym, read_one, read_sexprs

# ---------------------------------------------------------------- rule library

_COMMON = r"""
(rule Land1 (premises (mseq (ant $G ?phi) (suc $D))) (conclusion (mseq (ant $G (and ?phi ?psi)) (suc $D))))
(rule Land2 (premises (mseq (ant $G ?psi) (suc $D))) (conclusion (mseq (ant $G (and ?phi ?psi)) (suc $D))))
(rule Lor (premises (mseq (ant $G ?phi) (suc $D)) (mseq (ant $G ?psi) (suc $D)))
      (conclusion (mseq (ant $G (or ?phi ?psi)) (suc $D))))
(rule Lfuse (premises (mseq (ant $G ?phi ?psi) (suc $D))) (conclusion (mseq (ant $G (fuse ?phi ?psi)) (suc $D))))
(rule L1 (premises (mseq (ant $G) (suc $D))) (conclusion (mseq (ant $G one) (suc $D))))
(rule Lw (premises (mseq (ant $G) (suc $D))) (conclusion (mseq (ant $G ?phi) (suc $D))))
(rule Lc (premises (mseq (ant $G ?phi ?phi) (suc $D))) (conclusion (mseq (ant $G ?phi) (suc $D))))
(rule Lbang-d (premises (mseq (ant $G ?phi) (suc $D))) (conclusion (mseq (ant $G (bang ?phi)) (suc $D))))
(rule Lbang-w (premises (mseq (ant $G) (suc $D))) (conclusion (mseq (ant $G (bang ?phi)) (suc $D))))
(rule Lbang-c (premises (mseq (ant $G (bang ?phi) (bang ?phi)) (suc $D)))
      (conclusion (mseq (ant $G (bang ?phi)) (suc $D))))
(rule dagger (premises (mseq (ant (bang $G)) (suc ?phi))) (conclusion (mseq (ant (bang $G)) (suc (bang ?phi)))))
(rule K (premises (mseq (ant $G) (suc ?phi))) (conclusion (mseq (ant (box $G)) (suc (box ?phi)))))
(rule D (premises (mseq (ant $G) (suc))) (conclusion (mseq (ant (box $G)) (suc))))
(rule LS4 (premises (mseq (ant $G ?phi) (suc $D))) (conclusion (mseq (ant $G (box ?phi)) (suc $D))))
(rule RS4 (premises (mseq (ant (box $G)) (suc ?phi))) (conclusion (mseq (ant (box $G)) (suc (box ?phi)))))
(rule 4 (premises (mseq (ant (box $G) $G) (suc ?phi))) (conclusion (mseq (ant (box $G)) (suc (box ?phi)))))
(rule 4D (premises (mseq (ant (box $G) $G) (suc))) (conclusion (mseq (ant (box $G)) (suc))))
(rule Lw-box (premises (mseq (ant $G) (suc $D))) (conclusion (mseq (ant $G (box ?phi)) (suc $D))))
"""

_SINGLE = r"""
(axiom id (mseq (ant ?phi) (suc ?phi)))
(axiom one-r (mseq (ant) (suc one)))
(axiom zero-l (mseq (ant zero) (suc)))
(axiom top-r (mseq (ant $G) (suc top)))
(axiom bot-l (mseq (ant $G bot) (suc $D)))
(rule R0 (premises (mseq (ant $G) (suc))) (conclusion (mseq (ant $G) (suc zero))))
(rule Rand (premises (mseq (ant $G) (suc ?phi)) (mseq (ant $G) (suc ?psi)))
      (conclusion (mseq (ant $G) (suc (and ?phi ?psi)))))
(rule Ror1 (premises (mseq (ant $G) (suc ?phi))) (conclusion (mseq (ant $G) (suc (or ?phi ?psi)))))
(rule Ror2 (premises (mseq (ant $G) (suc ?psi))) (conclusion (mseq (ant $G) (suc (or ?phi ?psi)))))
(rule Rfuse (premises (mseq (ant $G) (suc ?phi)) (mseq (ant $S) (suc ?psi)))
      (conclusion (mseq (ant $G $S) (suc (fuse ?phi ?psi)))))
(rule Limp (premises (mseq (ant $G) (suc ?phi)) (mseq (ant $S ?psi) (suc $D)))
      (conclusion (mseq (ant $G $S (imp ?phi ?psi)) (suc $D))))
(rule Rimp (premises (mseq (ant $G ?phi) (suc ?psi))) (conclusion (mseq (ant $G) (suc (imp ?phi ?psi)))))
(rule Rw (premises (mseq (ant $G) (suc))) (conclusion (mseq (ant $G) (suc ?phi))))
(rule Limp-cs (premises (mseq (ant $G) (suc ?phi)) (mseq (ant $G ?psi) (suc $D)))
      (conclusion (mseq (ant $G (imp ?phi ?psi)) (suc $D))))
"""

_MULTI = r"""
(axiom id (mseq (ant ?phi) (suc ?phi)))
(axiom one-r (mseq (ant) (suc one)))
(axiom zero-l (mseq (ant zero) (suc)))
(axiom top-r (mseq (ant $G) (suc top $D)))
(axiom bot-l (mseq (ant $G bot) (suc $D)))
(rule R0 (premises (mseq (ant $G) (suc $D))) (conclusion (mseq (ant $G) (suc zero $D))))
(rule Rand (premises (mseq (ant $G) (suc ?phi $D)) (mseq (ant $G) (suc ?psi $D)))
      (conclusion (mseq (ant $G) (suc (and ?phi ?psi) $D))))
(rule Ror1 (premises (mseq (ant $G) (suc ?phi $D))) (conclusion (mseq (ant $G) (suc (or ?phi ?psi) $D))))
(rule Ror2 (premises (mseq (ant $G) (suc ?psi $D))) (conclusion (mseq (ant $G) (suc (or ?phi ?psi) $D))))
(rule Rfuse (premises (mseq (ant $G) (suc ?phi $D)) (mseq (ant $S) (suc ?psi $L)))
      (conclusion (mseq (ant $G $S) (suc (fuse ?phi ?psi) $D $L))))
(rule Limp (premises (mseq (ant $G) (suc ?phi $D)) (mseq (ant $S ?psi) (suc $L)))
      (conclusion (mseq (ant $G $S (imp ?phi ?psi)) (suc $D $L))))
(rule Rimp (premises (mseq (ant $G ?phi) (suc ?psi $D))) (conclusion (mseq (ant $G) (suc (imp ?phi ?psi) $D))))
(rule Lplus (premises (mseq (ant $G ?phi) (suc $D)) (mseq (ant $S ?psi) (suc $L)))
      (conclusion (mseq (ant $G $S (plus ?phi ?psi)) (suc $D $L))))
(rule Rplus (premises (mseq (ant $G) (suc ?phi ?psi $D))) (conclusion (mseq (ant $G) (suc (plus ?phi ?psi) $D))))
(rule Rw (premises (mseq (ant $G) (suc $D))) (conclusion (mseq (ant $G) (suc ?phi $D))))
(rule Rc (premises (mseq (ant $G) (suc ?phi ?phi $D))) (conclusion (mseq (ant $G) (suc ?phi $D))))
(rule cut (premises (mseq (ant $G) (suc ?phi $D)) (mseq (ant $S ?phi) (suc $L)))
      (conclusion (mseq (ant $G $S) (suc $D $L))))
"""

# classical LK: shared contexts, additive two-premise rules
_LK = r"""
(axiom id (mseq (ant ?phi) (suc ?phi)))
(axiom top-r (mseq (ant $G) (suc top $D)))
(axiom bot-l (mseq (ant $G bot) (suc $D)))
(rule Land (premises (mseq (ant $G ?phi ?psi) (suc $D))) (conclusion (mseq (ant $G (and ?phi ?psi)) (suc $D))))
(rule Ror (premises (mseq (ant $G) (suc ?phi ?psi $D))) (conclusion (mseq (ant $G) (suc (or ?phi ?psi) $D))))
(rule Limp (premises (mseq (ant $G) (suc ?phi $D)) (mseq (ant $G ?psi) (suc $D)))
      (conclusion (mseq (ant $G (imp ?phi ?psi)) (suc $D))))
(rule Lnot (premises (mseq (ant $G) (suc ?phi $D))) (conclusion (mseq (ant $G (not ?phi)) (suc $D))))
(rule Rnot (premises (mseq (ant $G ?phi) (suc $D))) (conclusion (mseq (ant $G) (suc (not ?phi) $D))))
"""

# FocusedCPC-specific schemas (the De Morgan family is generated below)
_FCPC = r"""
(axiom neg-l (mseq (ant ?phi (not ?phi)) (suc)))
(axiom neg-r (mseq (ant) (suc ?phi (not ?phi))))
(axiom neg-one (mseq (ant (not one)) (suc)))
(axiom neg-zero (mseq (ant) (suc (not zero))))
(axiom neg-bot (mseq (ant $G) (suc (not bot) $D)))
(axiom neg-top (mseq (ant $G (not top)) (suc $D)))
(rule Rimp-f (premises (mseq (ant $G) (suc (not ?phi) ?psi $D))) (conclusion (mseq (ant $G) (suc (imp ?phi ?psi) $D))))
(rule Limp-f (premises (mseq (ant $G (not ?phi)) (suc $D)) (mseq (ant $S ?psi) (suc $L)))
      (conclusion (mseq (ant $G $S (imp ?phi ?psi)) (suc $D $L))))
(rule Lnot-imp (premises (mseq (ant $G ?phi (not ?psi)) (suc $D)))
      (conclusion (mseq (ant $G (not (imp ?phi ?psi))) (suc $D))))
(rule Rnot-imp (premises (mseq (ant $G) (suc ?phi $D)) (mseq (ant $S) (suc (not ?psi) $L)))
      (conclusion (mseq (ant $G $S) (suc (not (imp ?phi ?psi)) $D $L))))
"""

# Negated connective -> how its negation decomposes.  "add" = shared-context
# two-premise, "mult" = split-context two-premise, "pick" = two one-premise
# twins, "both" = one premise holding both negated parts.
DE_MORGAN = {
    "and": {"L": "add", "R": "pick"},
    "or": {"L": "pick", "R": "add"},
    "fuse": {"L": "mult", "R": "both"},
    "plus": {"L": "both", "R": "mult"},
}


def _de_morgan_rules() -> str:
    out = []
    for op, how in DE_MORGAN.items():
        conn = f"(not ({op} ?phi ?psi))"
        for side, kind in how.items():
            name = f"{side}not-{op}"

            def prem(items, ctx_a="$G", ctx_s="$D"):
                if side == "L":
                    return f"(mseq (ant {ctx_a} {items}) (suc {ctx_s}))"
                return f"(mseq (ant {ctx_a}) (suc {items} {ctx_s}))"

            if side == "L":
                concl = f"(mseq (ant $G {conn}) (suc $D))"
                concl2 = f"(mseq (ant $G $S {conn}) (suc $D $L))"
            else:
                concl = f"(mseq (ant $G) (suc {conn} $D))"
                concl2 = f"(mseq (ant $G $S) (suc {conn} $D $L))"
            if kind == "add":
                out.append(f"(rule {name} (premises {prem('(not ?phi)')} {prem('(not ?psi)')}) (conclusion {concl}))")
            elif kind == "mult":
                out.append(f"(rule {name} (premises {prem('(not ?phi)')} {prem('(not ?psi)', '$S', '$L')}) "
                           f"(conclusion {concl2}))")
            elif kind == "both":
                out.append(f"(rule {name} (premises {prem('(not ?phi) (not ?psi)')}) (conclusion {concl}))")
            else:
                out.append(f"(rule {name}1 (premises {prem('(not ?phi)')}) (conclusion {concl}))")
                out.append(f"(rule {name}2 (premises {prem('(not ?psi)')}) (conclusion {concl}))")
    out.append("(rule Lnot-not (premises (mseq (ant $G ?phi) (suc $D))) "
               "(conclusion (mseq (ant $G (not (not ?phi))) (suc $D))))")
    out.append("(rule Rnot-not (premises (mseq (ant $G) (suc ?phi $D))) "
               "(conclusion (mseq (ant $G) (suc (not (not ?phi)) $D))))")
    return "\n".join(out)


def _parse_library(text: str, discipline: str) -> Dict[str, RuleSchema]:
    lib = {}
    for x in read_sexprs(text):
        if x[0] == "axiom":
            r = RuleSchema(str(x[1]), (), mseq_from_sexpr(x[2]), discipline)
        else:
            r = rule_from_sexpr(x, None, discipline)
        lib[r.name] = r
    return lib


@lru_cache(maxsize=None)
def library(discipline: str) -> Dict[str, RuleSchema]:
    """Every named schema available to calculi of the given discipline."""
    lib = _parse_library(_COMMON, discipline)
    if discipline == "single":
        lib.update(_parse_library(_SINGLE, "single"))
    else:
        lib.update(_parse_library(_MULTI, "multi"))
    return lib


@lru_cache(maxsize=None)
def _lk_library() -> Dict[str, RuleSchema]:
    lib = dict(library("multi"))
    lib.update(_parse_library(_LK, "multi"))
    return lib


@lru_cache(maxsize=None)
def _fcpc_library() -> Dict[str, RuleSchema]:
    lib = dict(library("multi"))
    lib.update(_parse_library(_FCPC, "multi"))
    lib.update(_parse_library(_de_morgan_rules(), "multi"))
    return lib


# ---------------------------------------------------------------- calculus

BASE_TAGS = ("FLe-", "FLe", "CFLe-", "CFLe", "MALL", "none")

_FLE_MINUS = ("id", "one-r", "zero-l", "L1", "R0", "Land1", "Land2", "Rand", "Lor", "Ror1", "Ror2",
              "Lfuse", "Rfuse", "Limp", "Rimp")
BASE_RULES = {
    "FLe-": _FLE_MINUS,
    "FLe": _FLE_MINUS + ("top-r", "bot-l"),
    "CFLe-": _FLE_MINUS + ("Lplus", "Rplus"),
    "CFLe": _FLE_MINUS + ("Lplus", "Rplus", "top-r", "bot-l"),
    "MALL": tuple(n for n in _FLE_MINUS if n not in ("Limp", "Rimp")) + ("Lplus", "Rplus", "top-r", "bot-l"),
    "none": (),
}


@dataclass(frozen=True)
class Calculus:
    name: str
    language: Language
    axioms: Tuple[RuleSchema, ...]
    rules: Tuple[RuleSchema, ...]
    discipline: str
    base: str
    admissible: Tuple[RuleSchema, ...] = ()

    def __post_init__(self):
        validate(self)

    @property
    def single(self) -> bool:
        return self.discipline == "single"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(r.name for r in self.axioms + self.rules)

    def has(self, name: str) -> bool:
        return name in self.names

    def get(self, name: str, allow_admissible: bool = True) -> RuleSchema:
        for r in self.axioms + self.rules:
            if r.name == name:
                return r
        if allow_admissible:
            for r in self.admissible:
                if r.name == name:
                    return r
        raise KeyError(name)

    def can_use(self, name: str) -> bool:
        try:
            self.get(name)
            return True
        except KeyError:
            return False

    def classification(self) -> Dict[str, object]:
        report = {}
        for a in self.axioms:
            report[a.name] = classify_axiom(a.conclusion)
        for r in self.rules + self.admissible:
            report[r.name] = classify_rule(r)
        return report

    def extends(self, other: "Calculus") -> bool:
        mine = {r.name: r for r in self.axioms + self.rules}
        return all(mine.get(r.name) == r for r in other.axioms + other.rules)


def _wide(ms: MetaSequent) -> bool:
    return len(ms.suc_formulas) >= 2 or (bool(ms.suc_formulas) and bool(ms.suc_ctx))


def validate(h: Calculus) -> None:
    if h.discipline not in ("single", "multi"):
        raise errors.SyntaxError(f"unknown discipline {h.discipline!r}")
    if h.base not in BASE_TAGS:
        raise errors.SyntaxError(f"unknown base tag {h.base!r}")
    if h.single:
        for r in h.axioms + h.rules + h.admissible:
            for ms in r.premises + (r.conclusion,):
                if _wide(ms):
                    raise errors.DisciplineMix(f"rule {r.name} has a multi-conclusion shape in a "
                                               f"single-conclusion calculus")
    kinds = {}
    for r in h.rules:
        c = classify_rule(r)
        if c.modal:
            kinds.setdefault(c.modal, set()).add(c.modality)
    for need, dep in (("D", "K"), ("RS4", "LS4"), ("4D", "4")):
        for modality in kinds.get(need, ()):
            if modality not in kinds.get(dep, set()):
                raise errors.ModalDependencyViolation(f"rule {need} requires rule {dep}")
    names = set(h.names)
    missing = [n for n in BASE_RULES[h.base] if n not in names]
    if missing:
        raise errors.MissingBaseRule(f"base {h.base} requires " + ", ".join(missing))
    seen = set()
    for n in h.names:
        if n in seen:
            raise errors.SyntaxError(f"duplicate rule name {n}")
        seen.add(n)


def _make(name, discipline, base, names, language, admissible=(), lib=None) -> Calculus:
    lib = lib or library(discipline)
    schemas = [lib[n] for n in names]
    axioms = tuple(r for r in schemas if r.is_axiom)
    rules = tuple(r for r in schemas if not r.is_axiom)
    adm = tuple(lib[n] for n in admissible)
    return Calculus(name, language, axioms, rules, discipline, base, adm)


# Only extras that are genuinely admissible (or, for Lw-box, assumed) are listed.
_SC_ADM: Tuple[str, ...] = ()
_MC_ADM: Tuple[str, ...] = ()


def _builders():
    fle_minus = list(_FLE_MINUS)
    fle = fle_minus + ["top-r", "bot-l"]
    cfle_minus = fle_minus + ["Lplus", "Rplus"]
    cfle = cfle_minus + ["top-r", "bot-l"]
    mall = [n for n in cfle if n not in ("Limp", "Rimp")]
    bang = ["Lbang-d", "Lbang-w", "Lbang-c", "dagger"]
    sc_lang = Language.make()
    mc_lang = Language.make(plus=True)
    return {
        "FLe-": lambda: _make("FLe-", "single", "FLe-", fle_minus, sc_lang, _SC_ADM),
        "FLe": lambda: _make("FLe", "single", "FLe", fle, sc_lang, _SC_ADM),
        "FLew": lambda: _make("FLew", "single", "FLe", fle + ["Lw", "Rw"], sc_lang),
        "FLec": lambda: _make("FLec", "single", "FLe", fle + ["Lc"], sc_lang, _SC_ADM),
        "CFLe-": lambda: _make("CFLe-", "multi", "CFLe-", cfle_minus, mc_lang, _MC_ADM),
        "CFLe": lambda: _make("CFLe", "multi", "CFLe", cfle, mc_lang, _MC_ADM),
        "CFLew": lambda: _make("CFLew", "multi", "CFLe", cfle + ["Lw", "Rw"], mc_lang),
        "CFLec": lambda: _make("CFLec", "multi", "CFLe", cfle + ["Lc", "Rc"], mc_lang, _MC_ADM),
        "MALL": lambda: _make("MALL", "multi", "MALL", mall, mc_lang, _MC_ADM),
        "ILL": lambda: _make("ILL", "single", "FLe", fle + bang, Language.make(exponential=True), _SC_ADM),
        "CLL": lambda: _make("CLL", "multi", "CFLe", cfle + bang, Language.make(exponential=True, plus=True),
                             _MC_ADM),
        "FLe+K": lambda: _make("FLe+K", "single", "FLe", fle + ["K"], Language.make(modal=True), _SC_ADM),
        "FLe+KD": lambda: _make("FLe+KD", "single", "FLe", fle + ["K", "D"], Language.make(modal=True), _SC_ADM),
        "FLe+S4": lambda: _make("FLe+S4", "single", "FLe", fle + ["LS4", "RS4"], Language.make(modal=True),
                                _SC_ADM),
        "FLe+K4": lambda: _make("FLe+K4", "single", "FLe", fle + ["4"], Language.make(modal=True),
                                _SC_ADM + ("Lw-box",)),
        "CFLe+K": lambda: _make("CFLe+K", "multi", "CFLe", cfle + ["K"], Language.make(modal=True, plus=True),
                                _MC_ADM),
        "LK": lambda: _make("LK", "multi", "none",
                            ["id", "top-r", "bot-l", "Land", "Rand", "Lor", "Ror", "Limp", "Rimp", "Lnot", "Rnot",
                             "Lw", "Rw", "Lc", "Rc", "cut"],
                            Language.make(negation=True), lib=_lk_library()),
        "FocusedCPC": lambda: _make("FocusedCPC", "multi", "MALL", _fcpc_names(),
                                    Language.make(negation=True, plus=True), lib=_fcpc_library()),
    }


def _fcpc_names() -> List[str]:
    mall = [n for n in BASE_RULES["MALL"]]
    extra = ["neg-l", "neg-r", "neg-one", "neg-zero", "neg-bot", "neg-top", "Rimp-f", "Limp-f",
             "Lnot-imp", "Rnot-imp"]
    dm = [r.name for r in _parse_library(_de_morgan_rules(), "multi").values()]
    return mall + extra + dm + ["Lw", "Rw", "Lc", "Rc"]


BUILTIN_NAMES = ("FLe-", "FLe", "FLew", "FLec", "CFLe-", "CFLe", "CFLew", "CFLec", "MALL", "ILL", "CLL",
                 "FLe+K", "FLe+KD", "FLe+S4", "FLe+K4", "CFLe+K", "LK", "FocusedCPC")


@lru_cache(maxsize=None)
def builtin(name: str) -> Calculus:
    b = _builders().get(name)
    if b is None:
        raise errors.UnknownCalculus(f"unknown calculus {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return b()


def focused_cpc() -> Calculus:
    return builtin("FocusedCPC")


# ---------------------------------------------------------------- file format

_LANG_FLAGS = ("not", "box", "bang", "plus")


def dump(h: Calculus) -> str:
    lines = [f"(calculus {h.name}", f"  (discipline {h.discipline})", f"  (base {h.base})"]
    flags = [f for f in _LANG_FLAGS if f in h.language.names]
    lines.append("  (language" + "".join(" " + f for f in flags) + ")")
    lines.append("  (admissible" + "".join(" " + r.name for r in h.admissible) + ")")
    for a in h.axioms:
        lines.append(f"  (axiom {a.name} {a.conclusion.key})")
    for r in h.rules:
        lines.append("  " + r.key)
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def _resolve_admissible(names, discipline, rules) -> Tuple[RuleSchema, ...]:
    lib = library(discipline)
    out = []
    for n in names:
        local = [r for r in rules if r.name == n]
        if local:
            out.append(local[0])
        elif n in lib:
            out.append(lib[n])
        else:
            raise errors.SyntaxError(f"unknown admissible rule {n!r}")
    return tuple(out)


def load(text: str) -> Calculus:
    """Parse a calculus file and validate its invariants."""
    x = read_one(text)
    if not (isinstance(x, SList) and len(x) >= 2 and x[0] == "calculus" and isinstance(x[1], Sym)):
        raise errors.SyntaxError("expected (calculus NAME ...)", getattr(x, "pos", 0))
    name = str(x[1])
    discipline, base, lang, adm_names = "multi", "none", None, []
    axioms, rules = [], []
    for clause in x[2:]:
        if not (isinstance(clause, SList) and clause and isinstance(clause[0], Sym)):
            raise errors.SyntaxError("malformed calculus clause", getattr(clause, "pos", 0))
        head = clause[0]
        if head == "discipline":
            if len(clause) != 2 or clause[1] not in ("single", "multi"):
                raise errors.SyntaxError("expected (discipline single|multi)", clause.pos)
            discipline = str(clause[1])
        elif head == "base":
            if len(clause) != 2 or clause[1] not in BASE_TAGS:
                raise errors.SyntaxError("unknown base tag", clause.pos)
            base = str(clause[1])
        elif head == "language":
            bad = [str(f) for f in clause[1:] if f not in _LANG_FLAGS]
            if bad:
                raise errors.SyntaxError(f"unknown language flag {bad[0]!r}", clause.pos)
            flags = {str(f) for f in clause[1:]}
            lang = Language.make("not" in flags, "box" in flags, "bang" in flags, "plus" in flags)
        elif head == "admissible":
            adm_names = [str(n) for n in clause[1:]]
        elif head == "axiom":
            if len(clause) != 3:
                raise errors.SyntaxError("expected (axiom NAME MSEQ)", clause.pos)
            axioms.append(RuleSchema(str(clause[1]), (), mseq_from_sexpr(clause[2]), discipline))
        elif head == "rule":
            rules.append(rule_from_sexpr(clause, None, discipline))
        else:
            raise errors.SyntaxError(f"unknown clause {head!r}", clause.pos)
    # the discipline clause may follow rules; normalise
    axioms = [RuleSchema(a.name, (), a.conclusion, discipline) for a in axioms]
    rules = [RuleSchema(r.name, r.premises, r.conclusion, discipline) for r in rules]
    if lang is None:
        used = set()
        for r in axioms + rules:
            for ms in r.premises + (r.conclusion,):
                for f in ms.formulas:
                    used |= {g.op for g in f.subformulas()}
        lang = Language.make("not" in used, "box" in used, "bang" in used, "plus" in used)
    for r in axioms + rules:
        for ms in r.premises + (r.conclusion,):
            for f in ms.formulas:
                if not lang.admits(f):
                    raise errors.UndeclaredConnective(f"rule {r.name} uses a connective outside the language")
    adm = _resolve_admissible(adm_names, discipline, rules)
    return Calculus(name, lang, tuple(axioms), tuple(rules), discipline, base, adm)


def resolve(spec: str) -> Calculus:
    """A built-in name or a path to a calculus file."""
    if spec in BUILTIN_NAMES:
        return builtin(spec)
    import os

    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return load(fh.read())
    raise errors.UnknownCalculus(f"unknown calculus {spec!r}; known: {', '.join(BUILTIN_NAMES)}")

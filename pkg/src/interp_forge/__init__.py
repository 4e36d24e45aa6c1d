"""Substructural sequent calculi: checking, classification and interpolant extraction."""
from .calculi import BUILTIN_NAMES, Calculus, builtin, focused_cpc, resolve
from .interpolation import (InterpolationResult, Split, interpolate, interpolate_axiom, interpolate_mc,
                            interpolate_monotone, interpolate_sc, verify_interpolation)
from .kernel import Derivation, check, lk, lk_prove, parse_proof, proof_size, serialize_proof
from .schema import classify_axiom, classify_rule, parse_rule
from .syntax import Formula, Multiset, Sequent, parse_formula, parse_sequent

__all__ = [
    "BUILTIN_NAMES", "Calculus", "Derivation", "Formula", "InterpolationResult", "Multiset", "Sequent", "Split",
    "builtin", "check", "classify_axiom", "classify_rule", "focused_cpc", "interpolate", "interpolate_axiom",
    "interpolate_mc", "interpolate_monotone", "interpolate_sc", "lk", "lk_prove", "parse_formula", "parse_proof",
    "parse_rule", "parse_sequent", "proof_size", "resolve", "serialize_proof", "verify_interpolation",
]

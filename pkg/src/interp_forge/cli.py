"""Command-line front end.  Exit codes: 0 success, 1 verification failure, 2 input error."""
from __future__ import annotations

import os
import sys
from typing import Optional

import click

from . import errors
from .calculi import Calculus, resolve
from .kernel import Derivation, check, lk_prove, parse_proof, serialize_proof
from .syntax import SList, read_one, sequent_from_sexpr


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _Fail(2, f"cannot read {path}: {e.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=not text.endswith("\n"))
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _calculus(spec: str) -> Calculus:
    return resolve(spec)


def _proof(path: str, h: Optional[Calculus] = None) -> Derivation:
    return parse_proof(_read(path), h.language if h else None)


def _sequent(text_or_path: str, language=None):
    text = _read(text_or_path) if os.path.exists(text_or_path) else text_or_path
    x = read_one(text)
    if isinstance(x, SList) and x and x[0] == "proof":
        raise _Fail(2, "expected a sequent, got a proof")
    return sequent_from_sexpr(x, language)


def _run(fn, *args, **kwargs) -> None:
    try:
        code = fn(*args, **kwargs) or 0
    except _Fail as e:
        click.echo(f"error: {e}", err=True)
        code = e.code
    except errors.CheckFailure as e:
        click.echo(f"check failed {e}", err=True)
        code = 1
    except errors.InterpForgeError as e:
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        code = e.exit_code
    sys.exit(code)


@click.group()
def main():
    """Sequent-calculus checking, rule classification and interpolant extraction."""


# ---------------------------------------------------------------- check / classify

@main.command("check")
@click.option("-c", "--calculus", "calc", required=True, help="Built-in name or calculus file.")
@click.option("-p", "--proof", "proof_path", required=True, type=click.Path())
def check_cmd(calc, proof_path):
    """Check a derivation against a calculus."""
    def go():
        h = _calculus(calc)
        check(h, _proof(proof_path, h))
        click.echo("ok")
    _run(go)


_FLAGS = ("semi-analytic", "occ-pres", "left", "right", "ctx-share", "mc-left", "mc-right", "modal", "foc-left", "foc-right",
          "PPF", "MPF")


@main.command("classify")
@click.option("-c", "--calculus", "calc", required=True)
@click.option("--rule", "rule_name", default=None, help="Only this rule or axiom.")
def classify_cmd(calc, rule_name):
    """Print the classification of every rule and axiom."""
    def go():
        from .schema import classify_axiom, classify_rule

        h = _calculus(calc)
        names = [r.name for r in h.axioms + h.rules]
        if rule_name is not None and rule_name not in names:
            raise _Fail(2, f"{h.name} has no rule {rule_name}")
        click.echo("rule\t" + "\t".join(_FLAGS))
        for r in h.rules:
            if rule_name in (None, r.name):
                c = classify_rule(r)
                vals = [c.semi_analytic, c.occurrence_preserving, c.left_semi_analytic, c.right_semi_analytic, c.context_sharing,
                        c.mc_left_semi_analytic, c.mc_right_semi_analytic, c.modal or "-", c.focused_left,
                        c.focused_right, c.ppf, c.mpf]
                click.echo(r.name + "\t" + "\t".join(_cell(v) for v in vals))
        for a in h.axioms:
            if rule_name in (None, a.name):
                c = classify_axiom(a.conclusion)
                strong = "strongly-focused" if c.strongly_focused else "not-strongly-focused"
                click.echo(f"{a.name}\taxiom\t{c.kind or 'not-focused'}\t{strong if c.kind else '-'}")
    _run(go)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ---------------------------------------------------------------- interpolation

@main.command("interpolate")
@click.option("-c", "--calculus", "calc", required=True)
@click.option("-p", "--proof", "proof_path", required=True, type=click.Path())
@click.option("--split", "split_spec", default="", help='e.g. "ant:0=S,1=L;suc:0=T,1=D"')
@click.option("--mode", type=click.Choice(["sc", "mc", "monotone"]), default=None)
@click.option("--parts", "parts_spec", default=None, help='e.g. "suc:0=1,1=2" (monotone mode)')
@click.option("-o", "--out", "out_dir", default="interpolation-out", type=click.Path())
def interpolate_cmd(calc, proof_path, split_spec, mode, parts_spec, out_dir):
    """Extract an interpolant and write it with its witness derivations."""
    def go():
        from .interpolation import interpolate, parse_split, serialize_result, verify_interpolation

        h = _calculus(calc)
        proof = _proof(proof_path, h)
        m = mode or ("monotone" if parts_spec is not None else ("sc" if h.single else "mc"))
        if m == "monotone":
            split = parse_split(parts_spec or "", proof.sequent, "monotone")
        else:
            if (m == "sc") != h.single:
                raise _Fail(2, f"mode {m} does not match the discipline of {h.name}")
            split = parse_split(split_spec, proof.sequent, m)
        res = interpolate(h, proof, split)
        rep = verify_interpolation(h, split, res)
        os.makedirs(out_dir, exist_ok=True)
        _write(os.path.join(out_dir, "result.sx"), serialize_result(res))
        _write(os.path.join(out_dir, "left.sx"), serialize_proof(res.left) + "\n")
        for j, r in enumerate(res.rights, 1):
            _write(os.path.join(out_dir, f"right-{j}.sx"), serialize_proof(r) + "\n")
        _write(os.path.join(out_dir, "report.txt"), "\n".join(rep.lines()) + "\n")
        for c in res.interpolants:
            click.echo(c.key)
        for line in rep.lines():
            click.echo(line)
        return 0 if rep.ok else 1
    _run(go)


@main.command("verify")
@click.option("-c", "--calculus", "calc", required=True)
@click.option("-d", "--dir", "out_dir", required=True, type=click.Path())
def verify_cmd(calc, out_dir):
    """Re-check a saved interpolation result."""
    def go():
        from .interpolation import parse_result, verify_interpolation

        h = _calculus(calc)
        left = _proof(os.path.join(out_dir, "left.sx"), h)
        rights = []
        j = 1
        while os.path.exists(os.path.join(out_dir, f"right-{j}.sx")):
            rights.append(_proof(os.path.join(out_dir, f"right-{j}.sx"), h))
            j += 1
        res = parse_result(_read(os.path.join(out_dir, "result.sx")), left, rights, h.language)
        rep = verify_interpolation(h, res.split, res)
        for line in rep.lines():
            click.echo(line)
        return 0 if rep.ok else 1
    _run(go)


# ---------------------------------------------------------------- LK tools

@main.command("prove-lk")
@click.option("-s", "--sequent", "seq", required=True, help="Sequent s-expression or a file holding one.")
@click.option("--depth", default=200000, show_default=True, help="Search budget in expanded nodes.")
@click.option("-o", "--out", "out_path", default=None)
def prove_lk_cmd(seq, depth, out_path):
    """Search for an LK proof."""
    def go():
        from .calculi import builtin

        s = _sequent(seq, builtin("LK").language)
        _write(out_path, serialize_proof(lk_prove(s, depth)) + "\n")
    _run(go)


@main.command("translate-lk")
@click.option("-p", "--proof", "proof_path", required=True, type=click.Path())
@click.option("--split", "split_spec", default="",
              help="S/L on antecedent (L moves), T/D on succedent (T moves); default: nothing moves.")
@click.option("-o", "--out", "out_path", default=None)
def translate_lk_cmd(proof_path, split_spec, out_path):
    """Translate an LK proof into FocusedCPC."""
    def go():
        from .calculi import builtin
        from .focusing import focused_from_split
        from .interpolation import parse_split

        proof = _proof(proof_path, builtin("LK"))
        split = parse_split(split_spec, proof.sequent, "mc", default_ant="S")
        _write(out_path, serialize_proof(focused_from_split(proof, split)) + "\n")
    _run(go)


# ---------------------------------------------------------------- generators

@main.group("gen")
def gen():
    """Benchmark sequent generators."""


@gen.command("clique-color")
@click.option("-n", type=int, required=True)
@click.option("-k", type=int, default=3, show_default=True)
@click.option("-m", type=int, default=2, show_default=True)
@click.option("-o", "--out", "out_path", default=None)
def gen_clique_color(n, k, m, out_path):
    """Clique(n,k) ⇒ ¬Color(n,m)."""
    def go():
        from .benchgen import clique_color_sequent

        _write(out_path, clique_color_sequent(n, k, m).key + "\n")
    _run(go)


@gen.command("hrubes")
@click.option("-n", type=int, required=True)
@click.option("-k", type=int, default=3, show_default=True)
@click.option("-m", type=int, default=2, show_default=True)
@click.option("-o", "--out", "out_path", default=None)
def gen_hrubes(n, k, m, out_path):
    """The transformed Clique/Color instance with two succedent formulas."""
    def go():
        from .benchgen import clique_color_hrubes

        _write(out_path, clique_color_hrubes(n, k, m).key + "\n")
    _run(go)


@gen.command("measure")
@click.option("--ns", default="3", show_default=True, help="Comma-separated values of n.")
@click.option("-k", type=int, default=3, show_default=True)
@click.option("-m", type=int, default=2, show_default=True)
@click.option("-o", "--out", "out_path", default=None)
def gen_measure(ns, k, m, out_path):
    """Proof size, interpolant size and time of the full pipeline, as TSV."""
    def go():
        from .benchgen import measure, report

        try:
            values = [int(x) for x in ns.split(",") if x.strip()]
        except ValueError:
            raise _Fail(2, f"--ns must list integers, got {ns!r}") from None
        _write(out_path, report(measure(values, k, m)))
    _run(go)


if __name__ == "__main__":
    main()

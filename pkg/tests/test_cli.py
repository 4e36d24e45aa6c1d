import os

from click.testing import CliRunner

from interp_forge.calculi import BUILTIN_NAMES, builtin, dump
from interp_forge.cli import main
from interp_forge.kernel import lk_prove, parse_proof, serialize_proof
from interp_forge.syntax import parse_sequent


def run(*args):
    return CliRunner().invoke(main, list(args))


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_ok(tmp_path, worked):
    r = run("check", "-c", "FLe", "-p", write(tmp_path, "p.sx", serialize_proof(worked)))
    assert r.exit_code == 0 and r.output.strip() == "ok"


def test_check_corrupted_is_verification_failure(tmp_path, worked):
    text = serialize_proof(worked).replace("(suc", "(suc").replace("(or p r)", "(or p q)", 1)
    r = run("check", "-c", "FLe", "-p", write(tmp_path, "p.sx", text))
    assert r.exit_code == 1 and "at root" in r.output


def test_input_errors_exit_2(tmp_path):
    assert run("check", "-c", "FLe", "-p", str(tmp_path / "missing.sx")).exit_code == 2
    r = run("check", "-c", "FLe", "-p", write(tmp_path, "p.sx", "(proof (node"))
    assert r.exit_code == 2 and "offset" in r.output
    assert run("check", "-c", "nope", "-p", write(tmp_path, "q.sx", "x")).exit_code == 2


def test_classify_builtin_and_file(tmp_path):
    r = run("classify", "-c", "FLe")
    assert r.exit_code == 0
    rows = [line.split("\t") for line in r.output.splitlines()[1:] if "\taxiom\t" not in line]
    assert rows and all(row[1] == "yes" for row in rows)
    assert not any(row[0] == "cut" for row in rows)
    path = write(tmp_path, "flE.sx", dump(builtin("FLe")))
    assert run("classify", "-c", path).output == r.output


def test_classify_single_rule():
    r = run("classify", "-c", "FocusedCPC", "--rule", "neg-r")
    assert r.exit_code == 0 and "not-strongly-focused" in r.output
    assert run("classify", "-c", "FLe", "--rule", "cut").exit_code == 2


def test_interpolate_then_verify(tmp_path, worked):
    proof = write(tmp_path, "p.sx", serialize_proof(worked))
    out = str(tmp_path / "out")
    r = run("interpolate", "-c", "FLe", "-p", proof, "--split", "ant:0=S", "-o", out)
    assert r.exit_code == 0, r.output
    assert sorted(os.listdir(out)) == ["left.sx", "report.txt", "result.sx", "right-1.sx"]
    for name in ("left.sx", "right-1.sx"):
        parse_proof(open(os.path.join(out, name)).read())
    report = open(os.path.join(out, "report.txt")).read()
    v = run("verify", "-c", "FLe", "-d", out)
    assert v.exit_code == 0 and v.output == report
    assert run("verify", "-c", "FLe", "-d", out).output == v.output


def test_interpolate_monotone(tmp_path):
    pi = lk_prove(parse_sequent("(seq ((and p q)) ((and q p)))"))
    proof = write(tmp_path, "lk.sx", serialize_proof(pi))
    focused = str(tmp_path / "f.sx")
    assert run("translate-lk", "-p", proof, "-o", focused).exit_code == 0
    out = str(tmp_path / "m")
    r = run("interpolate", "-c", "FocusedCPC", "-p", focused, "--mode", "monotone", "--parts", "suc:0=1", "-o", out)
    assert r.exit_code == 0, r.output
    assert run("verify", "-c", "FocusedCPC", "-d", out).exit_code == 0


def test_interpolate_mode_mismatch(tmp_path, worked):
    proof = write(tmp_path, "p.sx", serialize_proof(worked))
    assert run("interpolate", "-c", "FLe", "-p", proof, "--mode", "mc", "-o", str(tmp_path / "o")).exit_code == 2


def test_prove_and_translate(tmp_path):
    r = run("prove-lk", "-s", "(seq () ((or p (not p))))", "--depth", "1000")
    assert r.exit_code == 0
    proof = write(tmp_path, "lk.sx", r.output)
    t = run("translate-lk", "-p", proof, "--split", "suc:0=T")
    assert t.exit_code == 0
    assert parse_proof(t.output).sequent == parse_sequent("(seq ((not (or p (not p)))) ())")
    assert run("prove-lk", "-s", "(seq (p) (q))").exit_code == 1


def test_gen(tmp_path):
    out = str(tmp_path / "seq.sx")
    assert run("gen", "clique-color", "-n", "4", "-k", "3", "-m", "2", "-o", out).exit_code == 0
    parse_sequent(open(out).read())
    h = run("gen", "hrubes", "-n", "3")
    assert h.exit_code == 0 and parse_sequent(h.output).suc.items
    assert run("gen", "clique-color", "-n", "2", "-k", "3").exit_code == 2


def test_every_builtin_classifies():
    for name in BUILTIN_NAMES:
        assert run("classify", "-c", name).exit_code == 0

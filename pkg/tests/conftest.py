import pytest

from interp_forge.builders import Builder
from interp_forge.calculi import builtin
from interp_forge.syntax import parse_formula


def F(text):
    return parse_formula(text)


@pytest.fixture
def fle():
    return builtin("FLe")


@pytest.fixture
def worked(fle):
    # p⇒p; L∧ to p∧q⇒p; R∨ to p∧q⇒p∨r
    b = Builder(fle)
    p, q, r = F("p"), F("q"), F("r")
    n1 = b.ident(p)
    n2 = b.apply("Land1", [n1], phi=p, psi=q)
    return b.apply("Ror1", [n2], phi=p, psi=r)


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n = mark.args[0]
    detail = dict(item.user_properties).get("detail", "")
    ok = call.excinfo is None
    prev = _CRITERIA.get(n)
    _CRITERIA[n] = (ok and (prev is None or prev[0]), detail if prev is None else f"{prev[1]}; {detail}".strip("; "))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")

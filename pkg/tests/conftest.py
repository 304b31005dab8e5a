from pathlib import Path

import pytest

from gva.dsl import parse_automaton

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_automaton((FIXTURES / name).read_text())


@pytest.fixture
def a1():
    return load("a1.gva")


@pytest.fixture
def a2():
    return load("a2.gva")


CRITERIA = {}


@pytest.fixture
def report():
    """Record (and print) one acceptance verdict line."""
    def _report(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        CRITERIA[number] = line
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA.values():
            terminalreporter.write_line(line)

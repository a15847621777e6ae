import json
from pathlib import Path

import pytest

from amaut.compiler import compile_all
from amaut.seedlex import load_seed

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def seed():
    return load_seed()


@pytest.fixture(scope="session")
def compiled(seed):
    lex, roots = seed
    return compile_all(lex, roots)


@pytest.fixture(scope="session")
def golden_analyses():
    return json.loads((FIXTURES / "golden_analyses.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def golden_words():
    return json.loads((FIXTURES / "golden_words.json").read_text(encoding="utf-8"))


# one line per acceptance criterion, printed after the run
CRITERIA = {}


def record(number, ok, detail):
    CRITERIA[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(CRITERIA[number])
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])

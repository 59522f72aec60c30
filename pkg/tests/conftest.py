import functools

import hypothesis
import pytest

from paley_clique import runner

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=64)
def paley_graph(q):
    """(spec, chi, graph) for q, shared across tests."""
    return runner.build_all(q)


@pytest.fixture
def graph():
    return lambda q: paley_graph(q)[2]


def legendre(a, p):
    """Euler's criterion on plain ints; independent of the package tables."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")

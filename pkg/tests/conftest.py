from __future__ import annotations

import pytest

from possmerge import Vocabulary, atoms, kb
from possmerge.possibilistic import Profile

p1, p2, p3, p4 = atoms("p1", "p2", "p3", "p4")
V4 = Vocabulary(("p1", "p2", "p3", "p4"))

# four bases over p1..p4 with constraint (!p1 | p2) & p3
B1 = kb((p1 | p2, "0.9"), (p3, "0.9"), (p1, "0.6"), (p2, "0.6"), name="B1")
B2 = kb((p3 | p4, "0.9"), (~p1, "0.6"), (p2, "0.6"), name="B2")
B3 = kb((p3, "0.9"), (p2, "0.6"), name="B3")
B4 = kb((p1, "0.9"), (p2, "0.8"), (~p3, "0.6"), name="B4")
MU = (~p1 | p2) & p3

# the drowning-effect comparison
D_MU = p1 | p2
D1 = kb((~p2, "0.8"), (p4, "0.6"), name="B1")
D2 = kb((p2, "0.9"), (p1, "0.8"), (p3, "0.6"), name="B2")


@pytest.fixture
def four_bases():
    return Profile([B1, B2, B3, B4]), MU, V4


@pytest.fixture
def drowning():
    return Profile([D1, D2]), D_MU, V4


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)

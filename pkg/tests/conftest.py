import sys

import pytest

from fbgraph.msa import MSA

MSA_A_ROWS = ["ACGT", "AGGT"]
MSA_B_ROWS = ["ACCATT", "ACGATG", "AGCATG", "AGGATT"]


@pytest.fixture
def msa_a():
    return MSA.from_rows(MSA_A_ROWS)


@pytest.fixture
def msa_b():
    return MSA.from_rows(MSA_B_ROWS)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import pytest

from triposkit.lattice import booleans, three_chain
from triposkit.pertopos import build_F
from triposkit.tripos import FamTripos

ACCEPTANCE: dict = {}


def record(n: int, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[n] = (passed, detail)
    print(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def B():
    return booleans()


@pytest.fixture(scope="session")
def C3():
    return three_chain()


@pytest.fixture(scope="session")
def TB(B):
    return FamTripos(B)


@pytest.fixture(scope="session")
def T3(C3):
    return FamTripos(C3)


@pytest.fixture(scope="session")
def HB(TB):
    return build_F(TB)


@pytest.fixture(scope="session")
def H3(T3):
    return build_F(T3)

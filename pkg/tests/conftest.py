import pytest

from chargedcodes.substitution import Substitution, factor_language

FIB = "a->ab; b->a"
THUE_MORSE = "a->ab; b->ba"
S012 = "0->012; 1->0122; 2->0121012"
S0001 = "0->01; 1->0001"
PERIODIC = "a->ab; b->ab"


@pytest.fixture(scope="session")
def fib():
    return Substitution.parse(FIB)


@pytest.fixture(scope="session")
def thue_morse():
    return Substitution.parse(THUE_MORSE)


@pytest.fixture(scope="session")
def s012():
    return Substitution.parse(S012)


@pytest.fixture(scope="session")
def s0001():
    return Substitution.parse(S0001)


@pytest.fixture(scope="session")
def fib_F(fib):
    return factor_language(fib, 20)


@pytest.fixture(scope="session")
def tm_F(thue_morse):
    return factor_language(thue_morse, 20)


@pytest.fixture(scope="session")
def F012(s012):
    return factor_language(s012, 40)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

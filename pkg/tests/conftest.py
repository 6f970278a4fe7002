import pytest

from amalgam.presentation import parse_params

ACCEPTANCE = []


@pytest.fixture
def sl2():
    return parse_params(4, 6, 2)


@pytest.fixture
def psl2():
    return parse_params(2, 3, 1)


@pytest.fixture(params=[(4, 6, 2), (2, 3, 1), (6, 9, 3), (8, 12, 4), (6, 4, 2), (3, 5, 1)],
                ids=lambda p: "m%d_n%d_d%d" % p)
def params(request):
    return parse_params(*request.param)


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""
    def record(number, title, passed, detail=""):
        ACCEPTANCE.append((number, title, passed, detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        line = f"[{'PASS' if passed else 'FAIL'}] {number}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)

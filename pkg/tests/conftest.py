import pytest

from xcodes import BitColumn, Triple, XCode

# the 4 x 6 example matrix, row by row
WORKED_H_ROWS = [
    "100110",
    "110001",
    "011100",
    "001011",
]

# Fano plane on points 1..7, shifted to 0-indexing
FANO = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]


def worked_h(d=1, x=1) -> XCode:
    m, n = len(WORKED_H_ROWS), len(WORKED_H_ROWS[0])
    cols = [BitColumn.from_bits([int(WORKED_H_ROWS[i][j]) for i in range(m)]) for j in range(n)]
    return XCode(m, d, x, tuple(cols))


def fano(d=1, x=2) -> XCode:
    return XCode(7, d, x, tuple(Triple(p - 1 for p in b) for b in FANO))


@pytest.fixture
def worked_code():
    return worked_h()


@pytest.fixture
def fano_code():
    return fano()


# acceptance summary: one line per criterion, printed even without -s
_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if crit:
        number, title = crit
        _ACCEPTANCE[number] = (title, "PASS" if report.passed else "FAIL")


@pytest.fixture(autouse=True)
def _criterion_property(request):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        request.node.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {outcome}  {title}")

import pytest
from hypothesis import settings

from idemldpc.construct import build_code

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EXAMPLE1_LEADERS = [(5, 23), (7, 0), (9, 0)]
EXAMPLE1_U = "b23*x^5+x^7+x^9+b46*x^10+b43*x^13+x^14+x^15+b53*x^17+x^18+b58*x^19+b29*x^20"
ROW_255 = (
    "b1*x^7+b2*x^14+b1*x^28+b2*x^56+x^111+b1*x^112+x^123+b2*x^131+x^183+x^189+b1*x^193"
    "+x^219+x^222+b2*x^224+x^237+x^246"
)

# criterion number -> (passed, title, seconds, detail)
ACCEPTANCE: dict[int, tuple[bool, str, float, str]] = {}


@pytest.fixture(scope="session")
def example1():
    return build_code(21, 6, EXAMPLE1_LEADERS)


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, secs, detail = ACCEPTANCE[num]
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)

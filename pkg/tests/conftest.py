import pytest

from polycap.geometry import (
    PolycircularCondenser,
    make_circle,
    make_lens,
    unit_disk_condenser,
)

# (criterion id, passed, detail) lines collected by the acceptance suite
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(ACCEPTANCE_LINES, key=lambda x: int(x[0])):
        status = "EXCLUDED" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"criterion {cid:>2}: {status}  {detail}")


@pytest.fixture
def annulus():
    return PolycircularCondenser(make_circle(0j, 1.0), (make_circle(0j, 0.7, ccw=False),), 0.85, (0j,))


@pytest.fixture
def lens_condenser():
    return unit_disk_condenser([make_lens(0.8, 0.3)], alpha=0.9j, alpha_k=[0j])

import pytest

from fomod.graph import all_graphs

# acceptance test outcomes, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(ACCEPTANCE[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


def graphs_up_to(n_max: int):
    for n in range(n_max + 1):
        yield from all_graphs(n)


@pytest.fixture
def record_acceptance():
    return record

"""Collects acceptance verdicts and prints them after the run."""

VERDICTS: dict[str, str] = {}


def record(criterion: str, passed: bool, detail: str) -> None:
    VERDICTS[criterion] = f"{criterion}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[key])

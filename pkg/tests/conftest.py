"""Emit one pass/fail line per acceptance criterion after the run."""

_CRITERIA = {}  # nodeid -> (criterion label, outcome)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if name.startswith("test_criterion_"):
        _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    def number(name):
        return int(name.removeprefix("test_criterion_").split("_", 1)[0])
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name in sorted(_CRITERIA, key=number):
        outcome = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"  criterion {number(name)}: {outcome}")

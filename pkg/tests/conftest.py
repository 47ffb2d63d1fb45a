# filled by test_acceptance.criterion(); printed after the run
CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status, title, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}  ({detail})")

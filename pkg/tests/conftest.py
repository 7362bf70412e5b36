"""Collects the acceptance verdicts and prints one line per criterion at the end of the run."""

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {detail}")

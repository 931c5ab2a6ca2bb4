def pytest_terminal_summary(terminalreporter):
    """Replay the acceptance PASS/FAIL line past output capture."""
    try:
        from test_acceptance_plotkit import REPORT_LINES
    except ImportError:
        return
    if REPORT_LINES:
        terminalreporter.section("plotkit acceptance")
        for line in REPORT_LINES:
            terminalreporter.write_line(line)

def pytest_terminal_summary(terminalreporter):
    """Echo the one-line-per-criterion acceptance ledger past output capture."""
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(test_acceptance.LINES):
        terminalreporter.write_line(line)

ACCEPTANCE_LINES: list[str] = []
ACCEPTANCE_TABLES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES and not ACCEPTANCE_TABLES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    for table in ACCEPTANCE_TABLES:
        terminalreporter.write_line("")
        terminalreporter.write_line(table)

def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (title, ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"{key:<5} {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")

import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One visible pass/fail line per acceptance criterion."""
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call" or item.fspath.basename != "test_acceptance.py":
        return
    tw = item.config.pluginmanager.get_plugin("terminalreporter")
    if tw is not None:
        status = "PASS" if rep.passed else "FAIL"
        tw.write_line(f"[{status}] {item.name}")

import pytest

# criterion number -> list of (test name, outcome)
_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            state = "xfail"
        else:
            state = rep.outcome
        _CRITERIA.setdefault(mark.args[0], []).append((item.name, state))


def criterion_lines() -> list[str]:
    lines = []
    for n in sorted(_CRITERIA):
        results = _CRITERIA[n]
        bad = [name for name, state in results if state != "passed"]
        status = "PASS" if not bad else "FAIL"
        detail = f"{len(results) - len(bad)}/{len(results)} checks passed"
        if bad:
            detail += "; unmet: " + ", ".join(bad)
        lines.append(f"criterion {n}: {status} ({detail})")
    return lines


def pytest_terminal_summary(terminalreporter):
    lines = criterion_lines()
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)

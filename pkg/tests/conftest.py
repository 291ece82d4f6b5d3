import pytest

ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the outcome is printed in the terminal summary."""
    entry = {"name": None, "detail": "", "passed": False}
    ACCEPTANCE_RESULTS.append(entry)

    def record(name, detail=""):
        entry["name"] = name
        entry["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    entry["passed"] = bool(rep and rep.passed)
    if entry["name"] is None:
        entry["name"] = request.node.name


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for e in ACCEPTANCE_RESULTS:
        status = "PASS" if e["passed"] else "FAIL"
        line = f"[{status}] {e['name']}"
        if e["detail"]:
            line += f"  ({e['detail']})"
        terminalreporter.write_line(line)

import pytest

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, description), then detail."""

    state = {}

    def start(number, text):
        state["key"] = number
        state["text"] = text
        state["detail"] = ""

    def detail(msg):
        state["detail"] = msg

    start.detail = detail
    yield start
    if "key" in state:
        failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
        verdict = "FAIL" if failed else "PASS"
        ACCEPTANCE_LINES[state["key"]] = f"criterion {state['key']}: {verdict}  {state['text']}  {state['detail']}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])

import pytest

from cliffbn.clifford import two_qubit_groups

_CRITERIA: list[tuple[str, str, str]] = []


@pytest.fixture(scope="session")
def c2():
    return two_qubit_groups()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    props = dict(item.user_properties)
    if "criterion" not in props:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        status = "PASS" if rep.passed else "FAIL"
        _CRITERIA.append((status, props["criterion"], str(props.get("detail", ""))))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in _CRITERIA:
        terminalreporter.write_line(f"{status} {name}: {detail}")

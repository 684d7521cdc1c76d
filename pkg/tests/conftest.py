import pytest

CRITERIA = {
    "test_criterion_1_quadrature_exactness": "1 quadrature exactness",
    "test_criterion_2_gauss_identity": "2 Gauss identity oracle",
    "test_criterion_3_error_table": "3 published error table",
    "test_criterion_4_critical_angles": "4 critical angles",
    "test_criterion_5_fredholm_scan": "5 Fredholm scan",
    "test_criterion_6_local_operator": "6 local operator cross-validation",
    "test_criterion_7_mellin_transform": "7 Mellin transform consistency",
    "test_criterion_8_determinism": "8 determinism across worker counts",
}

_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.name in CRITERIA and (report.when == "call" or report.outcome != "passed"):
        _outcomes.setdefault(item.name, report.outcome)
        if report.outcome != "passed":
            _outcomes[item.name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        if name in _outcomes:
            status = "PASS" if _outcomes[name] == "passed" else "FAIL"
            terminalreporter.write_line(f"{status}  criterion {label}")

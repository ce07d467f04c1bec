import pytest
from hypothesis import strategies as st

from unitri.polycore import Poly

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and report.outcome != "failed":
        return
    num = getattr(report, "criterion_num", None)
    if num is None:
        return
    outcome = "PASS" if report.passed else "FAIL"
    elapsed = dict(report.user_properties).get("elapsed")
    prev = _criteria.get(num)
    if prev is None or prev[0] == "PASS":
        _criteria[num] = (outcome, report.criterion_title, elapsed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion_num, rep.criterion_title = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        outcome, title, elapsed = _criteria[num]
        took = f" ({elapsed:.2f}s)" if elapsed is not None else ""
        terminalreporter.write_line(f"criterion {num:2d} {outcome}{took}  {title}")


def polys(max_degree=6, lo=-20, hi=20):
    return st.lists(st.integers(lo, hi), max_size=max_degree + 1).map(Poly)


def windowed(max_n=8, lo=-20, hi=20):
    """(p, n) with deg p <= n."""
    return st.integers(0, max_n).flatmap(
        lambda n: st.tuples(st.lists(st.integers(lo, hi), max_size=n + 1).map(Poly), st.just(n)))

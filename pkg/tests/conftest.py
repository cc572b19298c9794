import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from clonoids.boolfn import BoolFn

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def boolfns(min_arity=1, max_arity=3):
    """Strategy for Boolean functions of bounded arity."""
    return st.integers(min_arity, max_arity).flatmap(
        lambda n: st.integers(0, (1 << (1 << n)) - 1).map(lambda t: BoolFn(n, t)))


@pytest.fixture(autouse=True)
def _no_env_cap(monkeypatch):
    monkeypatch.delenv("CLONOID_CAP", raising=False)


@pytest.fixture
def cap():
    return 3


_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True, "notes": []})
    if rep.when == "setup" and not rep.failed:
        return
    if rep.failed or hasattr(rep, "wasxfail"):
        entry["ok"] = False
        entry["notes"].append(item.name + (f" (known defect: {rep.wasxfail})" if hasattr(rep, "wasxfail") else ""))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if e['ok'] else 'FAIL'} criterion {n}: {e['title']}")
        for note in e["notes"]:
            terminalreporter.write_line(f"     failing: {note}")

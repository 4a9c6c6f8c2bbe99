import numpy as np
import pytest

from debruijn_process.graph import TransitionSpec
from debruijn_process.presets import preset

_ACCEPTANCE = {}


@pytest.fixture
def dbp():
    return {k: preset(f"dbp{k}") for k in range(1, 5)}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_spec(rng, m, low=0.05, high=0.95):
    return TransitionSpec(m, rng.uniform(low, high, 2**m))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
    _ACCEPTANCE[number] = ("PASS" if report.passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, detail = _ACCEPTANCE[number]
        line = f"criterion {number:>2}: {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)

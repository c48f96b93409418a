import numpy as np
import pytest

from nlmagic.experiments import haar_state

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and report.outcome == "passed":
        return
    props = dict(report.user_properties)
    if "acceptance" in props:
        number, title = props["acceptance"]
        _acceptance[number] = (title, report.outcome, report.duration)


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        item.user_properties.append(("acceptance", marker.args))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, outcome, duration = _acceptance[number]
        tag = "PASS" if outcome == "passed" else "FAIL"
        tr.write_line(f"[{tag}] {number:>2}. {title} ({duration:.1f}s)")
    passed = sum(o == "passed" for _, o, _ in _acceptance.values())
    tr.write_line(f"{passed}/{len(_acceptance)} acceptance criteria passed")


@pytest.fixture
def random_state():
    def make(L, index=0, seed=1234):
        return haar_state(seed, L, index)
    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from dsgraphoid.examples import fixture  # noqa: E402
from dsgraphoid.frame import build_frame  # noqa: E402
from dsgraphoid.massfun import MassFunction  # noqa: E402

settings.register_profile("repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def xy():
    return build_frame([("X", ("x1", "x2")), ("Y", ("y1", "y2"))])


@pytest.fixture
def xyz():
    return build_frame([("X", ("x1", "x2")), ("Y", ("y1", "y2")), ("Z", ("z1", "z2"))])


@pytest.fixture
def load():
    return fixture


def to_sets(m: MassFunction):
    """Focal map keyed by frozensets of label tuples, for the naive oracles."""
    return {frozenset(ev.labels()): v for ev, v in m.items()}


def domains(frame):
    return [(v.name, v.domain) for v in frame.variables]


def from_sets(frame, masses, mode=None):
    kwargs = {} if mode is None else {"mode": mode}
    return MassFunction(frame, {frozenset(k): Fraction(v) for k, v in masses.items()}, **kwargs)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from roadnet3d.network import build_network
from roadnet3d.synthetic import cross, star_junction


def circle_points(radius, n, a0=0.0, a1=np.pi / 2, center=(0.0, 0.0)):
    t = np.linspace(a0, a1, n)
    return np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])


@pytest.fixture(scope="session")
def cross_net():
    return build_network(cross())


@pytest.fixture(scope="session")
def y_net():
    return build_network(star_junction([90, 210, 330]))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])

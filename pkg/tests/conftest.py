import pytest

from bbnet import kernels
from bbnet.model import Network
from bbnet.storage import load_fixture

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


@pytest.fixture
def employee():
    return load_fixture("employee")


@pytest.fixture
def equipment():
    return load_fixture("equipment")


@pytest.fixture
def chain():
    """f1 -r1-> f2 -r2-> f3, all facts false."""
    net = Network()
    f1, f2, f3 = (net.add_fact(f"f{i}", False) for i in (1, 2, 3))
    r1 = net.add_rule([(f1, True)], [(f2, True)])
    r2 = net.add_rule([(f2, True)], [(f3, True)])
    return net, (f1, f2, f3), (r1, r2)


@pytest.fixture
def acceptance_log(request):
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])
    return lines.append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

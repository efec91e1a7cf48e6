import networkx as nx
import pytest

from curvekit import zoo


@pytest.fixture(scope="session")
def sixteen_cell():
    return zoo.get("cross4").complex


@pytest.fixture(scope="session")
def octahedron():
    return zoo.get("octahedron").complex


@pytest.fixture(scope="session")
def bundled_complexes():
    return {name: zoo.bundled(name).complex for name in zoo.BUNDLED}


@pytest.fixture
def two_triangles_bridge():
    from curvekit import generate_closure

    return generate_closure([[1, 2, 3], [3, 4, 5], [2, 4]])


def random_graph(n, m, seed):
    return nx.gnm_random_graph(n, m, seed=seed)


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under the test's docstring label."""
    label = request.node.function.__doc__.strip().splitlines()[0]
    detail = {}
    yield detail
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    ACCEPTANCE_RESULTS[label] = (not failed, detail.get("msg", ""))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def _criterion_key(label):
    head = label.split()[0]
    digits = "".join(ch for ch in head if ch.isdigit())
    return int(digits), head


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=_criterion_key):
        ok, msg = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {msg}".rstrip())

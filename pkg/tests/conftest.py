import pytest
from hypothesis import HealthCheck, settings, strategies as st

from etlpr.fixtures import fixture
from etlpr.frames import Frame, build_frame

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=60,
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def fig1a():
    return fixture("fig1a")


@pytest.fixture(scope="session")
def fig1b():
    return fixture("fig1b")


@pytest.fixture(scope="session")
def fig3a():
    return fixture("fig3a")


@pytest.fixture(scope="session")
def fig3b():
    return fixture("fig3b")


@pytest.fixture(scope="session")
def fig3c():
    return fixture("fig3c")


@pytest.fixture(scope="session")
def fig3d():
    return fixture("fig3d")


@pytest.fixture(scope="session")
def fig4a():
    return fixture("fig4a")


@pytest.fixture(scope="session")
def fig4b():
    return fixture("fig4b")


def _all_seqs(n_events, depth):
    seqs = [()]
    frontier = [()]
    for _ in range(depth):
        frontier = [s + (e,) for s in frontier for e in range(n_events)]
        seqs.extend(frontier)
    return seqs


@st.composite
def frames(draw, max_events=3, max_depth=2, max_trees=2, min_events=1):
    """Random small frames: prefix-closed protocols plus arbitrary pairs."""
    n_events = draw(st.integers(min_events, max_events))
    n_trees = draw(st.integers(1, max_trees))
    event_names = [f"e{i + 1}" for i in range(n_events)]
    trees = []
    for t in range(n_trees):
        pool = _all_seqs(n_events, max_depth)
        chosen = set(draw(st.lists(st.sampled_from(pool), max_size=4)))
        closed = {()}
        for seq in chosen:
            for i in range(len(seq) + 1):
                closed.add(seq[:i])
        paths = [".".join(event_names[e] for e in seq) for seq in sorted(closed)]
        trees.append((f"r{t + 1}", paths))
    skeleton = build_frame(event_names, trees, ())
    n = skeleton.n_histories
    pairs = draw(
        st.sets(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=min(10, n * n),
        )
    )
    return Frame(skeleton.events, skeleton.root_names, skeleton.histories, frozenset(pairs))

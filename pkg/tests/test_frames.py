import pytest
from hypothesis import given

from etlpr.errors import (
    DuplicateEvent,
    DuplicateRoot,
    NotPrefixClosed,
    UnknownEvent,
    UnknownHistory,
)
from etlpr.frames import ACCESS, LEADSTO, LEADSTO_STAR, build_frame

from conftest import frames


def ids(frame, *refs):
    return frozenset(frame.resolve(r) for r in refs)


class TestBuildFrame:
    def test_minimal_tree(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [])
        assert frame.n_histories == 2
        assert {frame.label(h) for h in range(2)} == {"ε", "e1"}

    def test_fig1a_shape(self, fig1a):
        assert fig1a.n_histories == 5
        assert fig1a.image(fig1a.resolve("e1"), ACCESS) == ids(fig1a, "", "e1")
        assert len(fig1a.access) == 2 * 2 + 3 * 3

    def test_duplicate_event(self):
        with pytest.raises(DuplicateEvent):
            build_frame(["e1", "e1"], [("r1", [""])], [])

    def test_missing_prefix(self):
        with pytest.raises(NotPrefixClosed):
            build_frame(["e1", "e2"], [("r1", ["", "e1.e2"])], [])

    def test_missing_root(self):
        with pytest.raises(NotPrefixClosed):
            build_frame(["e1"], [("r1", ["e1"])], [])

    def test_empty_tree_rejected(self):
        with pytest.raises(NotPrefixClosed):
            build_frame(["e1"], [("r1", [])], [])

    def test_duplicate_root(self):
        with pytest.raises(DuplicateRoot):
            build_frame(["e1"], [("r1", [""]), ("r1", [""])], [])

    def test_access_unknown_history(self):
        with pytest.raises(UnknownHistory):
            build_frame(["e1"], [("r1", ["", "e1"])], [("e1", "e1.e1")])

    def test_unknown_event_in_history(self):
        with pytest.raises(UnknownEvent):
            build_frame(["e1"], [("r1", ["", "e9"])], [])

    def test_events_canonicalized(self):
        frame = build_frame(["e2", "e1"], [("r1", ["", "e1", "e2"])], [])
        assert [e.name for e in frame.events] == ["e1", "e2"]

    def test_symmetric_flag(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [("", "e1")], symmetric=True)
        a, b = frame.resolve(""), frame.resolve("e1")
        assert frame.access == {(a, b), (b, a)}


class TestExtend:
    def test_root_extension(self, fig1a):
        assert fig1a.extend(fig1a.resolve(""), "e1") == fig1a.resolve("e1")

    def test_leaf_has_no_children(self, fig1a):
        assert fig1a.extend(fig1a.resolve("e1.e3"), "e1") is None

    def test_event_off_protocol(self):
        frame = build_frame(["e1", "e2"], [("r1", ["", "e1"])], [])
        assert frame.extend(frame.resolve(""), "e2") is None

    def test_unknown_event_name(self, fig1a):
        with pytest.raises(UnknownEvent):
            fig1a.extend(0, "e9")


class TestIsPrefix:
    def test_root_prefixes_all(self, fig1a):
        root = fig1a.resolve("")
        assert all(fig1a.is_prefix(root, h) for h in range(fig1a.n_histories))

    def test_sibling_branches(self, fig1a):
        assert not fig1a.is_prefix(fig1a.resolve("e1"), fig1a.resolve("e2.e3"))

    def test_reflexive(self, fig1a):
        assert all(fig1a.is_prefix(h, h) for h in range(fig1a.n_histories))

    def test_cross_tree_never(self, fig1b):
        r1, r2 = sorted(fig1b.roots)
        assert not fig1b.is_prefix(r1, r2)


class TestImage:
    def test_access_image(self, fig1a):
        assert fig1a.image(fig1a.resolve("e1"), ACCESS) == ids(fig1a, "", "e1")

    def test_leaf_leadsto_empty(self, fig1a):
        assert fig1a.image(fig1a.resolve("e1.e3"), LEADSTO) == frozenset()

    def test_leadsto_star_from_root_covers_tree(self, fig1a):
        assert fig1a.image(fig1a.resolve(""), LEADSTO_STAR) == frozenset(
            range(fig1a.n_histories)
        )

    def test_image_set_children_union(self, fig1a):
        # brute-force oracle: a child of the set is any history whose parent
        # is a member
        members = ids(fig1a, "", "e1")
        oracle = frozenset(
            h for h in range(fig1a.n_histories) if fig1a.parent[h] in members
        )
        assert oracle == ids(fig1a, "e1", "e2", "e1.e3")
        assert fig1a.image_set(members, LEADSTO) == oracle

    def test_image_set_empty(self, fig1a):
        assert fig1a.image_set(frozenset(), ACCESS) == frozenset()

    def test_image_set_star_subtree(self, fig1a):
        assert fig1a.image_set(ids(fig1a, "e2"), LEADSTO_STAR) == ids(
            fig1a, "e2", "e2.e3"
        )

    def test_bad_selector(self, fig1a):
        with pytest.raises(ValueError):
            fig1a.image(0, "sideways")


class TestRoots:
    def test_tree_has_single_root(self, fig1a):
        assert fig1a.roots == {fig1a.resolve("")}

    def test_forest_roots(self, fig1b):
        assert {fig1b.label(h) for h in fig1b.roots} == {"r1", "r2"}

    def test_three_roots(self, fig4b):
        assert len(fig4b.roots) == 3


class TestNaming:
    def test_single_tree_labels(self, fig1a):
        assert fig1a.label(fig1a.resolve("")) == "ε"
        assert fig1a.label(fig1a.resolve("e1.e3")) == "e1.e3"

    def test_forest_labels(self, fig4a):
        assert fig4a.label(fig4a.resolve("r2")) == "r2"
        assert fig4a.label(fig4a.resolve("r1:e1")) == "r1:e1"

    def test_resolve_rejects_bare_path_on_forest(self, fig4a):
        with pytest.raises(UnknownHistory):
            fig4a.resolve("e1")


@given(frames())
def test_extension_is_one_longer_prefix(frame):
    for h in range(frame.n_histories):
        for e in frame.events:
            child = frame.extend(h, e)
            if child is not None:
                assert frame.is_prefix(h, child)
                assert frame.length[child] == frame.length[h] + 1


@given(frames())
def test_leadsto_star_is_least_fixpoint(frame):
    for h in range(frame.n_histories):
        reach = frozenset([h])
        while True:
            bigger = reach | frame.image_set(reach, LEADSTO)
            if bigger == reach:
                break
            reach = bigger
        assert frame.image(h, LEADSTO_STAR) == reach


@given(frames())
def test_refs_round_trip(frame):
    for h in range(frame.n_histories):
        assert frame.resolve(frame.ref(h)) == h


@given(frames())
def test_validate_accepts_generated_frames(frame):
    frame.validate()

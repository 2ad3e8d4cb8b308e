import pytest
from hypothesis import given

from etlpr.errors import PreconditionViolated
from etlpr.fixtures import fixture
from etlpr.frames import build_frame, replace_access
from etlpr.relations import (
    closure_is_symmetric_reflexive_only,
    initially_synchronous,
    is_introspective,
    is_s5,
    is_synchronous,
    persistent_insanity,
    relation_report,
    s5_closure,
    symmetric_reflexive_closure,
)

from conftest import frames


def brute_equivalence_closure(frame):
    """Independent oracle: saturate under reflexivity, symmetry and
    transitivity pair by pair."""
    pairs = set(frame.access)
    pairs |= {(h, h) for h in range(frame.n_histories)}
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            if (b, a) not in pairs:
                pairs.add((b, a))
                changed = True
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    return frozenset(pairs)


class TestRelationReport:
    def test_fig1a_is_asynchronous_equivalence(self, fig1a):
        r = relation_report(fig1a)
        assert r.reflexive and r.symmetric and r.transitive and r.euclidean
        assert r.serial
        assert not r.synchronous
        a, b = r.witnesses["synchronous"]
        assert fig1a.length[a] != fig1a.length[b]

    def test_fig3b_transitivity_witness(self, fig3b):
        r = relation_report(fig3b)
        assert not r.transitive
        assert [fig3b.label(h) for h in r.witnesses["transitive"]] == ["e1", "e2", "e3"]

    def test_empty_relation_vacuous(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [])
        r = relation_report(frame)
        assert r.symmetric and r.transitive and r.euclidean and r.synchronous
        assert not r.reflexive and "reflexive" in r.witnesses
        assert not r.serial

    def test_witness_iff_flag_false(self, fig3a):
        r = relation_report(fig3a)
        for flag in r.FLAGS:
            assert (flag in r.witnesses) == (not r.flag(flag))


class TestS5AndIntrospective:
    def test_fig1a_is_s5(self, fig1a):
        assert is_s5(fig1a)

    def test_fig3a_not_s5_but_introspective(self, fig3a):
        assert not is_s5(fig3a)
        assert is_introspective(fig3a)

    def test_full_relation_is_s5(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [])
        full = replace_access(frame, {(a, b) for a in range(2) for b in range(2)})
        assert is_s5(full)

    def test_fig4a_introspective(self, fig4a):
        assert is_introspective(fig4a)

    def test_fig3c_not_euclidean(self, fig3c):
        assert not relation_report(fig3c).euclidean
        assert not is_introspective(fig3c)

    def test_identity_relation_introspective(self, fig3b):
        ident = replace_access(fig3b, {(h, h) for h in range(fig3b.n_histories)})
        assert is_introspective(ident)


class TestS5Closure:
    def test_empty_relation_closes_to_identity(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [])
        closed = s5_closure(frame)
        assert closed.access == {(0, 0), (1, 1)}

    def test_fig3b_closure_classes(self, fig3b):
        closed = s5_closure(fig3b)
        assert closed.access == brute_equivalence_closure(fig3b)
        root = fig3b.resolve("")
        leaves = {fig3b.resolve(p) for p in ("e1", "e2", "e3")}
        assert closed.access_rows[root] == {root}
        for leaf in leaves:
            assert closed.access_rows[leaf] == leaves

    def test_closure_of_s5_frame_is_identity_operation(self, fig1a):
        assert s5_closure(fig1a).access == fig1a.access

    def test_fixpoint_and_monotone(self, fig3d):
        once = s5_closure(fig3d)
        assert fig3d.access <= once.access
        assert s5_closure(once).access == once.access


class TestClosureShortcut:
    def test_requires_introspective(self, fig3b):
        with pytest.raises(PreconditionViolated):
            closure_is_symmetric_reflexive_only(fig3b)

    def test_identity_already_closed(self, fig3b):
        ident = replace_access(fig3b, {(h, h) for h in range(fig3b.n_histories)})
        assert closure_is_symmetric_reflexive_only(ident)

    def test_two_accessors_of_one_cluster_break_the_shortcut(self):
        # e1 and e2 both access the root's singleton cluster; the closure
        # must relate e1 and e2, the symmetric-reflexive closure cannot.
        # This refutes the shortcut on introspective (even KD45) frames.
        frame = build_frame(
            ["e1", "e2"],
            [("r1", ["", "e1", "e2"])],
            [("e1", ""), ("e2", ""), ("", "")],
        )
        assert is_introspective(frame)
        assert relation_report(frame).serial
        assert not closure_is_symmetric_reflexive_only(frame)
        e1, e2 = frame.resolve("e1"), frame.resolve("e2")
        assert (e1, e2) in s5_closure(frame).access
        assert (e1, e2) not in symmetric_reflexive_closure(frame).access


class TestPersistentInsanity:
    def test_serial_frame_vacuously_persistent(self, fig1a):
        assert persistent_insanity(fig1a)

    def test_fig3a_with_sanity_removed(self, fig3a):
        pairs = set(fig3a.access)
        e1, e2 = fig3a.resolve("e1"), fig3a.resolve("e2")
        pairs.discard((e2, e1))
        pairs.discard((e1, e1))
        trimmed = replace_access(fig3a, pairs)
        assert not persistent_insanity(trimmed)

    def test_single_node_empty_relation(self):
        frame = build_frame(["e1"], [("r1", [""])], [])
        assert persistent_insanity(frame)


class TestInitiallySynchronous:
    def test_root_loop_tree(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [("", "e1"), ("", "")])
        assert initially_synchronous(frame)

    def test_root_access_without_loop_fails(self):
        frame = build_frame(["e1"], [("r1", ["", "e1"])], [("", "e1")])
        assert not initially_synchronous(frame)

    def test_fig4a_fails(self, fig4a):
        assert not initially_synchronous(fig4a)

    def test_fig4b_holds(self, fig4b):
        assert initially_synchronous(fig4b)

    def test_no_root_accessibilities(self, fig3b):
        pairs = {(a, b) for a, b in fig3b.access if a not in fig3b.roots}
        assert initially_synchronous(replace_access(fig3b, pairs))


@given(frames())
def test_closure_matches_brute_force(frame):
    assert s5_closure(frame).access == brute_equivalence_closure(frame)


@given(frames())
def test_closure_contains_symmetric_reflexive_closure(frame):
    assert symmetric_reflexive_closure(frame).access <= s5_closure(frame).access


@given(frames())
def test_intersecting_rows_coincide_on_introspective_frames(frame):
    # on transitive+Euclidean relations, overlapping information sets are equal
    if not is_introspective(frame):
        return
    rows = frame.access_rows
    for a in range(frame.n_histories):
        for b in range(frame.n_histories):
            if rows[a] & rows[b]:
                assert rows[a] == rows[b]


@given(frames())
def test_introspective_iff_related_rows_equal(frame):
    rows = frame.access_rows
    rows_equal = all(rows[a] == rows[b] for a, b in frame.access)
    assert is_introspective(frame) == rows_equal


@given(frames())
def test_synchronous_matches_report(frame):
    assert is_synchronous(frame) == relation_report(frame).synchronous

import pytest
from hypothesis import given, strategies as st

from etlpr.errors import SearchSpaceTooLarge
from etlpr.formulas import And, Atom, K, L, Not, Or, parse_formula, star_axiom
from etlpr.frames import build_frame
from etlpr.semantics import satisfies, truth_set, valid_on_frame, valid_on_model

from conftest import frames
from test_formulas import formulas

P = Atom("p")


def brute_satisfies(frame, v, h, f):
    """Independent textbook evaluator used as an oracle (no truth sets,
    no masks)."""
    from etlpr import formulas as F

    if isinstance(f, F.Atom):
        return h in v.get(f.name, ())
    if isinstance(f, F.Top):
        return True
    if isinstance(f, F.Bot):
        return False
    if isinstance(f, F.Not):
        return not brute_satisfies(frame, v, h, f.body)
    if isinstance(f, F.And):
        return brute_satisfies(frame, v, h, f.left) and brute_satisfies(frame, v, h, f.right)
    if isinstance(f, F.Or):
        return brute_satisfies(frame, v, h, f.left) or brute_satisfies(frame, v, h, f.right)
    if isinstance(f, F.Implies):
        return (not brute_satisfies(frame, v, h, f.left)) or brute_satisfies(frame, v, h, f.right)
    if isinstance(f, F.K):
        return all(
            brute_satisfies(frame, v, h2, f.body)
            for h2 in range(frame.n_histories)
            if (h, h2) in frame.access
        )
    if isinstance(f, F.AfterDia):
        child = frame.extend(h, f.event)
        return child is not None and brute_satisfies(frame, v, child, f.body)
    raise TypeError(f)


class TestSatisfies:
    def test_step_into_atom(self, fig1a):
        v = {"p": frozenset({fig1a.resolve("e1.e3")})}
        f = parse_formula("<e3> p", ["e1", "e2", "e3"])
        assert satisfies(fig1a, v, fig1a.resolve("e1"), f)

    def test_tautology_everywhere(self, fig1a):
        f = parse_formula("p | !p", ["e1", "e2", "e3"])
        assert all(satisfies(fig1a, {}, h, f) for h in range(fig1a.n_histories))

    def test_knowledge_along_one_way_arrows(self, fig3b):
        v = {"p": frozenset({fig3b.resolve("e3")})}
        assert satisfies(fig3b, v, fig3b.resolve("e2"), K(P))
        assert not satisfies(fig3b, v, fig3b.resolve("e1"), K(P))

    def test_step_fails_off_protocol(self, fig1a):
        f = parse_formula("<e2> true", ["e1", "e2", "e3"])
        assert not satisfies(fig1a, {}, fig1a.resolve("e1"), f)

    def test_valuation_guard(self, fig1a):
        with pytest.raises(ValueError):
            satisfies(fig1a, {"p": frozenset({99})}, 0, P)


class TestValidOnModel:
    def test_tautology(self, fig1a):
        ok, failing = valid_on_model(fig1a, {}, parse_formula("p | !p", []))
        assert ok and failing is None

    def test_first_failing_history_is_canonical(self, fig1a):
        ok, failing = valid_on_model(fig1a, {}, P)
        assert not ok
        assert failing == 0

    def test_atom_true_everywhere(self, fig3b):
        v = {"p": frozenset(range(fig3b.n_histories))}
        ok, _ = valid_on_model(fig3b, v, K(P))
        assert ok


class TestValidOnFrame:
    def test_tautology_valid(self, fig3d):
        ok, counter = valid_on_frame(fig3d, parse_formula("p | !p", []))
        assert ok and counter is None

    def test_star_valid_on_recall_frame(self, fig1a):
        alphabet = [e.name for e in fig1a.events]
        for e in alphabet:
            ok, _ = valid_on_frame(fig1a, star_axiom(e, alphabet))
            assert ok

    def test_star_e1_countermodel_on_fig3d(self, fig3d):
        alphabet = [e.name for e in fig3d.events]
        ok, counter = valid_on_frame(fig3d, star_axiom("e1", alphabet))
        assert not ok
        valuation, h = counter
        assert h == fig3d.resolve("")
        assert valuation["p"] == frozenset({fig3d.resolve("e2.e3")})
        # replay: the countermodel falsifies the axiom where claimed
        assert not satisfies(fig3d, valuation, h, star_axiom("e1", alphabet))

    def test_other_star_instances_valid_on_fig3d(self, fig3d):
        # the local condition fails only through event e1 here
        alphabet = [e.name for e in fig3d.events]
        for e in ("e2", "e3"):
            ok, _ = valid_on_frame(fig3d, star_axiom(e, alphabet))
            assert ok

    def test_guard(self, fig1a):
        f = And(And(And(And(Atom("a1"), Atom("a2")), Atom("a3")), Atom("a4")), Atom("a5"))
        with pytest.raises(SearchSpaceTooLarge):
            valid_on_frame(fig1a, f, ceiling=1 << 20)


@given(frames(min_events=2), formulas())
def test_truth_set_matches_recursive_oracle(frame, f):
    valuation = {"p": frozenset(h for h in range(frame.n_histories) if h % 2 == 0)}
    t = truth_set(frame, valuation, f)
    for h in range(frame.n_histories):
        expected = brute_satisfies(frame, valuation, h, f)
        assert bool((t >> h) & 1) == expected
        assert satisfies(frame, valuation, h, f) == expected


@given(frames(min_events=2), formulas())
def test_duality_of_k_and_l(frame, f):
    valuation = {"p": frozenset({0}), "q": frozenset(range(frame.n_histories))}
    for h in range(frame.n_histories):
        assert satisfies(frame, valuation, h, L(f)) == (
            not satisfies(frame, valuation, h, K(Not(f)))
        )


@given(frames())
def test_k_distributes_over_conjunction(frame):
    v = {"p": frozenset({0}), "q": frozenset(range(0, frame.n_histories, 2))}
    lhs = K(And(Atom("p"), Atom("q")))
    rhs = And(K(Atom("p")), K(Atom("q")))
    assert truth_set(frame, v, lhs) == truth_set(frame, v, rhs)


@given(frames(min_events=2), formulas())
def test_double_negation(frame, f):
    v = {"p": frozenset({0})}
    assert truth_set(frame, v, Not(Not(f))) == truth_set(frame, v, f)

import pytest
from hypothesis import given, strategies as st

from etlpr.errors import FormulaSyntaxError, UnknownEvent
from etlpr.formulas import (
    AfterDia,
    And,
    Atom,
    Bot,
    Implies,
    K,
    L,
    Not,
    Or,
    Top,
    after_box,
    box,
    dia,
    formula_to_text,
    parse_formula,
    spr_axiom,
    star_axiom,
)

P = Atom("p")
Q = Atom("q")


class TestParsing:
    def test_star_instance_text(self):
        parsed = parse_formula("<e1> L p -> L p | L dia p | <e1> L dia p", ["e1", "e2"])
        assert parsed == star_axiom("e1", ["e1", "e2"])

    def test_spr_text(self):
        assert parse_formula("dia L p -> L dia p", ["e1", "e2"]) == spr_axiom(["e1", "e2"])

    def test_unknown_event(self):
        with pytest.raises(UnknownEvent):
            parse_formula("<e9> p", ["e1"])

    def test_precedence_unary_tightest(self):
        assert parse_formula("!p & q", ["e1"]) == And(Not(P), Q)
        assert parse_formula("K p | q", ["e1"]) == Or(K(P), Q)

    def test_and_binds_tighter_than_or(self):
        assert parse_formula("p | q & p", ["e1"]) == Or(P, And(Q, P))

    def test_implies_right_associative(self):
        assert parse_formula("p -> q -> p", ["e1"]) == Implies(P, Implies(Q, P))

    def test_or_left_associative(self):
        assert parse_formula("p | q | p", ["e1"]) == Or(Or(P, Q), P)

    def test_parentheses(self):
        assert parse_formula("(p | q) & p", ["e1"]) == And(Or(P, Q), P)

    def test_boxed_step_expands(self):
        assert parse_formula("[e1] p", ["e1"]) == Not(AfterDia("e1", Not(P)))

    def test_constants(self):
        assert parse_formula("true -> false", ["e1"]) == Implies(Top(), Bot())

    def test_reserved_words_are_not_atoms(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p & dia", ["e1"])

    @pytest.mark.parametrize(
        ("text", "position"),
        [
            ("p & & q", 4),
            ("(p", 2),
            ("p @", 2),
            ("<e1 p", 4),
            ("K", 1),
            ("p -> ", 5),
            ("true false", 5),
        ],
    )
    def test_error_positions(self, text, position):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula(text, ["e1"])
        assert err.value.position == position


class TestDerivedForms:
    def test_dia_single_event_collapses(self):
        assert dia(P, ["e1"]) == AfterDia("e1", P)

    def test_dia_expands_in_alphabet_order(self):
        assert dia(P, ["e1", "e2"]) == Or(AfterDia("e1", P), AfterDia("e2", P))

    def test_dia_empty_alphabet_is_falsum(self):
        assert dia(P, []) == Bot()

    def test_box_empty_alphabet_is_verum(self):
        assert box(P, []) == Top()

    def test_l_is_dual_of_k(self):
        assert L(P) == Not(K(Not(P)))

    def test_after_box_is_dual_of_dia(self):
        assert after_box("e1", P) == Not(AfterDia("e1", Not(P)))


class TestAxioms:
    def test_star_single_event(self):
        f = star_axiom("e1", ["e1"])
        ldp = L(AfterDia("e1", P))
        assert f == Implies(
            AfterDia("e1", L(P)), Or(Or(L(P), ldp), AfterDia("e1", ldp))
        )

    def test_star_two_events_expands_dia_in_both_places(self):
        f = star_axiom("e1", ["e1", "e2"])
        text = formula_to_text(f)
        assert text.count("<e1> p | <e2> p") == 2

    def test_star_event_outside_alphabet(self):
        with pytest.raises(UnknownEvent):
            star_axiom("e3", ["e1", "e2"])

    def test_spr_single_event(self):
        assert spr_axiom(["e1"]) == Implies(
            AfterDia("e1", L(P)), L(AfterDia("e1", P))
        )

    def test_spr_two_events(self):
        assert spr_axiom(["e1", "e2"]) == Implies(
            Or(AfterDia("e1", L(P)), AfterDia("e2", L(P))),
            L(Or(AfterDia("e1", P), AfterDia("e2", P))),
        )

    def test_spr_empty_alphabet(self):
        assert spr_axiom([]) == Implies(Bot(), L(Bot()))


class TestPrinting:
    def test_minimal_parens(self):
        f = Or(And(P, Q), Not(P))
        assert formula_to_text(f) == "p & q | !p"

    def test_parens_forced_by_precedence(self):
        f = And(Or(P, Q), P)
        assert formula_to_text(f) == "(p | q) & p"

    def test_modalities(self):
        assert formula_to_text(K(AfterDia("e1", Not(P)))) == "K <e1> !p"


def formulas(alphabet=("e1", "e2"), max_depth=5):
    atoms = st.sampled_from([Atom("p"), Atom("q"), Top(), Bot()])

    def extend(children):
        return st.one_of(
            children.map(Not),
            children.map(K),
            st.tuples(st.sampled_from(alphabet), children).map(lambda t: AfterDia(*t)),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Implies(*t)),
        )

    return st.recursive(atoms, extend, max_leaves=12)


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(formula_to_text(f), ["e1", "e2"]) == f


@given(formulas())
def test_atoms_collects_exactly_occurring_names(f):
    import re

    tokens = set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", formula_to_text(f)))
    assert f.atoms() == frozenset(tokens & {"p", "q"})

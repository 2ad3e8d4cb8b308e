"""Formula syntax: AST, concrete-text parser, printer, axiom builders.

The AST keeps only the primitive constructors (atoms, truth constants,
negation, conjunction, knowledge, one-step diamond) plus disjunction and
implication, which are retained so countermodels stay readable.  The other
standard forms (L, the boxed step, dia, box) are expansion helpers that
need the event alphabet: dia over an empty alphabet is falsum, box is
verum.

Concrete syntax, loosest to tightest binding::

    f -> g        implication, right associative
    f | g         disjunction
    f & g         conjunction
    !f  K f  L f  <e1> f  [e1] f  dia f  box f     prefix operators
    p  true  false  ( f )

Identifiers are atoms except the reserved words K, L, dia, box, true,
false.  The printer emits exactly this syntax with minimal parentheses,
and parsing its output reproduces the formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import FormulaSyntaxError, UnknownEvent


class Formula:
    """Base class; all nodes are frozen dataclasses and hashable."""

    def atoms(self) -> frozenset[str]:
        out: set[str] = set()
        stack: list[Formula] = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Atom):
                out.add(node.name)
            stack.extend(_children(node))
        return frozenset(out)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class K(Formula):
    body: Formula


@dataclass(frozen=True)
class AfterDia(Formula):
    """<e> f: event e can occur and f holds afterwards."""

    event: str
    body: Formula


def _children(node: Formula) -> tuple[Formula, ...]:
    if isinstance(node, (Atom, Top, Bot)):
        return ()
    if isinstance(node, (Not, K)):
        return (node.body,)
    if isinstance(node, AfterDia):
        return (node.body,)
    return (node.left, node.right)  # And / Or / Implies


RESERVED = frozenset({"K", "L", "dia", "box", "true", "false"})


# -- derived forms ------------------------------------------------------


def L(body: Formula) -> Formula:
    """Dual of K."""
    return Not(K(Not(body)))


def after_box(event: str, body: Formula) -> Formula:
    """[e] f, dual of <e> f."""
    return Not(AfterDia(event, Not(body)))


def _check_event(event: str, alphabet: Sequence[str]) -> None:
    if event not in alphabet:
        raise UnknownEvent(f"event {event!r} is not in the alphabet {list(alphabet)}")


def dia(body: Formula, alphabet: Sequence[str]) -> Formula:
    """Disjunction of <e> f over the whole alphabet (falsum when empty)."""
    out: Formula | None = None
    for e in alphabet:
        term = AfterDia(e, body)
        out = term if out is None else Or(out, term)
    return Bot() if out is None else out


def box(body: Formula, alphabet: Sequence[str]) -> Formula:
    """Conjunction of [e] f over the whole alphabet (verum when empty)."""
    out: Formula | None = None
    for e in alphabet:
        term = after_box(e, body)
        out = term if out is None else And(out, term)
    return Top() if out is None else out


def star_axiom(event: str, alphabet: Sequence[str], atom: str = "p") -> Formula:
    """<e> L p  ->  L p  |  L dia p  |  <e> L dia p, with dia expanded."""
    _check_event(event, alphabet)
    p = Atom(atom)
    ldp = L(dia(p, alphabet))
    return Implies(
        AfterDia(event, L(p)),
        Or(Or(L(p), ldp), AfterDia(event, ldp)),
    )


def spr_axiom(alphabet: Sequence[str], atom: str = "p") -> Formula:
    """dia L p -> L dia p, with both dia expanded."""
    p = Atom(atom)
    return Implies(dia(L(p), alphabet), L(dia(p, alphabet)))


# -- parser --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<lt><)|(?P<gt>>)|(?P<lbr>\[)|(?P<rbr>\])"
    r"|(?P<bang>!)|(?P<amp>&)|(?P<pipe>\|)|(?P<lp>\()|(?P<rp>\))"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            at = pos + len(text[pos:]) - len(text[pos:].lstrip())
            if at >= len(text):
                break
            raise FormulaSyntaxError(f"unexpected character {text[at]!r}", at)
        yield m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)
        pos = m.end()
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.text = text
        self.alphabet = tuple(alphabet)
        self.tokens = list(_tokenize(text))
        self.i = 0

    @property
    def cur(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def eat(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.cur
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.implication()
        kind, value, pos = self.cur
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {value!r}", pos)
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.cur[0] == "arrow":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.cur[0] == "pipe":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.cur[0] == "amp":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, pos = self.cur
        if kind == "bang":
            self.i += 1
            return Not(self.unary())
        if kind == "lt":
            self.i += 1
            _, event, epos = self.eat("ident", "an event name")
            if event not in self.alphabet:
                raise UnknownEvent(
                    f"event {event!r} at position {epos} is not in the alphabet "
                    f"{list(self.alphabet)}"
                )
            self.eat("gt", "'>'")
            return AfterDia(event, self.unary())
        if kind == "lbr":
            self.i += 1
            _, event, epos = self.eat("ident", "an event name")
            if event not in self.alphabet:
                raise UnknownEvent(
                    f"event {event!r} at position {epos} is not in the alphabet "
                    f"{list(self.alphabet)}"
                )
            self.eat("rbr", "']'")
            return after_box(event, self.unary())
        if kind == "ident":
            if value == "K":
                self.i += 1
                return K(self.unary())
            if value == "L":
                self.i += 1
                return L(self.unary())
            if value == "dia":
                self.i += 1
                return dia(self.unary(), self.alphabet)
            if value == "box":
                self.i += 1
                return box(self.unary(), self.alphabet)
            return self.primary()
        if kind == "lp":
            return self.primary()
        raise FormulaSyntaxError("expected a formula", pos)

    def primary(self) -> Formula:
        kind, value, pos = self.cur
        if kind == "lp":
            self.i += 1
            f = self.implication()
            self.eat("rp", "')'")
            return f
        if kind == "ident":
            self.i += 1
            if value == "true":
                return Top()
            if value == "false":
                return Bot()
            if value in RESERVED:
                raise FormulaSyntaxError(f"{value!r} cannot be used as an atom", pos)
            return Atom(value)
        raise FormulaSyntaxError("expected a formula", pos)


def parse_formula(text: str, alphabet: Sequence[str]) -> Formula:
    """Parse concrete syntax; derived operators expand against the given
    alphabet at parse time."""
    return _Parser(text, alphabet).parse()


# -- printer --------------------------------------------------------------

# binding strength; unary operators bind tightest
_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node: Formula) -> int:
    if isinstance(node, Implies):
        return _PREC_IMPLIES
    if isinstance(node, Or):
        return _PREC_OR
    if isinstance(node, And):
        return _PREC_AND
    if isinstance(node, (Not, K, AfterDia)):
        return _PREC_UNARY
    return _PREC_ATOM


def _emit(node: Formula, parent_prec: int) -> str:
    prec = _prec(node)
    if isinstance(node, Atom):
        text = node.name
    elif isinstance(node, Top):
        text = "true"
    elif isinstance(node, Bot):
        text = "false"
    elif isinstance(node, Not):
        text = f"!{_emit(node.body, _PREC_UNARY)}"
    elif isinstance(node, K):
        text = f"K {_emit(node.body, _PREC_UNARY)}"
    elif isinstance(node, AfterDia):
        text = f"<{node.event}> {_emit(node.body, _PREC_UNARY)}"
    elif isinstance(node, And):
        text = f"{_emit(node.left, _PREC_AND)} & {_emit(node.right, _PREC_AND + 1)}"
    elif isinstance(node, Or):
        text = f"{_emit(node.left, _PREC_OR)} | {_emit(node.right, _PREC_OR + 1)}"
    elif isinstance(node, Implies):
        text = f"{_emit(node.left, _PREC_IMPLIES + 1)} -> {_emit(node.right, _PREC_IMPLIES)}"
    else:
        raise TypeError(f"not a formula node: {node!r}")
    return f"({text})" if prec < parent_prec else text


def formula_to_text(f: Formula) -> str:
    """Concrete syntax with minimal parentheses; parse_formula inverts it."""
    return _emit(f, _PREC_IMPLIES)

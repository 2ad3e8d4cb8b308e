"""Properties and closures of the accessibility relation.

Everything here is decided by exhaustive quantifier checking over the
(small) history set.  Counterexample witnesses are always the first one in
canonical history order, so reports are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionViolated
from .frames import Frame, HistoryId, replace_access


@dataclass(frozen=True)
class RelationReport:
    """Flags for the standard relation properties plus synchronicity.

    For every flag that is False, ``witnesses`` holds the first (in
    canonical order) tuple of histories demonstrating the violation.
    """

    reflexive: bool
    symmetric: bool
    transitive: bool
    euclidean: bool
    serial: bool
    synchronous: bool
    witnesses: dict[str, tuple[HistoryId, ...]] = field(default_factory=dict)

    FLAGS = ("reflexive", "symmetric", "transitive", "euclidean", "serial", "synchronous")

    def flag(self, name: str) -> bool:
        return getattr(self, name)


def relation_report(frame: Frame) -> RelationReport:
    n = frame.n_histories
    rows = frame.access_rows
    flags: dict[str, bool] = {}
    witnesses: dict[str, tuple[int, ...]] = {}

    def record(name: str, witness: tuple[int, ...] | None) -> None:
        flags[name] = witness is None
        if witness is not None:
            witnesses[name] = witness

    record("reflexive", next(((h,) for h in range(n) if h not in rows[h]), None))
    record(
        "symmetric",
        next(
            ((a, b) for a in range(n) for b in sorted(rows[a]) if a not in rows[b]),
            None,
        ),
    )
    record(
        "transitive",
        next(
            (
                (a, b, c)
                for a in range(n)
                for b in sorted(rows[a])
                for c in sorted(rows[b])
                if c not in rows[a]
            ),
            None,
        ),
    )
    record(
        "euclidean",
        next(
            (
                (a, b, c)
                for a in range(n)
                for b in sorted(rows[a])
                for c in sorted(rows[a])
                if c not in rows[b]
            ),
            None,
        ),
    )
    record("serial", next(((h,) for h in range(n) if not rows[h]), None))
    record(
        "synchronous",
        next(
            (
                (a, b)
                for a in range(n)
                for b in sorted(rows[a])
                if frame.length[a] != frame.length[b]
            ),
            None,
        ),
    )
    return RelationReport(**flags, witnesses=witnesses)


def is_synchronous(frame: Frame) -> bool:
    """Every accessibility pair relates histories of equal length."""
    return all(frame.length[a] == frame.length[b] for a, b in frame.access)


def is_s5(frame: Frame) -> bool:
    """Accessibility is an equivalence relation."""
    r = relation_report(frame)
    return r.reflexive and r.symmetric and r.transitive


def is_introspective(frame: Frame) -> bool:
    """Accessibility is transitive and Euclidean (positive and negative
    introspection)."""
    r = relation_report(frame)
    return r.transitive and r.euclidean


def s5_closure(frame: Frame) -> Frame:
    """Same protocol, accessibility replaced by the least equivalence
    relation containing it.

    The least equivalence containing R relates exactly the members of each
    connected component of R viewed as an undirected graph, with every
    history reflexive.
    """
    n = frame.n_histories
    comp = list(range(n))

    def find(x: int) -> int:
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for a, b in frame.access:
        ra, rb = find(a), find(b)
        if ra != rb:
            comp[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for h in range(n):
        groups.setdefault(find(h), []).append(h)
    pairs = {(a, b) for members in groups.values() for a in members for b in members}
    return replace_access(frame, pairs)


def symmetric_reflexive_closure(frame: Frame) -> Frame:
    """Same protocol, accessibility closed under symmetry and reflexivity
    only (no transitive step)."""
    pairs = set(frame.access)
    pairs.update((b, a) for a, b in frame.access)
    pairs.update((h, h) for h in range(frame.n_histories))
    return replace_access(frame, pairs)


def closure_is_symmetric_reflexive_only(frame: Frame) -> bool:
    """On an introspective frame, does the symmetric-reflexive closure
    already coincide with the full S5 closure (no transitive iteration)?

    Raises PreconditionViolated when the frame is not introspective.  Note
    this is *not* a theorem: a cluster with two unrelated outside
    accessors breaks it (see the relation tests for the 3-history
    counterexample).
    """
    if not is_introspective(frame):
        raise PreconditionViolated("closure shortcut is only defined on introspective frames")
    return symmetric_reflexive_closure(frame).access == s5_closure(frame).access


def persistent_insanity(frame: Frame) -> bool:
    """Once the information set is empty it stays empty: whenever
    [h] = {} and h is a prefix of h', also [h'] = {}."""
    rows = frame.access_rows
    for h in range(frame.n_histories):
        if rows[h]:
            continue
        if any(rows[d] for d in frame.descendants(h)):
            return False
    return True


def initially_synchronous(frame: Frame) -> bool:
    """Whenever a root accesses a history, it also accesses that history's
    own root: for roots r, r' and h with r a prefix of h and r' ~ h, we
    require r' ~ r."""
    rows = frame.access_rows
    roots = frame.roots
    root_of = {}
    for h in range(frame.n_histories):
        root_of[h] = frame.prefix_chain(h)[0]
    for r_prime in roots:
        for h in sorted(rows[r_prime]):
            if root_of[h] not in rows[r_prime]:
                return False
    return True

"""Event-labelled history forests with an epistemic accessibility relation.

A frame is a finite, prefix-closed set of histories (event sequences hanging
off one or more distinct roots) plus a binary accessibility relation over
those histories.  The relation is stored as a set of ordered pairs: symmetry
is a property to be checked, never an assumption.

Histories are referred to by integer handles (``HistoryId``) indexing a
canonical ordering: histories are sorted by tree, then lexicographically by
their event-index sequence.  All witness reporting and enumeration in the
rest of the package leans on this ordering being total and stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DuplicateEvent,
    DuplicateRoot,
    NotPrefixClosed,
    UnknownEvent,
    UnknownHistory,
)

HistoryId = int
EventSeq = tuple[int, ...]

# relation selectors for Frame.image / Frame.image_set
ACCESS = "access"
LEADSTO = "leadsto"
LEADSTO_STAR = "leadsto_star"
RELATION_SELECTORS = (ACCESS, LEADSTO, LEADSTO_STAR)


@dataclass(frozen=True)
class EventId:
    """An event of a frame's alphabet: position in the alphabet plus name."""

    index: int
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Frame:
    """An immutable tree/forest of histories with an accessibility relation.

    ``histories`` holds ``(tree_index, event_index_sequence)`` pairs in
    canonical order; ``access`` holds ordered ``(HistoryId, HistoryId)``
    pairs.  Build instances through :func:`build_frame`, which validates
    prefix closure and canonicalizes ordering; the raw constructor trusts
    its inputs (used by the enumerators, where frames are built by the
    million).  Frames are value objects: derived tables are cached but the
    visible state never changes, so everything here is safe to share
    between threads.
    """

    events: tuple[EventId, ...]
    root_names: tuple[str, ...]
    histories: tuple[tuple[int, EventSeq], ...]
    access: frozenset[tuple[HistoryId, HistoryId]]

    # -- basic shape ---------------------------------------------------

    @property
    def n_histories(self) -> int:
        return len(self.histories)

    @property
    def n_trees(self) -> int:
        return len(self.root_names)

    @property
    def is_tree(self) -> bool:
        return len(self.root_names) == 1

    @cached_property
    def event_by_name(self) -> dict[str, EventId]:
        return {e.name: e for e in self.events}

    def event(self, name: str) -> EventId:
        try:
            return self.event_by_name[name]
        except KeyError:
            raise UnknownEvent(f"event {name!r} is not in the alphabet") from None

    # -- derived history tables (computed once, cached) ----------------

    @cached_property
    def _index(self) -> dict[tuple[int, EventSeq], HistoryId]:
        return {hs: i for i, hs in enumerate(self.histories)}

    @cached_property
    def parent(self) -> tuple[HistoryId | None, ...]:
        out = []
        for tree, seq in self.histories:
            out.append(self._index[(tree, seq[:-1])] if seq else None)
        return tuple(out)

    @cached_property
    def length(self) -> tuple[int, ...]:
        return tuple(len(seq) for _, seq in self.histories)

    @cached_property
    def tree_of(self) -> tuple[int, ...]:
        return tuple(tree for tree, _ in self.histories)

    @cached_property
    def child_table(self) -> dict[tuple[HistoryId, int], HistoryId]:
        """(history, event index) -> one-step extension, where present."""
        table = {}
        for i, ((tree, seq)) in enumerate(self.histories):
            if seq:
                table[(self.parent[i], seq[-1])] = i
        return table

    @cached_property
    def children(self) -> tuple[tuple[HistoryId, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.histories]
        for i, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(i)
        return tuple(tuple(sorted(k)) for k in kids)

    @cached_property
    def roots(self) -> frozenset[HistoryId]:
        """The set of all root histories (a singleton for a tree)."""
        return frozenset(i for i, p in enumerate(self.parent) if p is None)

    @cached_property
    def access_rows(self) -> tuple[frozenset[HistoryId], ...]:
        """Per-history image under the accessibility relation."""
        rows: list[set[int]] = [set() for _ in self.histories]
        for a, b in self.access:
            rows[a].add(b)
        return tuple(frozenset(r) for r in rows)

    @cached_property
    def access_row_masks(self) -> tuple[int, ...]:
        """access_rows as bitmasks, for the model-checking hot path."""
        masks = [0] * len(self.histories)
        for a, b in self.access:
            masks[a] |= 1 << b
        return tuple(masks)

    @cached_property
    def access_sorted(self) -> tuple[tuple[HistoryId, HistoryId], ...]:
        return tuple(sorted(self.access))

    # -- operations -----------------------------------------------------

    def extend(self, h: HistoryId, event: EventId | str) -> HistoryId | None:
        """The one-step extension of ``h`` by ``event``, or None if absent."""
        e = self.event(event) if isinstance(event, str) else event
        return self.child_table.get((h, e.index))

    def is_prefix(self, h: HistoryId, h2: HistoryId) -> bool:
        """True iff ``h`` and ``h2`` share a root and ``h``'s sequence is an
        initial segment of ``h2``'s (reflexive)."""
        ta, sa = self.histories[h]
        tb, sb = self.histories[h2]
        return ta == tb and sb[: len(sa)] == sa

    def prefix_chain(self, h: HistoryId) -> tuple[HistoryId, ...]:
        """All prefixes of ``h`` from its root to ``h`` itself, in order."""
        chain = []
        cur: HistoryId | None = h
        while cur is not None:
            chain.append(cur)
            cur = self.parent[cur]
        chain.reverse()
        return tuple(chain)

    def descendants(self, h: HistoryId) -> frozenset[HistoryId]:
        """Reflexive-transitive closure of the one-step extension relation."""
        seen = {h}
        stack = [h]
        while stack:
            for c in self.children[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(seen)

    def image(self, h: HistoryId, rel: str) -> frozenset[HistoryId]:
        """Image of ``h`` under a relation selector (access | leadsto |
        leadsto_star)."""
        if rel == ACCESS:
            return self.access_rows[h]
        if rel == LEADSTO:
            return frozenset(self.children[h])
        if rel == LEADSTO_STAR:
            return self.descendants(h)
        raise ValueError(f"unknown relation selector {rel!r}")

    def image_set(self, hs: Iterable[HistoryId], rel: str) -> frozenset[HistoryId]:
        """Union of per-history images over a set of histories."""
        out: set[int] = set()
        for h in hs:
            out |= self.image(h, rel)
        return frozenset(out)

    # -- naming ----------------------------------------------------------

    def seq_names(self, h: HistoryId) -> tuple[str, ...]:
        _, seq = self.histories[h]
        return tuple(self.events[e].name for e in seq)

    def label(self, h: HistoryId) -> str:
        """Human-readable name: dotted event path, roots shown explicitly.

        Single tree: "ε" for the root, "e1.e3" otherwise.  Forest: the root
        name alone, or "r2:e1.e3".
        """
        tree, seq = self.histories[h]
        dotted = ".".join(self.seq_names(h))
        if self.is_tree:
            return dotted if seq else "ε"
        root = self.root_names[tree]
        return f"{root}:{dotted}" if seq else root

    def ref(self, h: HistoryId) -> str:
        """Document reference form; like label() but the lone-tree root is
        the empty string, so references round-trip through resolve()."""
        tree, seq = self.histories[h]
        dotted = ".".join(self.seq_names(h))
        if self.is_tree:
            return dotted
        root = self.root_names[tree]
        return f"{root}:{dotted}" if seq else root

    def resolve(self, ref: str) -> HistoryId:
        """Inverse of ref(): "rootName:dotted", bare "rootName", or a bare
        dotted path when the frame is a single tree."""
        if ":" in ref:
            root, dotted = ref.split(":", 1)
            if root not in self.root_names:
                raise UnknownHistory(f"unknown root {root!r} in reference {ref!r}")
            tree = self.root_names.index(root)
        elif ref in self.root_names:
            return self._index[(self.root_names.index(ref), ())]
        elif self.is_tree:
            tree, dotted = 0, ref
        else:
            raise UnknownHistory(
                f"history reference {ref!r} must name a root or be root-qualified"
            )
        seq = _parse_dotted(dotted, self.event_by_name)
        try:
            return self._index[(tree, seq)]
        except KeyError:
            raise UnknownHistory(f"history {ref!r} is not in the protocol") from None

    def validate(self) -> None:
        """Re-check the structural invariants on an already-built frame."""
        _check_events([e.name for e in self.events])
        if len(set(self.root_names)) != len(self.root_names):
            raise DuplicateRoot(f"duplicate root names in {self.root_names}")
        seen = set(self.histories)
        if len(seen) != len(self.histories):
            raise NotPrefixClosed("duplicate histories")
        for tree in range(len(self.root_names)):
            if (tree, ()) not in seen:
                raise NotPrefixClosed(f"tree {self.root_names[tree]} is missing its root")
        for tree, seq in self.histories:
            if not 0 <= tree < len(self.root_names):
                raise UnknownHistory(f"history {seq} names tree {tree}")
            if any(not 0 <= e < len(self.events) for e in seq):
                raise UnknownEvent(f"history {seq} uses an event outside the alphabet")
            if seq and (tree, seq[:-1]) not in seen:
                raise NotPrefixClosed(f"prefix of {seq} missing in tree {tree}")
        if list(self.histories) != sorted(self.histories):
            raise UnknownHistory("histories not in canonical order")
        n = len(self.histories)
        for a, b in self.access:
            if not (0 <= a < n and 0 <= b < n):
                raise UnknownHistory(f"access pair ({a}, {b}) escapes the protocol")


def _parse_dotted(dotted: str, events: dict[str, EventId]) -> EventSeq:
    if dotted == "":
        return ()
    seq = []
    for name in dotted.split("."):
        if name not in events:
            raise UnknownEvent(f"event {name!r} is not in the alphabet")
        seq.append(events[name].index)
    return tuple(seq)


def _check_events(names: Sequence[str]) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise DuplicateEvent(f"duplicate event name {name!r}")
        seen.add(name)


def build_frame(
    events: Sequence[str],
    trees: Sequence[tuple[str, Sequence[str]]],
    access: Sequence[tuple[str, str]] = (),
    symmetric: bool = False,
) -> Frame:
    """Validate and canonicalize a frame description.

    ``trees`` maps each root name to its histories as dotted event paths
    ("" is the root, which must be present).  ``access`` pairs are history
    references as accepted by :meth:`Frame.resolve`; with ``symmetric=True``
    every converse pair is added.  Events and trees are sorted by name, so
    equal descriptions build equal frames.
    """
    _check_events(events)
    event_ids = tuple(EventId(i, name) for i, name in enumerate(sorted(events)))
    by_name = {e.name: e for e in event_ids}

    root_names = [root for root, _ in trees]
    if len(set(root_names)) != len(root_names):
        raise DuplicateRoot(f"duplicate root names in {root_names}")
    ordered = sorted(trees, key=lambda rt: rt[0])

    histories: set[tuple[int, EventSeq]] = set()
    for tree, (root, paths) in enumerate(ordered):
        seqs = {_parse_dotted(p, by_name) for p in paths}
        if () not in seqs:
            raise NotPrefixClosed(f"tree {root!r} must contain its root (\"\")")
        for seq in seqs:
            if seq and seq[:-1] not in seqs:
                raise NotPrefixClosed(
                    f"tree {root!r}: history {'.'.join(event_ids[e].name for e in seq)!r} "
                    "lacks its immediate prefix"
                )
        histories.update((tree, seq) for seq in seqs)

    frame = Frame(
        events=event_ids,
        root_names=tuple(root for root, _ in ordered),
        histories=tuple(sorted(histories)),
        access=frozenset(),
    )
    pairs = set()
    for a_ref, b_ref in access:
        a, b = frame.resolve(a_ref), frame.resolve(b_ref)
        pairs.add((a, b))
        if symmetric:
            pairs.add((b, a))
    return Frame(frame.events, frame.root_names, frame.histories, frozenset(pairs))


def replace_access(frame: Frame, access: Iterable[tuple[HistoryId, HistoryId]]) -> Frame:
    """Same protocol, different accessibility relation."""
    return Frame(frame.events, frame.root_names, frame.histories, frozenset(access))

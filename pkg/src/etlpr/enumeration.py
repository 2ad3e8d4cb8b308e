"""Exhaustive enumeration of small frames.

Frames are enumerated protocol-by-protocol: first every prefix-closed
protocol within the bounds (alphabet size, depth, history count, tree
count), then every accessibility relation over its histories.  A relation
is a bitmask over the n*n pair matrix -- bit a*n+b set means history a
accesses history b -- and masks are yielded in ascending order, so the
stream is duplicate free and identical on every run.

Relation filters restrict the relation sweep to a hypothesis class.  The
default strategy generates every mask and filters afterwards; for the
equivalence-relation and introspective classes a constructive generator
produces the same (sorted) masks directly, which is what makes sweeps at
thirty-plus-million relations per protocol tractable.  Both routes are
cross-checked in the tests.

Forests with several trees are enumerated as sorted multisets of tree
shapes: exchanging two whole trees only renames roots, and every property
checked here is invariant under that.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterator, Sequence

from .errors import SearchSpaceTooLarge
from .frames import EventId, Frame

DEFAULT_ENUM_CEILING = 1 << 30

RELATION_FILTERS = ("all", "s5", "introspective", "serial", "custom")

# a tree shape is a sorted tuple of (event index, child shape)
Shape = tuple

_EVENT_POOL = tuple(f"e{i}" for i in range(1, 10))
_ROOT_POOL = tuple(f"r{i}" for i in range(1, 10))


def enum_ceiling(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("ETL_CEILING", DEFAULT_ENUM_CEILING))


@dataclass(frozen=True)
class EnumBounds:
    """Bounds and hypothesis class for a frame sweep."""

    max_events: int = 2
    max_depth: int = 2
    max_histories: int = 5
    max_trees: int = 2
    min_trees: int = 1
    relation_filter: str = "all"
    custom_predicate: Callable[[Frame], bool] | None = None
    ceiling: int | None = None

    def __post_init__(self):
        for name in ("max_events", "max_depth", "max_histories", "max_trees", "min_trees"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.min_trees > self.max_trees:
            raise ValueError("min_trees exceeds max_trees")
        if self.relation_filter not in RELATION_FILTERS:
            raise ValueError(f"unknown relation filter {self.relation_filter!r}")
        if self.relation_filter == "custom" and self.custom_predicate is None:
            raise ValueError("custom relation filter needs custom_predicate")

    def describe(self) -> str:
        parts = [
            f"events<={self.max_events}",
            f"depth<={self.max_depth}",
            f"histories<={self.max_histories}",
            f"trees={self.min_trees}..{self.max_trees}",
            f"filter={self.relation_filter}",
        ]
        return " ".join(parts)


def _shape_size(shape: Shape) -> int:
    return 1 + sum(_shape_size(sub) for _, sub in shape)


def _tree_shapes(n_events: int, max_depth: int, max_size: int) -> list[Shape]:
    """All tree shapes over the alphabet, deterministic order."""
    if max_depth == 0 or max_size <= 1:
        return [()]
    subs = _tree_shapes(n_events, max_depth - 1, max_size - 1)
    shapes: list[Shape] = []
    for child_bits in range(1 << n_events):
        children = [e for e in range(n_events) if (child_bits >> e) & 1]
        if not children:
            shapes.append(())
            continue
        picks: list[list[tuple[int, Shape]]] = [[]]
        for e in children:
            picks = [p + [(e, s)] for p in picks for s in subs]
        for p in picks:
            shape = tuple(p)
            if _shape_size(shape) <= max_size:
                shapes.append(shape)
    # the empty choice appears once only
    out, seen = [], set()
    for s in shapes:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def _shape_histories(shape: Shape, prefix: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    out = [prefix]
    for e, sub in shape:
        out.extend(_shape_histories(sub, prefix + (e,)))
    return out


@dataclass(frozen=True)
class Protocol:
    """One enumerated protocol: alphabet plus forest of histories."""

    n_events: int
    shapes: tuple[Shape, ...]

    @cached_property
    def event_names(self) -> tuple[str, ...]:
        return _EVENT_POOL[: self.n_events]

    @cached_property
    def root_names(self) -> tuple[str, ...]:
        return _ROOT_POOL[: len(self.shapes)]

    @cached_property
    def histories(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        hs = []
        for tree, shape in enumerate(self.shapes):
            hs.extend((tree, seq) for seq in _shape_histories(shape))
        return tuple(sorted(hs))

    @property
    def n(self) -> int:
        return len(self.histories)

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        index = {hs: i for i, hs in enumerate(self.histories)}
        return tuple(
            index[(tree, seq[:-1])] if seq else None for tree, seq in self.histories
        )

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(seq) for _, seq in self.histories)

    @cached_property
    def chains(self) -> tuple[tuple[int, ...], ...]:
        """Prefix chain (root first) per history."""
        out = []
        for i in range(self.n):
            chain = []
            cur: int | None = i
            while cur is not None:
                chain.append(cur)
                cur = self.parent[cur]
            out.append(tuple(reversed(chain)))
        return tuple(out)

    @cached_property
    def _pairs(self) -> tuple[tuple[int, int], ...]:
        n = self.n
        return tuple((k // n, k % n) for k in range(n * n))

    @cached_property
    def _frame_template(self) -> tuple[tuple[EventId, ...], tuple[str, ...]]:
        events = tuple(EventId(i, name) for i, name in enumerate(self.event_names))
        return events, self.root_names

    def frame(self, mask: int) -> Frame:
        """Materialize the frame for one relation bitmask (trusted input)."""
        events, roots = self._frame_template
        pairs = frozenset(p for k, p in enumerate(self._pairs) if (mask >> k) & 1)
        return Frame(events, roots, self.histories, pairs)

    def mask_of(self, frame: Frame) -> int:
        n = self.n
        mask = 0
        for a, b in frame.access:
            mask |= 1 << (a * n + b)
        return mask


def protocols(bounds: EnumBounds) -> Iterator[Protocol]:
    """Every protocol within the bounds, canonical order."""
    for n_events in range(1, bounds.max_events + 1):
        shapes = _tree_shapes(n_events, bounds.max_depth, bounds.max_histories)
        for n_trees in range(bounds.min_trees, bounds.max_trees + 1):
            for combo in combinations_with_replacement(range(len(shapes)), n_trees):
                chosen = tuple(shapes[i] for i in combo)
                if sum(_shape_size(s) for s in chosen) <= bounds.max_histories:
                    yield Protocol(n_events, chosen)


def enumeration_size(bounds: EnumBounds) -> int:
    """Worst-case stream size: sum of 2^(n^2) over all protocols."""
    return sum(1 << (p.n * p.n) for p in protocols(bounds))


# -- constructive relation generators -----------------------------------


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All partitions of ``items`` into nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _blocks_to_mask(blocks: list[list[int]], n: int) -> int:
    mask = 0
    for block in blocks:
        for a in block:
            for b in block:
                mask |= 1 << (a * n + b)
    return mask


def equivalence_masks(n: int) -> list[int]:
    """All equivalence relations on n elements, ascending mask order."""
    return sorted(_blocks_to_mask(p, n) for p in set_partitions(range(n)))


def introspective_masks(n: int) -> list[int]:
    """All transitive and Euclidean relations on n elements.

    Such a relation is a set of disjoint clusters (each internally total)
    with every element's image either empty or exactly one cluster, and
    cluster members pointing at their own cluster.  Generated directly
    from that shape, sorted ascending; the tests replay the definition on
    every generated mask and diff against the filtered route.
    """
    masks = set()
    elems = list(range(n))
    for r in range(n + 1):
        for covered in combinations(elems, r):
            outside = [x for x in elems if x not in covered]
            for blocks in set_partitions(list(covered)):
                base = _blocks_to_mask(blocks, n)
                row_of_block = [sum(1 << b for b in block) for block in blocks]
                choices = [0] + row_of_block
                stack = [(0, base)]
                while stack:
                    i, mask = stack.pop()
                    if i == len(outside):
                        masks.add(mask)
                        continue
                    h = outside[i]
                    for row in choices:
                        stack.append((i + 1, mask | _row_mask(h, row, n)))
    return sorted(masks)


def _row_mask(h: int, row_bits: int, n: int) -> int:
    mask = 0
    b = 0
    while row_bits:
        if row_bits & 1:
            mask |= 1 << (h * n + b)
        row_bits >>= 1
        b += 1
    return mask


def _mask_is_serial(mask: int, n: int) -> bool:
    row = (1 << n) - 1
    return all((mask >> (h * n)) & row for h in range(n))


def relation_masks(proto: Protocol, bounds: EnumBounds, strategy: str = "auto") -> Iterator[int]:
    """Relation bitmasks for one protocol, ascending, honoring the filter.

    ``strategy`` is "auto" (constructive generators where available),
    "filter" (generate everything, test afterwards) or "constructive".
    """
    n = proto.n
    filt = bounds.relation_filter
    constructive = strategy == "constructive" or (
        strategy == "auto" and filt in ("s5", "introspective")
    )
    if constructive and filt == "s5":
        yield from equivalence_masks(n)
        return
    if constructive and filt == "introspective":
        yield from introspective_masks(n)
        return
    if strategy == "constructive":
        raise ValueError(f"no constructive generator for filter {filt!r}")
    for mask in range(1 << (n * n)):
        if filt == "all":
            yield mask
        elif filt == "serial":
            if _mask_is_serial(mask, n):
                yield mask
        elif filt == "custom":
            if bounds.custom_predicate(proto.frame(mask)):
                yield mask
        else:  # s5 / introspective via the slow filtered route
            from . import relations

            frame = proto.frame(mask)
            keep = relations.is_s5(frame) if filt == "s5" else relations.is_introspective(frame)
            if keep:
                yield mask


def enumerate_frames(bounds: EnumBounds, strategy: str = "auto") -> Iterator[Frame]:
    """Stream every frame within the bounds, exactly once, fixed order.

    The worst-case stream size is checked against the ceiling up front
    (EnumBounds.ceiling, the ETL_CEILING environment variable, or the
    built-in default, in that order) and refused when above it.
    """
    size = enumeration_size(bounds)
    limit = enum_ceiling(bounds.ceiling)
    if size > limit:
        raise SearchSpaceTooLarge(
            f"enumeration would cover {size} relation assignments, above the "
            f"ceiling {limit}; tighten the bounds or raise the ceiling"
        )
    for proto in protocols(bounds):
        for mask in relation_masks(proto, bounds, strategy):
            yield proto.frame(mask)

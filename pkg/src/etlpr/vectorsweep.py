"""Vectorized relation sweeps over a fixed protocol.

For claims quantified over *all* relations the per-protocol search space
is 2^(n^2) bitmasks; at five histories that is 33.5 million relations,
far beyond what per-frame checking can cover.  This module evaluates the
frame conditions for every mask at once: the mask stream is processed in
chunks as numpy arrays, each pair bit becomes a boolean column, and every
condition reduces to boolean algebra on those columns because the
one-step extension relation is functional (each history has exactly one
predecessor), so the existential quantifiers in the recall conditions
collapse to parent lookups.

Stutter equivalence of experience sequences is decided by a small dynamic
program over chain positions: two sequences are stutter-equal iff their
heads agree and either both end, one consumes a duplicate head, or both
advance to fresh values together.

The predicates here are a second implementation of the checkers in
``recall``/``relations`` and exist purely for scale; the tests replay
every predicate against the reference checkers exhaustively on small
protocols and on random samples at full size.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from .enumeration import Protocol
from .formulas import AfterDia, And, Atom, Bot, Formula, Implies, K, Not, Or, Top, star_axiom

CHUNK_SIZE = 1 << 22

Value = bool | np.ndarray  # scalar shortcut or per-mask column


def _vnot(a: Value) -> Value:
    return (not a) if isinstance(a, bool) else ~a


def _vand(a: Value, b: Value) -> Value:
    if isinstance(a, bool):
        return b if a else False
    if isinstance(b, bool):
        return a if b else False
    return a & b


def _vor(a: Value, b: Value) -> Value:
    if isinstance(a, bool):
        return True if a else b
    if isinstance(b, bool):
        return True if b else a
    return a | b


class ProtocolKernel:
    """Static protocol structure shared by all chunks."""

    def __init__(self, proto: Protocol):
        self.proto = proto
        self.n = proto.n
        self.parent = proto.parent
        self.chains = proto.chains
        self.lengths = proto.lengths
        self.mask_count = 1 << (self.n * self.n)

    @cached_property
    def child_table(self) -> dict[tuple[int, int], int]:
        table = {}
        for i, (_, seq) in enumerate(self.proto.histories):
            if seq:
                table[(self.parent[i], seq[-1])] = i
        return table

    @cached_property
    def nonroots(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parent) if p is not None)

    @cached_property
    def async_pair_mask(self) -> int:
        """Bits of all pairs relating histories of different lengths."""
        n, out = self.n, 0
        for a in range(n):
            for b in range(n):
                if self.lengths[a] != self.lengths[b]:
                    out |= 1 << (a * n + b)
        return out


class ChunkContext:
    """One chunk of relation masks with cached bit and predicate columns."""

    def __init__(self, kernel: ProtocolKernel, masks: np.ndarray):
        self.k = kernel
        self.masks = masks
        self.size = len(masks)
        self._bits: dict[tuple[int, int], np.ndarray] = {}
        self._row_eq: dict[tuple[int, int], np.ndarray] = {}
        self._row_empty: dict[int, np.ndarray] = {}
        self._ee_eq: dict[tuple[int, int], np.ndarray] = {}
        self._preds: dict[str, np.ndarray] = {}

    def bit(self, a: int, b: int) -> np.ndarray:
        key = (a, b)
        col = self._bits.get(key)
        if col is None:
            shift = np.uint64(a * self.k.n + b)
            col = ((self.masks >> shift) & np.uint64(1)).astype(bool)
            self._bits[key] = col
        return col

    def row_eq(self, a: int, b: int) -> np.ndarray:
        if a > b:
            a, b = b, a
        key = (a, b)
        col = self._row_eq.get(key)
        if col is None:
            col = np.ones(self.size, dtype=bool)
            for c in range(self.k.n):
                col &= self.bit(a, c) == self.bit(b, c)
            self._row_eq[key] = col
        return col

    def row_empty(self, a: int) -> np.ndarray:
        col = self._row_empty.get(a)
        if col is None:
            col = np.ones(self.size, dtype=bool)
            for c in range(self.k.n):
                col &= ~self.bit(a, c)
            self._row_empty[a] = col
        return col

    def ee_eq(self, x: int, y: int) -> np.ndarray:
        """Stutter equivalence of the experience sequences of x and y."""
        if x > y:
            x, y = y, x
        key = (x, y)
        col = self._ee_eq.get(key)
        if col is None:
            col = self._stutter_dp(self.k.chains[x], self.k.chains[y])
            self._ee_eq[key] = col
        return col

    def _stutter_dp(self, a: tuple[int, ...], b: tuple[int, ...]) -> np.ndarray:
        p, q = len(a), len(b)
        table: dict[tuple[int, int], np.ndarray] = {}
        for i in reversed(range(p)):
            for j in reversed(range(q)):
                head = self.row_eq(a[i], b[j])
                last_a, last_b = i == p - 1, j == q - 1
                if last_a and last_b:
                    table[(i, j)] = head
                    continue
                rest = np.zeros(self.size, dtype=bool)
                if not last_a:
                    rest |= self.row_eq(a[i + 1], a[i]) & table[(i + 1, j)]
                if not last_b:
                    rest |= self.row_eq(b[j + 1], b[j]) & table[(i, j + 1)]
                if not last_a and not last_b:
                    rest |= (
                        ~self.row_eq(a[i + 1], a[i])
                        & ~self.row_eq(b[j + 1], b[j])
                        & table[(i + 1, j + 1)]
                    )
                table[(i, j)] = head & rest
        return table[(0, 0)]

    # -- predicates -----------------------------------------------------

    def pred(self, name: str) -> np.ndarray:
        col = self._preds.get(name)
        if col is None:
            col = getattr(self, f"_pred_{name}")()
            self._preds[name] = col
        return col

    def _pred_pr_hcl(self) -> np.ndarray:
        k = self.k
        ok = np.ones(self.size, dtype=bool)
        for x in k.nonroots:
            h = k.parent[x]
            for y in range(k.n):
                cond = self.bit(h, y).copy()
                py = k.parent[y]
                if py is not None:
                    cond |= self.bit(h, py)
                    cond |= self.bit(x, py)
                ok &= ~self.bit(x, y) | cond
        return ok

    def _pred_pr_hc(self) -> np.ndarray:
        k = self.k
        ok = np.ones(self.size, dtype=bool)
        for x in k.nonroots:
            h = k.parent[x]
            for y in range(k.n):
                cond = np.zeros(self.size, dtype=bool)
                for z in k.chains[y]:
                    cond |= self.bit(h, z)
                ok &= ~self.bit(x, y) | cond
        return ok

    def _pred_spr(self) -> np.ndarray:
        k = self.k
        ok = np.ones(self.size, dtype=bool)
        for x in k.nonroots:
            h = k.parent[x]
            for y in range(k.n):
                py = k.parent[y]
                if py is None:
                    ok &= ~self.bit(x, y)
                else:
                    ok &= ~self.bit(x, y) | self.bit(h, py)
        return ok

    def _pred_synchronous(self) -> np.ndarray:
        bad = np.uint64(self.k.async_pair_mask)
        return (self.masks & bad) == np.uint64(0)

    def _pred_introspective(self) -> np.ndarray:
        # transitive and Euclidean iff related histories have equal rows
        ok = np.ones(self.size, dtype=bool)
        for a in range(self.k.n):
            for b in range(self.k.n):
                if a != b:
                    ok &= ~self.bit(a, b) | self.row_eq(a, b)
        return ok

    def _pred_persistent_insanity(self) -> np.ndarray:
        # checking parent-to-child steps suffices: emptiness propagates
        k = self.k
        ok = np.ones(self.size, dtype=bool)
        for c in k.nonroots:
            p = k.parent[c]
            ok &= ~(self.row_empty(p) & ~self.row_empty(c))
        return ok

    def _pred_pr_ee(self) -> np.ndarray:
        k = self.k
        ok = np.ones(self.size, dtype=bool)
        for x in range(k.n):
            for y in range(k.n):
                if x != y:
                    ok &= ~self.bit(x, y) | self.ee_eq(x, y)
        return ok

    # -- vectorized model checking ---------------------------------------

    def formula_columns(self, f: Formula, atom_masks: dict[str, int]) -> list[Value]:
        """Truth of ``f`` at each history, per mask; scalars where the
        relation cannot influence the value."""
        k = self.k
        if isinstance(f, Atom):
            s = atom_masks.get(f.name, 0)
            return [bool((s >> h) & 1) for h in range(k.n)]
        if isinstance(f, Top):
            return [True] * k.n
        if isinstance(f, Bot):
            return [False] * k.n
        if isinstance(f, Not):
            return [_vnot(v) for v in self.formula_columns(f.body, atom_masks)]
        if isinstance(f, And):
            lefts = self.formula_columns(f.left, atom_masks)
            rights = self.formula_columns(f.right, atom_masks)
            return [_vand(a, b) for a, b in zip(lefts, rights)]
        if isinstance(f, Or):
            lefts = self.formula_columns(f.left, atom_masks)
            rights = self.formula_columns(f.right, atom_masks)
            return [_vor(a, b) for a, b in zip(lefts, rights)]
        if isinstance(f, Implies):
            lefts = self.formula_columns(f.left, atom_masks)
            rights = self.formula_columns(f.right, atom_masks)
            return [_vor(_vnot(a), b) for a, b in zip(lefts, rights)]
        if isinstance(f, K):
            body = self.formula_columns(f.body, atom_masks)
            out: list[Value] = []
            for h in range(k.n):
                acc: Value = True
                for h2 in range(k.n):
                    acc = _vand(acc, _vor(_vnot(self.bit(h, h2)), body[h2]))
                out.append(acc)
            return out
        if isinstance(f, AfterDia):
            body = self.formula_columns(f.body, atom_masks)
            event_index = self.k.proto.event_names.index(f.event)
            out = []
            for h in range(k.n):
                child = k.child_table.get((h, event_index))
                out.append(False if child is None else body[child])
            return out
        raise TypeError(f"not a formula node: {f!r}")

    def formula_valid(self, f: Formula, atoms: Iterable[str]) -> np.ndarray:
        """Validity of ``f`` under every valuation of the listed atoms."""
        k = self.k
        names = sorted(atoms)
        ok: Value = True
        for bits in range(1 << (len(names) * k.n)):
            masks = {name: (bits >> (i * k.n)) & ((1 << k.n) - 1) for i, name in enumerate(names)}
            for col in self.formula_columns(f, masks):
                ok = _vand(ok, col)
        if isinstance(ok, bool):
            return np.full(self.size, ok, dtype=bool)
        return ok

    def star_valid_all_events(self) -> np.ndarray:
        """Every instance of the recall axiom (one per event) valid."""
        alphabet = self.k.proto.event_names
        ok: Value = True
        for e in alphabet:
            ok = _vand(ok, self.formula_valid(star_axiom(e, alphabet), ["p"]))
        if isinstance(ok, bool):
            return np.full(self.size, ok, dtype=bool)
        return ok


def sweep_violations_multi(
    proto: Protocol,
    violation_fns: dict[str, Callable[[ChunkContext], np.ndarray]],
    max_witnesses: int = 5,
    chunk_size: int = CHUNK_SIZE,
) -> dict[str, tuple[int, int, list[int]]]:
    """Run several violation predicates over every relation mask of a
    protocol in one pass (predicate columns are shared within a chunk).

    Returns, per name, (masks checked, violation count, first violating
    masks in ascending order).
    """
    kernel = ProtocolKernel(proto)
    total = kernel.mask_count
    violations = {name: 0 for name in violation_fns}
    witnesses: dict[str, list[int]] = {name: [] for name in violation_fns}
    for start in range(0, total, chunk_size):
        stop = min(start + chunk_size, total)
        masks = np.arange(start, stop, dtype=np.uint64)
        ctx = ChunkContext(kernel, masks)
        for name, fn in violation_fns.items():
            viol = fn(ctx)
            count = int(viol.sum())
            violations[name] += count
            if count and len(witnesses[name]) < max_witnesses:
                for idx in np.flatnonzero(viol)[: max_witnesses - len(witnesses[name])]:
                    witnesses[name].append(start + int(idx))
    return {name: (total, violations[name], witnesses[name]) for name in violation_fns}


def sweep_violations(
    proto: Protocol,
    violation_fn: Callable[[ChunkContext], np.ndarray],
    max_witnesses: int = 5,
    chunk_size: int = CHUNK_SIZE,
) -> tuple[int, int, list[int]]:
    """Single-predicate convenience wrapper around sweep_violations_multi."""
    return sweep_violations_multi(
        proto, {"it": violation_fn}, max_witnesses, chunk_size
    )["it"]

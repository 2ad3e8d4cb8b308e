"""Satisfaction, model validity, and frame validity.

``satisfies`` is the clause-for-clause recursive definition.  The validity
deciders instead compute whole truth sets bottom-up as history bitmasks
(one pass per subformula), which is what makes the exhaustive valuation
sweeps affordable; the two evaluation routes are cross-checked in the
tests.

Frame validity quantifies over all valuations of exactly the atoms
occurring in the formula (others cannot influence truth).  The sweep size
2^(atoms * histories) is guarded by a configurable ceiling.
"""

from __future__ import annotations

import os
from typing import Mapping, AbstractSet

from .errors import SearchSpaceTooLarge, UnknownEvent
from .formulas import AfterDia, And, Atom, Bot, Formula, Implies, K, Not, Or, Top
from .frames import Frame, HistoryId

Valuation = Mapping[str, AbstractSet[HistoryId]]

DEFAULT_VALUATION_CEILING = 1 << 24


def _check_valuation(frame: Frame, v: Valuation) -> None:
    n = frame.n_histories
    for atom, hs in v.items():
        for h in hs:
            if not 0 <= h < n:
                raise ValueError(f"valuation of {atom!r} names history {h} outside the frame")


def _event_index(frame: Frame, name: str) -> int:
    ev = frame.event_by_name.get(name)
    if ev is None:
        raise UnknownEvent(f"event {name!r} is not in the frame's alphabet")
    return ev.index


def satisfies(frame: Frame, v: Valuation, h: HistoryId, f: Formula) -> bool:
    """Direct recursive evaluation at one history."""
    _check_valuation(frame, v)
    return _sat(frame, v, h, f)


def _sat(frame: Frame, v: Valuation, h: HistoryId, f: Formula) -> bool:
    if isinstance(f, Atom):
        return h in v.get(f.name, ())
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _sat(frame, v, h, f.body)
    if isinstance(f, And):
        return _sat(frame, v, h, f.left) and _sat(frame, v, h, f.right)
    if isinstance(f, Or):
        return _sat(frame, v, h, f.left) or _sat(frame, v, h, f.right)
    if isinstance(f, Implies):
        return not _sat(frame, v, h, f.left) or _sat(frame, v, h, f.right)
    if isinstance(f, K):
        return all(_sat(frame, v, h2, f.body) for h2 in frame.access_rows[h])
    if isinstance(f, AfterDia):
        child = frame.child_table.get((h, _event_index(frame, f.event)))
        return child is not None and _sat(frame, v, child, f.body)
    raise TypeError(f"not a formula node: {f!r}")


def truth_set(frame: Frame, v: Valuation, f: Formula) -> int:
    """Bitmask over history ids where the formula holds."""
    _check_valuation(frame, v)
    masks = {name: _to_mask(hs) for name, hs in v.items()}
    return _truth(frame, masks, f)


def _to_mask(hs: AbstractSet[int]) -> int:
    m = 0
    for h in hs:
        m |= 1 << h
    return m


def _truth(frame: Frame, masks: Mapping[str, int], f: Formula) -> int:
    n = frame.n_histories
    full = (1 << n) - 1
    if isinstance(f, Atom):
        return masks.get(f.name, 0)
    if isinstance(f, Top):
        return full
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Not):
        return full & ~_truth(frame, masks, f.body)
    if isinstance(f, And):
        return _truth(frame, masks, f.left) & _truth(frame, masks, f.right)
    if isinstance(f, Or):
        return _truth(frame, masks, f.left) | _truth(frame, masks, f.right)
    if isinstance(f, Implies):
        return (full & ~_truth(frame, masks, f.left)) | _truth(frame, masks, f.right)
    if isinstance(f, K):
        t = _truth(frame, masks, f.body)
        rows = frame.access_row_masks
        out = 0
        for h in range(n):
            if rows[h] & ~t == 0:
                out |= 1 << h
        return out
    if isinstance(f, AfterDia):
        t = _truth(frame, masks, f.body)
        idx = _event_index(frame, f.event)
        out = 0
        for (h, e), child in frame.child_table.items():
            if e == idx and (t >> child) & 1:
                out |= 1 << h
        return out
    raise TypeError(f"not a formula node: {f!r}")


def valid_on_model(frame: Frame, v: Valuation, f: Formula) -> tuple[bool, HistoryId | None]:
    """Truth at every history; on failure, the first failing history."""
    t = truth_set(frame, v, f)
    for h in range(frame.n_histories):
        if not (t >> h) & 1:
            return False, h
    return True, None


def valid_on_frame(
    frame: Frame,
    f: Formula,
    ceiling: int | None = None,
) -> tuple[bool, tuple[dict[str, frozenset[HistoryId]], HistoryId] | None]:
    """Validity under every valuation of the atoms occurring in ``f``.

    Valuations are enumerated as bitmasks in ascending order, so the
    returned countermodel (valuation, history) is deterministic.  Raises
    SearchSpaceTooLarge when 2^(atoms * histories) exceeds the ceiling
    (default 2^24, overridable via the ETL_CEILING environment variable).
    """
    if ceiling is None:
        ceiling = int(os.environ.get("ETL_CEILING", DEFAULT_VALUATION_CEILING))
    atoms = sorted(f.atoms())
    n = frame.n_histories
    total = 1 << (len(atoms) * n)
    if total > ceiling:
        raise SearchSpaceTooLarge(
            f"{len(atoms)} atoms over {n} histories means {total} valuations, "
            f"above the ceiling {ceiling}"
        )
    full = (1 << n) - 1
    hist_mask = full
    for bits in range(total):
        masks = {
            atom: (bits >> (a * n)) & hist_mask for a, atom in enumerate(atoms)
        }
        t = _truth(frame, masks, f)
        if t != full:
            h = next(i for i in range(n) if not (t >> i) & 1)
            valuation = {
                atom: frozenset(i for i in range(n) if (masks[atom] >> i) & 1)
                for atom in atoms
            }
            return False, (valuation, h)
    return True, None

"""The perfect-recall frame conditions.

Five one-step/whole-history conditions are decided here, all by exhaustive
quantifier checking:

* ``pr_ee``   -- related histories have stutter-equivalent sequences of
                 information sets along their prefixes;
* ``pr_hc``   -- histories considered possible after an event extend
                 histories considered possible before it;
* ``pr_hcl``  -- the local three-disjunct refinement of ``pr_hc``;
* ``spr``     -- the synchronous variant (extension by exactly one event);
* ``wspr``    -- the weak synchronous variant (roots exempted);

plus ``pr``, the combination of ``pr_ee`` and ``pr_hcl``.

Every verdict carries a replayable witness when the property fails, chosen
first in canonical history order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frames import Frame, HistoryId

PROPERTY_NAMES = ("pr_ee", "pr_hc", "pr_hcl", "spr", "wspr", "pr")


@dataclass(frozen=True)
class EpistemicExperience:
    """The sequence of information sets along the prefixes of a history.

    ``raw`` has one entry per prefix (root first); ``compressed`` merges
    runs of adjacent equal sets, which is what stutter equivalence
    compares.
    """

    raw: tuple[frozenset[HistoryId], ...]

    @property
    def compressed(self) -> tuple[frozenset[HistoryId], ...]:
        out: list[frozenset[int]] = []
        for s in self.raw:
            if not out or out[-1] != s:
                out.append(s)
        return tuple(out)


@dataclass(frozen=True)
class RecallVerdict:
    """Outcome of one recall check.

    ``witness`` is present iff the property failed; its shape depends on
    the property (see each checker), so ``witness_labels`` carries the
    display form of the same tuple.
    """

    prop: str
    holds: bool
    witness: tuple[HistoryId, ...] | None = None
    detail: str = ""
    witness_labels: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def epistemic_experience(frame: Frame, h: HistoryId) -> EpistemicExperience:
    rows = frame.access_rows
    return EpistemicExperience(tuple(rows[p] for p in frame.prefix_chain(h)))


def stutter_equivalent(a: EpistemicExperience, b: EpistemicExperience) -> bool:
    return a.compressed == b.compressed


def has_pr_ee(frame: Frame) -> RecallVerdict:
    """Whenever h ~ h', the experiences EE(h) and EE(h') are stutter
    equivalent."""
    ee = [epistemic_experience(frame, h) for h in range(frame.n_histories)]
    for a, b in frame.access_sorted:
        if not stutter_equivalent(ee[a], ee[b]):
            return RecallVerdict(
                "pr_ee", False, (a, b),
                f"{frame.label(a)} ~ {frame.label(b)} but their experiences differ",
                (frame.label(a), frame.label(b)),
            )
    return RecallVerdict("pr_ee", True)


def has_pr_hc(frame: Frame) -> RecallVerdict:
    """For every he ~ h' some prefix of h' is accessible from h.

    Witness on failure: (h, e, h') with no h'' satisfying h ~ h'' and
    h'' a prefix of h'.
    """
    rows = frame.access_rows
    for x, y in frame.access_sorted:
        h = frame.parent[x]
        if h is None:
            continue
        if not any(z in rows[h] for z in frame.prefix_chain(y)):
            e = frame.histories[x][1][-1]
            return RecallVerdict(
                "pr_hc", False, (h, e, y),
                f"{frame.label(x)} ~ {frame.label(y)} but no prefix of "
                f"{frame.label(y)} is accessible from {frame.label(h)}",
                (frame.label(h), frame.events[e].name, frame.label(y)),
            )
    return RecallVerdict("pr_hc", True)


def pr_hc_by_inclusion(frame: Frame) -> bool:
    """The same condition in image form: [he] is included in the
    leadsto-star image of [h], for every history h and event e.  Kept as an
    independent route and cross-checked against has_pr_hc in the tests."""
    for x in range(frame.n_histories):
        h = frame.parent[x]
        if h is None:
            continue
        reachable = frame.image_set(frame.image(h, "access"), "leadsto_star")
        if not frame.image(x, "access") <= reachable:
            return False
    return True


def has_pr_hcl(frame: Frame) -> RecallVerdict:
    """The local form: every h' with he ~ h' satisfies one of
    (i) h ~ h', (ii) h ~ h'' for the predecessor h'' of h', or
    (iii) he ~ h'' for the predecessor h'' of h'."""
    rows = frame.access_rows
    for x, y in frame.access_sorted:
        h = frame.parent[x]
        if h is None:
            continue
        if y in rows[h]:
            continue
        py = frame.parent[y]
        if py is not None and (py in rows[h] or py in rows[x]):
            continue
        e = frame.histories[x][1][-1]
        failed = [f"(i) {frame.label(h)} !~ {frame.label(y)}"]
        if py is None:
            failed.append(f"(ii)/(iii) {frame.label(y)} is a root, no predecessor")
        else:
            failed.append(f"(ii) {frame.label(h)} !~ {frame.label(py)}")
            failed.append(f"(iii) {frame.label(x)} !~ {frame.label(py)}")
        return RecallVerdict(
            "pr_hcl", False, (h, e, y), "; ".join(failed),
            (frame.label(h), frame.events[e].name, frame.label(y)),
        )
    return RecallVerdict("pr_hcl", True)


def has_spr(frame: Frame) -> RecallVerdict:
    """Every h' with he ~ h' extends some member of [h] by exactly one
    event."""
    rows = frame.access_rows
    for x, y in frame.access_sorted:
        h = frame.parent[x]
        if h is None:
            continue
        py = frame.parent[y]
        if py is not None and py in rows[h]:
            continue
        e = frame.histories[x][1][-1]
        return RecallVerdict(
            "spr", False, (h, e, y),
            f"{frame.label(x)} ~ {frame.label(y)} but {frame.label(y)} does not "
            f"extend a member of the information set at {frame.label(h)} by one event",
            (frame.label(h), frame.events[e].name, frame.label(y)),
        )
    return RecallVerdict("spr", True)


def has_wspr(frame: Frame, allowed_roots: frozenset[HistoryId] | None = None) -> RecallVerdict:
    """Like spr but h' may also be a root.

    On a single tree the exempted set is {root}; on a forest it is the set
    of all roots.  ``allowed_roots`` overrides the exempted set.
    Witness on failure: (he, h'e', h, h').
    """
    rows = frame.access_rows
    exempt = frame.roots if allowed_roots is None else frozenset(allowed_roots)
    for x, y in frame.access_sorted:
        h = frame.parent[x]
        if h is None:
            continue
        if y in exempt:
            continue
        py = frame.parent[y]
        if py is not None and py in rows[h]:
            continue
        if py is None:
            return RecallVerdict(
                "wspr", False, (x, y),
                f"{frame.label(x)} ~ {frame.label(y)}, a root outside the exempted set",
                (frame.label(x), frame.label(y)),
            )
        return RecallVerdict(
            "wspr", False, (x, y, h, py),
            f"{frame.label(x)} ~ {frame.label(y)} but "
            f"{frame.label(h)} !~ {frame.label(py)}",
            (frame.label(x), frame.label(y), frame.label(h), frame.label(py)),
        )
    return RecallVerdict("wspr", True)


def has_pr_combined(frame: Frame) -> RecallVerdict:
    """pr_ee and pr_hcl together; when both fail, the witness is the pr_ee
    one and the detail reports both."""
    ee = has_pr_ee(frame)
    hcl = has_pr_hcl(frame)
    if ee.holds and hcl.holds:
        return RecallVerdict("pr", True)
    parts = [v.detail for v in (ee, hcl) if not v.holds]
    first = ee if not ee.holds else hcl
    return RecallVerdict("pr", False, first.witness, "; ".join(parts), first.witness_labels)


CHECKS = {
    "pr_ee": has_pr_ee,
    "pr_hc": has_pr_hc,
    "pr_hcl": has_pr_hcl,
    "spr": has_spr,
    "wspr": has_wspr,
    "pr": has_pr_combined,
}

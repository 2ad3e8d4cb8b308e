"""Bounded morphisms between frames, and the non-definability witness.

A bounded morphism is a total map on histories satisfying the forth and
back conditions for the accessibility relation and for each event-labelled
one-step extension relation separately (the step modality is labelled, so
the label must be preserved).  Validity of formulas transfers from a frame
to any of its bounded morphic images, which is what makes the witness
report at the bottom an impossibility proof: the recall combination holds
on the source, fails on the image, hence no formula set can pin it down.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import NonTotalMap
from .frames import Frame, HistoryId


@dataclass(frozen=True)
class BoundedMorphism:
    source: Frame
    target: Frame
    mapping: Mapping[HistoryId, HistoryId]

    def describe(self) -> list[tuple[str, str]]:
        return [
            (self.source.ref(a), self.target.ref(b))
            for a, b in sorted(self.mapping.items())
        ]


@dataclass(frozen=True)
class MorphismCheck:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _relations(frame: Frame):
    """The checked relations: accessibility plus one step relation per
    event name."""
    yield "access", {(a, b) for a, b in frame.access}
    for e in frame.events:
        pairs = set()
        for (h, idx), child in frame.child_table.items():
            if idx == e.index:
                pairs.add((h, child))
        yield f"step:{e.name}", pairs


def check_bounded_morphism(m: BoundedMorphism) -> MorphismCheck:
    """Decide the forth and back conditions; the first broken clause (in
    canonical order) is reported."""
    src, dst = m.source, m.target
    mapping = dict(m.mapping)
    missing = [h for h in range(src.n_histories) if h not in mapping]
    if missing:
        raise NonTotalMap(
            f"map is not total on the source: missing {src.ref(missing[0])!r}"
        )
    for h, t in mapping.items():
        if not 0 <= t < dst.n_histories:
            raise NonTotalMap(f"map sends {src.ref(h)!r} outside the target frame")

    target_rels = dict(_relations(dst))
    for name, src_pairs in _relations(src):
        dst_pairs = target_rels.get(name, set())
        for a, b in sorted(src_pairs):
            if (mapping[a], mapping[b]) not in dst_pairs:
                return MorphismCheck(
                    False,
                    f"forth fails for {name}: {src.ref(a)} R {src.ref(b)} in the "
                    f"source but {dst.ref(mapping[a])} !R {dst.ref(mapping[b])} "
                    "in the target",
                )
        for a in range(src.n_histories):
            succ = {mapping[b] for x, b in src_pairs if x == a}
            for t in sorted(x for h, x in dst_pairs if h == mapping[a]):
                if t not in succ:
                    return MorphismCheck(
                        False,
                        f"back fails for {name}: {dst.ref(mapping[a])} R "
                        f"{dst.ref(t)} in the target has no source pair at "
                        f"{src.ref(a)}",
                    )
    return MorphismCheck(True)


def compose(m1: BoundedMorphism, m2: BoundedMorphism) -> BoundedMorphism:
    if m1.target is not m2.source and m1.target != m2.source:
        raise ValueError("morphisms do not compose: target/source mismatch")
    return BoundedMorphism(
        m1.source, m2.target, {h: m2.mapping[t] for h, t in m1.mapping.items()}
    )


def identity_morphism(frame: Frame) -> BoundedMorphism:
    return BoundedMorphism(frame, frame, {h: h for h in range(frame.n_histories)})


@dataclass(frozen=True)
class NondefinabilityReport:
    """Three facts that together rule out a defining formula set for the
    combined recall property on introspective forests."""

    source_has_pr: bool
    target_has_pr: bool
    morphism_valid: bool

    @property
    def establishes_nondefinability(self) -> bool:
        return self.source_has_pr and not self.target_has_pr and self.morphism_valid

    def to_json(self) -> str:
        return json.dumps(
            {
                "source_has_pr": self.source_has_pr,
                "target_has_pr": self.target_has_pr,
                "morphism_valid": self.morphism_valid,
                "establishes_nondefinability": self.establishes_nondefinability,
            },
            sort_keys=True,
        )


def nondefinability_witness(morphism: BoundedMorphism | None = None) -> NondefinabilityReport:
    """Assemble the witness report; defaults to the bundled fig4 morphism.

    Passing a different morphism (e.g. the identity on the source) serves
    as a negative control: the report then simply fails to establish
    anything.
    """
    from .fixtures import fig4_morphism
    from .recall import has_pr_combined

    if morphism is None:
        morphism = fig4_morphism()
    return NondefinabilityReport(
        source_has_pr=has_pr_combined(morphism.source).holds,
        target_has_pr=has_pr_combined(morphism.target).holds,
        morphism_valid=check_bounded_morphism(morphism).ok,
    )

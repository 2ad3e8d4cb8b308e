"""One-stop property table over a frame.

Collects every recall and relation property the CLI reports, each with a
witness string when it fails.  Property names double as the CLI's --prop
vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import recall, relations
from .frames import Frame

PROPERTY_NAMES = (
    "pr_ee",
    "pr_hc",
    "pr_hcl",
    "spr",
    "wspr",
    "pr",
    "s5",
    "introspective",
    "synchronous",
    "persistent_insanity",
    "initially_synchronous",
)


@dataclass(frozen=True)
class PropertyVerdict:
    name: str
    holds: bool
    witness: str = ""


def _relation_verdict(frame: Frame, name: str, flags: tuple[str, ...]) -> PropertyVerdict:
    report = relations.relation_report(frame)
    for flag in flags:
        if not report.flag(flag):
            witness = ", ".join(frame.label(h) for h in report.witnesses[flag])
            return PropertyVerdict(name, False, f"not {flag}: ({witness})")
    return PropertyVerdict(name, True)


def property_verdict(frame: Frame, name: str) -> PropertyVerdict:
    if name in recall.CHECKS:
        v = recall.CHECKS[name](frame)
        if v.holds:
            return PropertyVerdict(name, True)
        witness = f"({', '.join(v.witness_labels)})" if v.witness_labels else ""
        return PropertyVerdict(name, False, f"witness {witness}: {v.detail}".strip())
    if name == "s5":
        return _relation_verdict(frame, name, ("reflexive", "symmetric", "transitive"))
    if name == "introspective":
        return _relation_verdict(frame, name, ("transitive", "euclidean"))
    if name == "synchronous":
        return _relation_verdict(frame, name, ("synchronous",))
    if name == "persistent_insanity":
        return PropertyVerdict(name, relations.persistent_insanity(frame))
    if name == "initially_synchronous":
        return PropertyVerdict(name, relations.initially_synchronous(frame))
    raise ValueError(f"unknown property {name!r}; known: {', '.join(PROPERTY_NAMES)}")


def property_table(frame: Frame, names: tuple[str, ...] = PROPERTY_NAMES) -> list[PropertyVerdict]:
    return [property_verdict(frame, name) for name in names]

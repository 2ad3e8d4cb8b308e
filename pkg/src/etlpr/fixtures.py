"""Bundled example frames.

Eight small frames (fig1a .. fig4b) plus one bounded morphism
(fig4-morphism) that exercise every corner of the recall conditions: each
carries the expected property verdicts it was designed to exhibit, and the
test suite holds the checkers to exactly those verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownFixture
from .frames import Frame, build_frame
from .morphisms import BoundedMorphism


@dataclass(frozen=True)
class FixtureInfo:
    name: str
    description: str
    frame: Frame
    expected: dict[str, bool]


def _equivalence(classes: list[list[str]]) -> list[tuple[str, str]]:
    return [(a, b) for cls in classes for a in cls for b in cls]


def _fig1a() -> FixtureInfo:
    frame = build_frame(
        ["e1", "e2", "e3"],
        [("r1", ["", "e1", "e2", "e1.e3", "e2.e3"])],
        _equivalence([["", "e1"], ["e2", "e1.e3", "e2.e3"]]),
    )
    return FixtureInfo(
        "fig1a",
        "tree with two branches sharing a tail event; information sets "
        "{root,e1} and {e2,e1.e3,e2.e3}",
        frame,
        {
            "pr_ee": True, "pr_hc": True, "pr_hcl": True, "pr": True,
            "spr": False, "wspr": False,
            "s5": True, "introspective": True, "synchronous": False,
        },
    )


def _fig1b() -> FixtureInfo:
    frame = build_frame(
        ["e1", "e2"],
        [("r1", ["", "e1"]), ("r2", ["", "e2"])],
        _equivalence([["r1:e1", "r2"], ["r1"], ["r2:e2"]]),
    )
    return FixtureInfo(
        "fig1b",
        "two single-edge trees; after e1 the agent confuses the other root "
        "with the present",
        frame,
        {
            "pr_ee": False, "pr_hc": False, "pr_hcl": False, "pr": False,
            "spr": False, "wspr": True,
            "s5": True, "synchronous": False,
        },
    )


def _fig3a() -> FixtureInfo:
    frame = build_frame(
        ["e1", "e2", "e3"],
        [("r1", ["", "e1", "e2", "e1.e3", "e2.e3"])],
        [
            ("e2", "e1"),
            ("e1.e3", "e2.e3"), ("e2.e3", "e1.e3"),
            ("", ""), ("e1", "e1"), ("e1.e3", "e1.e3"), ("e2.e3", "e2.e3"),
        ],
    )
    return FixtureInfo(
        "fig3a",
        "experience-faithful but history-inconsistent: e1.e3 ~ e2.e3 while "
        "no prefix of e2.e3 is accessible from e1",
        frame,
        {
            "pr_ee": True, "pr_hc": False, "pr_hcl": False, "pr": False,
            "s5": False, "introspective": True, "synchronous": True,
        },
    )


def _fig3b() -> FixtureInfo:
    frame = build_frame(
        ["e1", "e2", "e3"],
        [("r1", ["", "e1", "e2", "e3"])],
        [("e1", "e2"), ("e2", "e3"), ("", ""), ("e3", "e3")],
    )
    return FixtureInfo(
        "fig3b",
        "three leaves in a chain of one-way confusions",
        frame,
        {
            "pr_ee": False, "pr_hc": True, "pr_hcl": True,
            "s5": False, "introspective": False,
        },
    )


def _fig3c() -> FixtureInfo:
    frame = build_frame(
        ["e1", "e2", "e3"],
        [("r1", ["", "e1", "e2", "e2.e3"])],
        [
            ("e1", "e2.e3"), ("", "e2"),
            ("", ""), ("e2", "e2"), ("e2.e3", "e2.e3"),
        ],
    )
    return FixtureInfo(
        "fig3c",
        "history-consistent but the agent at e1 is certain of a history "
        "whose past experience differs",
        frame,
        {
            "pr_ee": False, "pr_hc": True, "pr_hcl": True,
            "introspective": False,
        },
    )


def _fig3d() -> FixtureInfo:
    frame = build_frame(
        ["e1", "e2", "e3"],
        [("r1", ["", "e1", "e2", "e2.e3"])],
        [("e1", "e2.e3"), ("", ""), ("e2", "e2"), ("e2.e3", "e2.e3")],
    )
    return FixtureInfo(
        "fig3d",
        "like fig3c without the root confusion: consistent globally but "
        "not locally (e1 ~ e2.e3 with no accessible intermediate)",
        frame,
        {
            "pr_ee": False, "pr_hc": True, "pr_hcl": False, "pr": False,
        },
    )


def _fig4a() -> FixtureInfo:
    frame = build_frame(
        ["e1"],
        [("r1", ["", "e1"]), ("r2", [""])],
        [("r1", "r1"), ("r1:e1", "r1:e1"), ("r2", "r1:e1")],
    )
    return FixtureInfo(
        "fig4a",
        "two trees; the bare root confuses itself with a later state of "
        "the other tree",
        frame,
        {
            "pr_ee": False, "pr_hc": True, "pr_hcl": True, "pr": False,
            "introspective": True, "initially_synchronous": False,
        },
    )


def _fig4b() -> FixtureInfo:
    frame = build_frame(
        ["e1"],
        [("r1", ["", "e1"]), ("r2", [""]), ("r3", [""])],
        [("r1", "r1"), ("r1:e1", "r1:e1"), ("r2", "r3"), ("r3", "r3")],
    )
    return FixtureInfo(
        "fig4b",
        "three trees; root-to-root confusion only, so both recall readings "
        "hold",
        frame,
        {
            "pr_ee": True, "pr_hc": True, "pr_hcl": True, "pr": True,
            "introspective": True, "initially_synchronous": True,
        },
    )


_BUILDERS = (_fig1a, _fig1b, _fig3a, _fig3b, _fig3c, _fig3d, _fig4a, _fig4b)
FIXTURE_NAMES = tuple(b.__name__.lstrip("_") for b in _BUILDERS)
MORPHISM_NAME = "fig4-morphism"


def fixture_info(name: str) -> FixtureInfo:
    for builder in _BUILDERS:
        if builder.__name__.lstrip("_") == name:
            return builder()
    raise UnknownFixture(f"unknown fixture {name!r}")


def fixture(name: str) -> Frame:
    return fixture_info(name).frame


def all_fixtures() -> tuple[FixtureInfo, ...]:
    return tuple(b() for b in _BUILDERS)


def fig4_morphism() -> BoundedMorphism:
    """The structure-preserving map from fig4b onto fig4a: r1 and its
    extension map identically, r2 to r2, and r3 onto the e1-extension."""
    source = fixture("fig4b")
    target = fixture("fig4a")
    pairs = [("r1", "r1"), ("r1:e1", "r1:e1"), ("r2", "r2"), ("r3", "r1:e1")]
    mapping = {source.resolve(a): target.resolve(b) for a, b in pairs}
    return BoundedMorphism(source, target, mapping)

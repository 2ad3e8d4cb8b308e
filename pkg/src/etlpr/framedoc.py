"""The textual frame-document format.

A document is YAML with exactly these keys::

    events: ["e1", "e2"]            # event alphabet
    trees:                          # one entry per tree
    - root: "r1"
      histories: ["", "e1"]         # dotted event paths, "" is the root
    access:                         # ordered accessibility pairs
    - ["e1", "r2:..."]              # refs: bare path (single tree),
    symmetric: true                 #   root name, or "root:path"
                                    # optional: add all converse pairs

Unknown keys are rejected so typos in hand-written frames fail loudly.
Serialization is canonical (events, trees, histories and access pairs all
sorted), and parsing a serialized frame reproduces it exactly.
"""

from __future__ import annotations

from typing import Any

import yaml

from .errors import FrameDocumentError, FrameError
from .frames import Frame, build_frame

_TOP_KEYS = {"events", "trees", "access", "symmetric"}
_TREE_KEYS = {"root", "histories"}


def _string_list(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise FrameDocumentError(f"{where} must be a list of strings")
    return value


def parse_frame_dict(data: Any) -> Frame:
    """Build a frame from already-loaded document data (strict keys)."""
    if not isinstance(data, dict):
        raise FrameDocumentError("document must be a mapping")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise FrameDocumentError(f"unknown document keys: {sorted(unknown)}")
    for key in ("events", "trees"):
        if key not in data:
            raise FrameDocumentError(f"missing required key {key!r}")
    events = _string_list(data["events"], "events")
    if not isinstance(data["trees"], list):
        raise FrameDocumentError("trees must be a list")
    trees = []
    for i, entry in enumerate(data["trees"]):
        if not isinstance(entry, dict) or set(entry) != _TREE_KEYS:
            raise FrameDocumentError(
                f"trees[{i}] must be a mapping with exactly the keys root, histories"
            )
        if not isinstance(entry["root"], str):
            raise FrameDocumentError(f"trees[{i}].root must be a string")
        trees.append((entry["root"], _string_list(entry["histories"], f"trees[{i}].histories")))
    access = []
    for i, pair in enumerate(data.get("access", [])):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise FrameDocumentError(f"access[{i}] must be a pair of history references")
        access.append((pair[0], pair[1]))
    symmetric = data.get("symmetric", False)
    if not isinstance(symmetric, bool):
        raise FrameDocumentError("symmetric must be a boolean")
    try:
        return build_frame(events, trees, access, symmetric=symmetric)
    except FrameError as exc:
        raise FrameDocumentError(str(exc)) from exc


def parse_frame_document(text: str) -> Frame:
    """Parse the YAML text of a frame document."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise FrameDocumentError(
                f"malformed document: {getattr(exc, 'problem', 'syntax error')}",
                line=mark.line + 1,
                column=mark.column + 1,
            ) from exc
        raise FrameDocumentError(f"malformed document: {exc}") from exc
    return parse_frame_dict(data)


def frame_to_dict(frame: Frame) -> dict[str, Any]:
    """Canonical plain-data form of a frame (JSON/YAML friendly)."""
    trees = []
    for tree, root in enumerate(frame.root_names):
        paths = [
            ".".join(frame.seq_names(h))
            for h in range(frame.n_histories)
            if frame.tree_of[h] == tree
        ]
        trees.append({"root": root, "histories": paths})
    return {
        "events": [e.name for e in frame.events],
        "trees": trees,
        "access": [[frame.ref(a), frame.ref(b)] for a, b in frame.access_sorted],
    }


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_frame(frame: Frame) -> str:
    """Canonical document text; line oriented, fully sorted."""
    data = frame_to_dict(frame)
    lines = [f"events: [{', '.join(_q(e) for e in data['events'])}]"]
    lines.append("trees:")
    for tree in data["trees"]:
        lines.append(f"- root: {_q(tree['root'])}")
        lines.append(f"  histories: [{', '.join(_q(p) for p in tree['histories'])}]")
    if data["access"]:
        lines.append("access:")
        for a, b in data["access"]:
            lines.append(f"- [{_q(a)}, {_q(b)}]")
    else:
        lines.append("access: []")
    return "\n".join(lines) + "\n"

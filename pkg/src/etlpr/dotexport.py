"""DOT (graphviz) rendering of frames.

Solid edges carry event labels (the one-step extension relation); dashed
edges show accessibility, with mutually related pairs collapsed into a
single two-headed edge.  Roots are drawn as double circles.  Node and
edge order follow the canonical history order, so output is stable.
"""

from __future__ import annotations

from .frames import Frame


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def frame_to_dot(frame: Frame) -> str:
    lines = ["digraph frame {", "  rankdir=BT;"]
    for h in range(frame.n_histories):
        shape = "doublecircle" if h in frame.roots else "circle"
        lines.append(f"  {_quote(frame.label(h))} [shape={shape}];")
    for (h, e), child in sorted(frame.child_table.items(), key=lambda kv: kv[1]):
        lines.append(
            f"  {_quote(frame.label(h))} -> {_quote(frame.label(child))}"
            f" [label={_quote(frame.events[e].name)}];"
        )
    drawn = set()
    for a, b in frame.access_sorted:
        if (a, b) in drawn:
            continue
        attrs = ["style=dashed"]
        if a != b and (b, a) in frame.access:
            attrs.append("dir=both")
            drawn.add((b, a))
        drawn.add((a, b))
        lines.append(
            f"  {_quote(frame.label(a))} -> {_quote(frame.label(b))}"
            f" [{', '.join(attrs)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"

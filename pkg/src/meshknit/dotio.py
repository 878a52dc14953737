"""Deterministic DOT rendering of windows, folded quivers and presentations.

Projective points are drawn as boxes, relations as dashed constraint edges
labelled by their kind.  Output is sorted, so byte-identical across runs.
"""

from __future__ import annotations

from .errors import UnsupportedObject
from .present import CommuteRel, PowerCommuteRel, QuiverPresentation, ScaledCommuteRel, ZeroRel
from .ztquiver import FoldedQuiver, QuiverWindow


def _window_dot(window: QuiverWindow) -> str:
    lines = ["digraph window {", "  rankdir=LR;"]
    for p in sorted(window.points):
        shape = "box" if p.proj else "ellipse"
        lines.append(f'  "{p}" [shape={shape}];')
    for a, b in sorted(window.arrows):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _folded_dot(q: FoldedQuiver) -> str:
    lines = [f'digraph "{q.label}" {{', "  rankdir=LR;"]
    for p in sorted(q.points):
        shape = "box" if p.proj else "ellipse"
        lines.append(f'  "{p}" [shape={shape}];')
    for a, b in sorted(q.arrows):
        lines.append(f'  "{a}" -> "{b}";')
    for p, t in sorted(q.tau.items()):
        lines.append(f'  "{p}" -> "{t}" [style=dotted, constraint=false, label="tau"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _presentation_dot(pres: QuiverPresentation) -> str:
    lines = ["digraph presentation {", "  rankdir=LR;"]
    for p in sorted(pres.points):
        lines.append(f'  "{p}" [shape=box];')
    for a in sorted(pres.arrows, key=lambda a: a.label):
        extra = f' [label="{a.label}"]' if a.shift == 0 else f' [label="{a.label} (nu^-1)", style=bold]'
        lines.append(f'  "{a.src}" -> "{a.dst}"{extra};')
    by_label = pres.arrow_by_label()

    def ends(path):
        return by_label[path[0]].src, by_label[path[-1]].dst

    for r in sorted(pres.relations, key=repr):
        if isinstance(r, ZeroRel):
            s, t = ends(r.path)
            label = "zero"
        elif isinstance(r, CommuteRel):
            s, t = ends(r.lhs)
            label = "commute"
        elif isinstance(r, ScaledCommuteRel):
            s, t = ends(r.lhs)
            label = f"scaled_commute a={r.a}"
        elif isinstance(r, PowerCommuteRel):
            s, t = ends(r.lhs)
            label = f"power_commute m={r.m}"
        else:  # pragma: no cover
            continue
        lines.append(f'  "{s}" -> "{t}" [style=dashed, constraint=false, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_dot(obj) -> str:
    """Render a window, folded quiver or presentation as DOT text."""
    if isinstance(obj, QuiverWindow):
        return _window_dot(obj)
    if isinstance(obj, FoldedQuiver):
        return _folded_dot(obj)
    if isinstance(obj, QuiverPresentation):
        return _presentation_dot(obj)
    raise UnsupportedObject(f"cannot render a {type(obj).__name__} as DOT")

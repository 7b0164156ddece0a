"""Graphviz output for Hasse diagrams and explored windows."""

from __future__ import annotations

from typing import Iterable

from .bits import iter_bits
from .checks import extreme_point_join
from .explorer import LazyLattice, Window
from .lattice import FiniteLattice


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(L: FiniteLattice, annotations: Iterable[str] = ("ji",), witness: Iterable[int] = (),
             extreme_of: int | None = None) -> str:
    """Hasse diagram drawn bottom to top.

    ``ji`` double-circles join irreducibles, ``witness`` fills the given ids,
    ``extreme`` boxes the extreme points of ``extreme_of`` (default: top).
    """
    annotations = set(annotations)
    witness = set(witness)
    extreme = set()
    if "extreme" in annotations:
        extreme, _ = extreme_point_join(L, L.top if extreme_of is None else extreme_of)
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, name in enumerate(L.names):
        attrs = [f"label={_quote(name)}"]
        if "ji" in annotations and i in L.ji:
            attrs.append("shape=doublecircle")
        if i in extreme:
            attrs.append("color=blue")
            attrs.append("penwidth=2")
        if "witness" in annotations and i in witness:
            attrs.append("style=filled")
            attrs.append("fillcolor=salmon")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for a in range(len(L)):
        for b in iter_bits(L.upper[a]):
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_window_dot(LL: LazyLattice, W: Window, witness: Iterable[str] = ()) -> str:
    """Explored window; truncated elements are dashed and tagged with an ellipsis."""
    ids = {e: k for k, e in enumerate(W.elements)}
    witness = set(witness)
    truncated = W.truncated
    lines = [f"digraph {_quote(LL.name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for e, k in ids.items():
        label = LL.label(e)
        attrs = [f"label={_quote(label)}"]
        known = W.known_covers(e)
        if known is not None and len(known) == 1:
            attrs.append("shape=doublecircle")
        styles = []
        if e in truncated:
            styles.append("dashed")
            attrs.append('xlabel="..."')
        if label in witness:
            styles.append("filled")
            attrs.append("fillcolor=salmon")
        if styles:
            attrs.append(f"style={_quote(','.join(styles))}")
        lines.append(f"  w{k} [{', '.join(attrs)}];")
    for e in W.elements:
        for c in W.covers.get(e, ()):
            lines.append(f"  w{ids[c]} -> w{ids[e]};")
    lines.append("}")
    return "\n".join(lines) + "\n"

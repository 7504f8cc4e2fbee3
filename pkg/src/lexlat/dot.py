"""Graphviz DOT export for Hasse diagrams of forests and of their ideal lattices."""

from __future__ import annotations

from .ideals import classify_ideal, enumerate_ideals
from .poset import ForestPoset

__all__ = ["hasse_dot", "ideal_lattice_dot"]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(P: ForestPoset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in P.elements:
        lines.append(f"  {_quote(x)};")
    for x in P.elements:
        p = P.parent(x)
        if p is not None:
            lines.append(f"  {_quote(p)} -> {_quote(x)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ideal_lattice_dot(P: ForestPoset, name: str = "ideals") -> str:
    """Nodes are upper sets labelled with P (prime), L (local), M (maximal), min (minimal)."""
    handles = enumerate_ideals(P)
    index = {h.members: i for i, h in enumerate(handles)}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, h in enumerate(handles):
        glyphs = classify_ideal(h).glyphs()
        label = _quote(repr(h))
        if glyphs:
            label = label[:-1] + "\\n" + glyphs + '"'
        lines.append(f"  U{i} [label={label}];")
    # covers in the upper-set lattice add exactly one point
    for h in handles:
        for x in sorted(h.complement, key=P.sort_key):
            bigger = h.members | {x}
            if bigger in index:
                lines.append(f"  U{index[h.members]} -> U{index[bigger]};")
    lines.append("}")
    return "\n".join(lines) + "\n"

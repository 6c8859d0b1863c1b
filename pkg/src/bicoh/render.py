"""Two-row linkage diagrams of a relation between letter occurrences.

Source occurrences sit on the top row and target occurrences on the bottom
row, with one straight link per pair. Output is a pure function of the
inputs, so equal inputs give byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .graph import Relation
from .syntax import Formula, letter_count, letters, show_formula

__all__ = ["DiagramSpec", "diagram_spec", "render", "FORMATS"]

FORMATS = ("ascii", "dot", "svg")

COLUMN = 4          # ascii characters between neighbouring occurrences
SPACING = 30        # svg units between neighbouring occurrences
ROW_GAP = 40        # svg units between the two rows
MAX_ASCII_ROWS = 8


@dataclass(frozen=True)
class DiagramSpec:
    top: tuple
    bottom: tuple
    links: tuple
    top_label: str
    bottom_label: str


def diagram_spec(rel: Relation, src: Formula, tgt: Formula) -> DiagramSpec:
    if rel.src != letter_count(src) or rel.tgt != letter_count(tgt):
        raise ValueError(f"relation {rel.src} -> {rel.tgt} does not fit "
                         f"{show_formula(src)} -> {show_formula(tgt)}")
    return DiagramSpec(tuple(letters(src)), tuple(letters(tgt)), rel.pairs,
                       show_formula(src), show_formula(tgt))


def render(rel: Relation, src: Formula, tgt: Formula, format: str = "ascii") -> str:
    spec = diagram_spec(rel, src, tgt)
    if format == "ascii":
        return _ascii(spec)
    if format == "dot":
        return _dot(spec)
    if format == "svg":
        return _svg(spec)
    raise ValueError(f"unknown diagram format {format!r}; expected one of {FORMATS}")


def _ascii(spec: DiagramSpec) -> str:
    width = COLUMN * max(len(spec.top), len(spec.bottom), 1)
    shift = max((abs(x - y) * COLUMN for x, y in spec.links), default=0)
    rows = min(max(shift, 1), MAX_ASCII_ROWS)
    grid = [[" "] * width for _ in range(rows)]
    clash = shift > rows
    for x, y in spec.links:
        a, b = x * COLUMN, y * COLUMN
        glyph = "|" if a == b else ("\\" if b > a else "/")
        for r in range(rows):
            col = round(a + (b - a) * (r + 1) / (rows + 1))
            cell = grid[r][col]
            if cell not in (" ", glyph):
                grid[r][col] = "X"
                clash = True
            elif cell == " ":
                grid[r][col] = glyph
    out = [_label_row(spec.top, width) + "   " + spec.top_label]
    out += ["".join(row).rstrip() for row in grid]
    out.append(_label_row(spec.bottom, width) + "   " + spec.bottom_label)
    if clash:
        links = ", ".join(f"{x}-{y}" for x, y in spec.links)
        out.append(f"links (top-bottom): {links}")
    return "\n".join(out) + "\n"


def _label_row(names, width) -> str:
    row = [" "] * width
    for i, name in enumerate(names):
        for j, ch in enumerate(name[:COLUMN - 1]):
            row[i * COLUMN + j] = ch
    return "".join(row)


def _dot(spec: DiagramSpec) -> str:
    out = ["digraph G {", "  node [shape=plaintext];", "  edge [arrowhead=none];"]
    for prefix, names in (("s", spec.top), ("t", spec.bottom)):
        if not names:
            continue
        nodes = " ".join(f'{prefix}{i} [label="{n}"];' for i, n in enumerate(names))
        out.append(f"  {{ rank=same; {nodes} }}")
        if len(names) > 1:
            chain = " -> ".join(f"{prefix}{i}" for i in range(len(names)))
            out.append(f"  {chain} [style=invis];")
    for x, y in spec.links:
        out.append(f"  s{x} -> t{y};")
    out.append("}")
    return "\n".join(out) + "\n"


def _svg(spec: DiagramSpec) -> str:
    n = max(len(spec.top), len(spec.bottom), 1)
    width = SPACING * (n + 1)
    y_top, y_bot = 20, 20 + ROW_GAP
    height = y_bot + 20
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    for x, y in spec.links:
        out.append(f'  <line x1="{SPACING * (x + 1)}" y1="{y_top}" x2="{SPACING * (y + 1)}" '
                   f'y2="{y_bot}" stroke="black"/>')
    for i, name in enumerate(spec.top):
        out.append(f'  <text x="{SPACING * (i + 1)}" y="{y_top - 6}" '
                   f'text-anchor="middle">{escape(name)}</text>')
    for i, name in enumerate(spec.bottom):
        out.append(f'  <text x="{SPACING * (i + 1)}" y="{y_bot + 16}" '
                   f'text-anchor="middle">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

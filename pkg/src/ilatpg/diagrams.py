"""x-, y- and state-transition diagrams of a bijective cell.

Every diagram has one edge per cell input code and the edge id *is* that
code, so the same edge can be talked about in all three views.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .cells import BijectiveCell, format_code, project_h, project_v


class Kind(str, enum.Enum):
    X = "x"
    Y = "y"
    STATE = "state"


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int

    @property
    def label(self) -> int:
        return self.id


@dataclass(frozen=True)
class TransitionDiagram:
    kind: Kind
    cell: BijectiveCell
    node_count: int
    edges: tuple[Edge, ...]
    out_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    in_edges: tuple[tuple[int, ...], ...] = field(repr=False)

    def src(self, e: int) -> int:
        return self.edges[e].src

    def dst(self, e: int) -> int:
        return self.edges[e].dst

    def node_width(self) -> int:
        return {Kind.X: self.cell.h, Kind.Y: self.cell.v, Kind.STATE: self.cell.width}[
            self.kind
        ]


def build_diagram(cell: BijectiveCell, kind: Kind | str) -> TransitionDiagram:
    kind = Kind(kind)
    if kind is Kind.X:
        node_count, proj = 1 << cell.h, lambda c: project_h(cell, c)
    elif kind is Kind.Y:
        node_count, proj = 1 << cell.v, lambda c: project_v(cell, c)
    else:
        node_count, proj = cell.size, lambda c: c
    edges = tuple(Edge(i, proj(i), proj(cell(i))) for i in range(cell.size))
    outs: list[list[int]] = [[] for _ in range(node_count)]
    ins: list[list[int]] = [[] for _ in range(node_count)]
    for e in edges:
        outs[e.src].append(e.id)
        ins[e.dst].append(e.id)
    return TransitionDiagram(
        kind,
        cell,
        node_count,
        edges,
        tuple(map(tuple, outs)),
        tuple(map(tuple, ins)),
    )


@dataclass(frozen=True)
class DegreeReport:
    kind: Kind
    required: int
    degrees: tuple[tuple[int, int], ...]  # (in, out) per node

    @property
    def ok(self) -> bool:
        return all(d == (self.required, self.required) for d in self.degrees)

    def __str__(self) -> str:
        status = "OK" if self.ok else "FAIL"
        return f"{self.kind.value.upper()} degrees {self.required}/{self.required} {status}"


def check_degrees(diagram: TransitionDiagram) -> DegreeReport:
    cell = diagram.cell
    required = {Kind.X: 1 << cell.v, Kind.Y: 1 << cell.h, Kind.STATE: 1}[diagram.kind]
    degrees = tuple(
        (len(diagram.in_edges[n]), len(diagram.out_edges[n]))
        for n in range(diagram.node_count)
    )
    return DegreeReport(diagram.kind, required, degrees)


_PREFIX = {Kind.X: "h", Kind.Y: "v", Kind.STATE: "s"}


def export_dot(diagram: TransitionDiagram) -> str:
    prefix = _PREFIX[diagram.kind]
    width = diagram.node_width()

    def name(n: int) -> str:
        return f"{prefix}{n:0{width}b}"

    lines = [f"digraph {diagram.kind.value}_transitions {{"]
    for n in range(diagram.node_count):
        lines.append(f'  {name(n)} [label="{name(n)}"];')
    for e in diagram.edges:
        label = format_code(diagram.cell, e.label)
        lines.append(f'  {name(e.src)} -> {name(e.dst)} [label="{label}", id="e{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

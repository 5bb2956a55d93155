"""Array geometry shared by the generators and the simulator.

A grid is described per *dimension*. Dimension ``d`` owns ``widths[d]`` wires
of the cell, packed most-significant first (dimension 0 holds the highest
bits), and its wires run along axis ``d`` of the array, which is
``sizes[d]`` cells long. For the familiar (h, v)-cell this gives
``widths = (h, v)`` and coordinates ``(x, y)``: ``x`` is the column, along
which horizontal wires run, and ``y`` is the row.

``sizes`` may be shorter than ``widths``. The trailing dimensions then have
no extent: their inputs are driven directly at every cell and their outputs
are observed at every cell. A 1D array of (h, v)-cells is
``GridShape((h, v), (p,))``.

Boundary data (primary inputs, observable outputs) is a tuple with one
entry per dimension; each entry lists bit values for the cells of that
dimension's input (or output) face in lexicographic coordinate order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

Coord = tuple[int, ...]
Boundary = tuple[tuple[int, ...], ...]


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class GridShape:
    widths: tuple[int, ...]
    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(int(w) for w in self.widths))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if not self.widths or any(w < 1 for w in self.widths):
            raise ShapeError(f"widths must be positive, got {list(self.widths)}")
        if not self.sizes:
            raise ShapeError("a grid needs at least one axis")
        if len(self.sizes) > len(self.widths):
            raise ShapeError(
                f"{len(self.sizes)} axes but only {len(self.widths)} wire groups"
            )
        if any(s < 1 for s in self.sizes):
            raise ShapeError(f"all sizes must be >= 1, got {list(self.sizes)}")

    @classmethod
    def line(cls, h: int, v: int, p: int) -> GridShape:
        """1D array of p cells; vertical wires are per-cell inputs/outputs."""
        return cls((h, v), (p,))

    @classmethod
    def rect(cls, h: int, v: int, p: int, q: int) -> GridShape:
        """2D array with p rows and q columns."""
        return cls((h, v), (q, p))

    @property
    def width(self) -> int:
        return sum(self.widths)

    @property
    def ndim(self) -> int:
        return len(self.sizes)

    @property
    def ngroups(self) -> int:
        return len(self.widths)

    @cached_property
    def shifts(self) -> tuple[int, ...]:
        return tuple(sum(self.widths[d + 1:]) for d in range(self.ngroups))

    def project(self, code: int, d: int) -> int:
        return (code >> self.shifts[d]) & ((1 << self.widths[d]) - 1)

    def compose(self, parts) -> int:
        code = 0
        for d, bits in enumerate(parts):
            code |= bits << self.shifts[d]
        return code

    @cached_property
    def coords(self) -> tuple[Coord, ...]:
        return tuple(itertools.product(*(range(s) for s in self.sizes)))

    @cached_property
    def index(self) -> dict[Coord, int]:
        return {c: i for i, c in enumerate(self.coords)}

    @property
    def ncells(self) -> int:
        return len(self.coords)

    @cached_property
    def predecessor(self) -> tuple[tuple[int, ...], ...]:
        """predecessor[d][i]: cell driving dimension d of cell i, or -1."""
        out = []
        for d in range(self.ndim):
            row = []
            for c in self.coords:
                if c[d] == 0:
                    row.append(-1)
                else:
                    row.append(self.index[c[:d] + (c[d] - 1,) + c[d + 1:]])
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def input_faces(self) -> tuple[tuple[int, ...], ...]:
        """Cells whose dimension-d inputs are primary, per dimension."""
        faces = []
        for d in range(self.ngroups):
            if d < self.ndim:
                faces.append(tuple(i for i, c in enumerate(self.coords) if c[d] == 0))
            else:
                faces.append(tuple(range(self.ncells)))
        return tuple(faces)

    @cached_property
    def output_faces(self) -> tuple[tuple[int, ...], ...]:
        """Cells whose dimension-d outputs are observable, per dimension."""
        faces = []
        for d in range(self.ngroups):
            if d < self.ndim:
                last = self.sizes[d] - 1
                faces.append(tuple(i for i, c in enumerate(self.coords) if c[d] == last))
            else:
                faces.append(tuple(range(self.ncells)))
        return tuple(faces)

    def nest(self, flat):
        """Reshape a per-cell flat list into nested lists in axis order."""
        def build(axis: int, offset: int, stride: int):
            if axis == self.ndim:
                return flat[offset]
            step = stride // self.sizes[axis]
            return [build(axis + 1, offset + k * step, step) for k in range(self.sizes[axis])]
        return build(0, 0, self.ncells)

    def flatten(self, nested) -> list:
        def walk(node, axis):
            if axis == self.ndim:
                yield node
            else:
                if len(node) != self.sizes[axis]:
                    raise ShapeError(f"axis {axis} has {len(node)} entries, expected {self.sizes[axis]}")
                for child in node:
                    yield from walk(child, axis + 1)
        return list(walk(nested, 0))

    def to_json(self) -> dict:
        return {"widths": list(self.widths), "sizes": list(self.sizes)}

    @classmethod
    def from_json(cls, data: dict) -> GridShape:
        return cls(tuple(data["widths"]), tuple(data["sizes"]))

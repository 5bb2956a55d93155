"""Constant-size test sets for 1D, 2D and nD arrays of bijective cells.

Every generator tiles the array with edges of a closed-walk decomposition so
that each cell's input is exactly what its neighbours feed it. Each orbit of
length L gives L vectors (one per starting shift), so a set always holds
exactly 2^(h+v) vectors whatever the array size.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable

from .cells import BijectiveCell, format_code
from .decomp import (
    Decomposition,
    DecompositionError,
    VerticalSuccessor,
    state_cycles,
)
from .diagrams import Kind, build_diagram
from .grid import Boundary, Coord, GridShape, ShapeError


class Method(str, enum.Enum):
    EULER_1D = "Euler1D"
    EULER_2D = "Euler2D"
    ATPG_2D = "ATPG2D"
    ATPG_ND = "ATPG_nD"


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class TestVector:
    id: int
    orbit: int
    shift: int
    cells: tuple[int, ...]  # input code per cell, lexicographic coordinate order
    primary_inputs: Boundary
    expected: Boundary

    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class TestSet:
    method: Method
    cell_digest: str
    shape: GridShape
    vectors: tuple[TestVector, ...]
    decomposition: Decomposition | None = None
    vertical: VerticalSuccessor | None = None

    __test__ = False

    def __len__(self) -> int:
        return len(self.vectors)

    def without(self, vector_id: int) -> TestSet:
        kept = tuple(v for v in self.vectors if v.id != vector_id)
        return TestSet(self.method, self.cell_digest, self.shape, kept,
                       self.decomposition, self.vertical)

    def to_json(self, cell: BijectiveCell | None = None) -> dict:
        """JSON form; with ``cell`` given, codes are rendered as bit strings."""
        render: Callable[[int], object] = (
            (lambda c: format_code(cell, c)) if cell is not None else (lambda c: c)
        )
        out = {
            "method": self.method.value,
            "cell_digest": self.cell_digest,
            "shape": self.shape.to_json(),
            "vectors": [
                {
                    "id": v.id,
                    "orbit": v.orbit,
                    "shift": v.shift,
                    "cells": self.shape.nest([render(c) for c in v.cells]),
                    "primary_inputs": [list(b) for b in v.primary_inputs],
                    "expected": [list(b) for b in v.expected],
                }
                for v in self.vectors
            ],
        }
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json()
        if self.vertical is not None:
            out["vertical"] = {"V": list(self.vertical.V)}
        return out

    def dumps(self, cell: BijectiveCell | None = None) -> str:
        return json.dumps(self.to_json(cell), indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> TestSet:
        shape = GridShape.from_json(data["shape"])
        vectors = []
        for v in data["vectors"]:
            cells = shape.flatten(v["cells"])
            if not all(isinstance(c, int) for c in cells):
                raise GenerationError("test set cells must be integer codes (not --pretty output)")
            vectors.append(
                TestVector(
                    int(v["id"]),
                    int(v["orbit"]),
                    int(v["shift"]),
                    tuple(cells),
                    tuple(tuple(b) for b in v["primary_inputs"]),
                    tuple(tuple(b) for b in v["expected"]),
                )
            )
        decomposition = vertical = None
        if "decomposition" in data:
            decomposition = Decomposition.from_json(data["decomposition"])
        if "vertical" in data:
            vertical = VerticalSuccessor(tuple(data["vertical"]["V"]))
        return cls(Method(data["method"]), data["cell_digest"], shape,
                   tuple(vectors), decomposition, vertical)


def _make_vector(
    cell: BijectiveCell,
    shape: GridShape,
    vid: int,
    orbit: int,
    shift: int,
    assign: Callable[[Coord], int],
) -> TestVector:
    codes = tuple(assign(c) for c in shape.coords)
    primary = tuple(
        tuple(shape.project(codes[i], d) for i in face)
        for d, face in enumerate(shape.input_faces)
    )
    # the generator's own claim; the simulator checks it independently
    expected = tuple(
        tuple(shape.project(cell(codes[i]), d) for i in face)
        for d, face in enumerate(shape.output_faces)
    )
    return TestVector(vid, orbit, shift, codes, primary, expected)


def _check_shape(cell: BijectiveCell, shape: GridShape) -> None:
    if shape.width != cell.width:
        raise ShapeError(
            f"shape widths {list(shape.widths)} sum to {shape.width}, "
            f"cell width is {cell.width}"
        )


def gen_1d(cell: BijectiveCell, p: int, d: Decomposition) -> TestSet:
    """Tests for a row of p cells from an x-diagram decomposition."""
    shape = GridShape.line(cell.h, cell.v, p)
    try:
        d.validate(build_diagram(cell, Kind.X))
    except DecompositionError as exc:
        raise GenerationError(f"invalid x decomposition: {exc}") from None
    vectors = []
    for k_orbit, cyc in enumerate(d.cycles):
        L = len(cyc)
        for k in range(L):
            vectors.append(
                _make_vector(cell, shape, len(vectors), k_orbit, k,
                             lambda c, cyc=cyc, k=k: cyc[(k + c[0]) % L])
            )
    return TestSet(Method.EULER_1D, cell.digest(), shape, tuple(vectors), d)


def gen_nd(cell: BijectiveCell, shape: GridShape, method: Method = Method.ATPG_ND) -> TestSet:
    """Tile state cycles along the anti-diagonals: cell x gets s[(k + sum(x)) % L]."""
    _check_shape(cell, shape)
    vectors = []
    for k_orbit, cyc in enumerate(state_cycles(cell).cycles):
        L = len(cyc)
        for k in range(L):
            vectors.append(
                _make_vector(cell, shape, len(vectors), k_orbit, k,
                             lambda c, cyc=cyc, k=k: cyc[(k + sum(c)) % L])
            )
    return TestSet(method, cell.digest(), shape, tuple(vectors))


def gen_2d_atpg(cell: BijectiveCell, p: int, q: int) -> TestSet:
    return gen_nd(cell, GridShape.rect(cell.h, cell.v, p, q), Method.ATPG_2D)


def successor_orbits(H, V) -> list[list[int]]:
    """Orbits of the group generated by two commuting permutations, sorted."""
    n = len(H)
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        stack, orbit = [start], []
        seen[start] = True
        while stack:
            e = stack.pop()
            orbit.append(e)
            for nxt in (H[e], V[e]):
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append(nxt)
        orbits.append(sorted(orbit))
    return orbits


def gen_2d_euler(
    cell: BijectiveCell, p: int, q: int, d: Decomposition, V: VerticalSuccessor | None
) -> TestSet:
    """Tests for a p x q array from an x-decomposition H and vertical successor V.

    Cell (row r, column c) gets edge V^r(H^c(e)) for every starting edge e.
    """
    if V is None:
        raise GenerationError("no vertical successor for this decomposition; use ATPG")
    try:
        d.validate(build_diagram(cell, Kind.X))
    except DecompositionError as exc:
        raise GenerationError(f"invalid x decomposition: {exc}") from None
    problems = V.check(cell, d)
    if problems:
        raise GenerationError(f"invalid vertical successor: {problems[0]}")
    shape = GridShape.rect(cell.h, cell.v, p, q)
    H, Vm = d.H, V.V

    def tile(e: int, coord: Coord) -> int:
        col, row = coord
        for _ in range(col):
            e = H[e]
        for _ in range(row):
            e = Vm[e]
        return e

    vectors = []
    for k_orbit, orbit in enumerate(successor_orbits(H, Vm)):
        for k, e in enumerate(orbit):
            vectors.append(
                _make_vector(cell, shape, len(vectors), k_orbit, k,
                             lambda c, e=e: tile(e, c))
            )
    return TestSet(Method.EULER_2D, cell.digest(), shape, tuple(vectors), d, V)

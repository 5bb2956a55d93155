"""Fault-free and faulty simulation of iterative logic arrays.

The simulator only sees primary inputs; it never looks at a vector's
materialized per-cell codes. That keeps it an independent check on the
generators.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cells import BijectiveCell, CombinationalFunction
from .grid import Boundary, Coord, GridShape, ShapeError
from .testgen import TestSet


@dataclass(frozen=True)
class IlaGrid:
    cell: BijectiveCell
    shape: GridShape

    def __post_init__(self):
        if self.shape.width != self.cell.width:
            raise ShapeError(
                f"shape widths {list(self.shape.widths)} do not match a "
                f"width-{self.cell.width} cell"
            )


@dataclass(frozen=True)
class RowFlip:
    position: Coord
    input_row: int
    replacement: int

    def rows(self, cell: CombinationalFunction) -> frozenset[int]:
        return frozenset((self.input_row,))

    def table(self, cell: CombinationalFunction) -> tuple[int, ...]:
        t = list(cell.table)
        t[self.input_row] = self.replacement
        return tuple(t)


@dataclass(frozen=True)
class TableReplace:
    position: Coord
    g: CombinationalFunction

    def rows(self, cell: CombinationalFunction) -> frozenset[int]:
        return frozenset(i for i, (a, b) in enumerate(zip(cell.table, self.g.table)) if a != b)

    def table(self, cell: CombinationalFunction) -> tuple[int, ...]:
        return self.g.table


Fault = RowFlip | TableReplace


class FaultError(ValueError):
    pass


def make_fault(grid: IlaGrid, fault: Fault) -> Fault:
    """Check a fault against the grid: known position, real change of behavior."""
    if tuple(fault.position) not in grid.shape.index:
        raise FaultError(f"fault position {fault.position} is not in the grid")
    cell = grid.cell
    if isinstance(fault, RowFlip):
        if not 0 <= fault.input_row < cell.size or not 0 <= fault.replacement < cell.size:
            raise FaultError("row flip codes out of range")
        if fault.replacement == cell(fault.input_row):
            raise FaultError("row flip replacement equals the fault-free output")
    else:
        if (fault.g.h, fault.g.v) != (cell.h, cell.v):
            raise FaultError("replacement table has the wrong cell dimensions")
        if fault.g.table == cell.table:
            raise FaultError("replacement table equals the fault-free cell")
    return fault


@dataclass(frozen=True)
class SimResult:
    inputs: tuple[int, ...]   # per cell, lexicographic coordinate order
    outputs: tuple[int, ...]
    observables: Boundary


def simulate(
    grid: IlaGrid, primary_inputs: Boundary, fault: Fault | None = None
) -> SimResult:
    shape, cell = grid.shape, grid.cell
    faces = shape.input_faces
    if len(primary_inputs) != shape.ngroups:
        raise ShapeError(
            f"primary inputs give {len(primary_inputs)} dimensions, grid has {shape.ngroups}"
        )
    # primary bits by cell index, per dimension
    driven: list[dict[int, int]] = []
    for d, (face, bits) in enumerate(zip(faces, primary_inputs)):
        if len(bits) != len(face):
            raise ShapeError(
                f"dimension {d} needs {len(face)} primary inputs, got {len(bits)}"
            )
        limit = 1 << shape.widths[d]
        if any(not 0 <= b < limit for b in bits):
            raise ShapeError(f"dimension {d} primary input out of range")
        driven.append(dict(zip(face, bits)))

    fault_at, fault_table = -1, None
    if fault is not None:
        fault_at = shape.index[tuple(fault.position)]
        fault_table = fault.table(cell)

    table = cell.table
    pred = shape.predecessor
    ins = [0] * shape.ncells
    outs = [0] * shape.ncells
    for i in range(shape.ncells):
        code = 0
        for d in range(shape.ngroups):
            j = pred[d][i] if d < shape.ndim else -1
            bits = driven[d][i] if j < 0 else shape.project(outs[j], d)
            code |= bits << shape.shifts[d]
        ins[i] = code
        outs[i] = fault_table[code] if i == fault_at else table[code]
    observables = tuple(
        tuple(shape.project(outs[i], d) for i in face)
        for d, face in enumerate(shape.output_faces)
    )
    return SimResult(tuple(ins), tuple(outs), observables)


def atomic_fault_universe(grid: IlaGrid) -> list[RowFlip]:
    """Every single-row change of the truth table, at every cell."""
    cell = grid.cell
    faults = []
    for pos in grid.shape.coords:
        for row in range(cell.size):
            good = cell(row)
            faults.extend(RowFlip(pos, row, r) for r in range(cell.size) if r != good)
    return faults


@dataclass(frozen=True)
class CellCoverage:
    codes: frozenset[int]
    applications: int
    exhaustive: bool
    duplicates: tuple[int, ...]  # codes applied more than once


@dataclass
class FaultCampaignResult:
    total: int
    detected: int
    undetected: list[Fault]
    coverage: dict[Coord, CellCoverage]
    per_vector_detections: dict[int, int]
    inconsistent_vectors: list[int] = field(default_factory=list)

    @property
    def detection_rate(self) -> float:
        return self.detected / self.total if self.total else 1.0

    @property
    def full_coverage(self) -> bool:
        return all(c.exhaustive for c in self.coverage.values())

    @property
    def passed(self) -> bool:
        return (
            self.detected == self.total
            and self.full_coverage
            and not self.inconsistent_vectors
        )

    def summary(self, label: str = "faults") -> str:
        cov = "exhaustive" if self.full_coverage else "INCOMPLETE"
        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{label}: {self.detected}/{self.total} detected "
            f"({100.0 * self.detection_rate:.2f}%); coverage {cov}"
        )
        if self.inconsistent_vectors:
            line += f"; {len(self.inconsistent_vectors)} vectors disagree with simulation"
        return f"{line}; {verdict}"

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "detected": self.detected,
            "detection_rate": self.detection_rate,
            "passed": self.passed,
            "undetected": [fault_to_json(f) for f in self.undetected],
            "inconsistent_vectors": list(self.inconsistent_vectors),
            "per_vector_detections": {str(k): n for k, n in self.per_vector_detections.items()},
            "coverage": [
                {
                    "cell": list(pos),
                    "codes": sorted(c.codes),
                    "exhaustive": c.exhaustive,
                    "duplicates": list(c.duplicates),
                }
                for pos, c in self.coverage.items()
            ],
        }


def fault_to_json(fault: Fault) -> dict:
    if isinstance(fault, RowFlip):
        return {"kind": "RowFlip", "position": list(fault.position),
                "input_row": fault.input_row, "replacement": fault.replacement}
    return {"kind": "TableReplace", "position": list(fault.position),
            "table": list(fault.g.table)}


def _check_testset(grid: IlaGrid, testset: TestSet) -> None:
    if testset.shape != grid.shape:
        raise ShapeError(
            f"test set shape {testset.shape.to_json()} does not match grid "
            f"{grid.shape.to_json()}"
        )


def input_coverage(testset: TestSet, grid: IlaGrid) -> dict[Coord, CellCoverage]:
    """Codes actually applied to each cell, from fault-free simulation."""
    _check_testset(grid, testset)
    runs = [simulate(grid, v.primary_inputs) for v in testset.vectors]
    return _coverage(grid, runs)


def _coverage(grid: IlaGrid, runs: Sequence[SimResult]) -> dict[Coord, CellCoverage]:
    size = grid.cell.size
    out = {}
    for i, pos in enumerate(grid.shape.coords):
        counts = Counter(r.inputs[i] for r in runs)
        out[pos] = CellCoverage(
            frozenset(counts),
            sum(counts.values()),
            len(counts) == size,
            tuple(sorted(c for c, n in counts.items() if n > 1)),
        )
    return out


def run_campaign(
    grid: IlaGrid, testset: TestSet, faults: Iterable[Fault]
) -> FaultCampaignResult:
    """Simulate every fault against every vector.

    A vector detects a fault iff its observed outputs differ from the
    vector's expected outputs. A fault can only change a run in which the
    faulty cell sees one of the rows the fault alters; other runs are
    identical to the fault-free one and are not re-simulated.
    """
    _check_testset(grid, testset)
    vectors = testset.vectors
    runs = [simulate(grid, v.primary_inputs) for v in vectors]
    good_mismatch = [r.observables != v.expected for r, v in zip(runs, vectors)]
    per_vector = {v.id: 0 for v in vectors}
    undetected: list[Fault] = []
    total = detected = 0
    index = grid.shape.index
    for fault in faults:
        total += 1
        at = index[tuple(fault.position)]
        rows = fault.rows(grid.cell)
        hit = False
        for run, vec, bad in zip(runs, vectors, good_mismatch):
            if run.inputs[at] in rows:
                caught = simulate(grid, vec.primary_inputs, fault).observables != vec.expected
            else:
                caught = bad
            if caught:
                hit = True
                per_vector[vec.id] += 1
        if hit:
            detected += 1
        else:
            undetected.append(fault)
    return FaultCampaignResult(
        total,
        detected,
        undetected,
        _coverage(grid, runs),
        per_vector,
        [v.id for v, bad in zip(vectors, good_mismatch) if bad],
    )


def random_table_fault_campaign(
    grid: IlaGrid, testset: TestSet, trials: int, seed: int
) -> FaultCampaignResult:
    """Sample whole-table replacements g != f (not necessarily bijective)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    cell, coords = grid.cell, grid.shape.coords
    faults = []
    for _ in range(trials):
        pos = coords[rng.randrange(len(coords))]
        while True:
            table = tuple(rng.randrange(cell.size) for _ in range(cell.size))
            if table != cell.table:
                break
        faults.append(TableReplace(pos, CombinationalFunction(cell.h, cell.v, table)))
    return run_campaign(grid, testset, faults)

"""Cell functions of an iterative logic array.

A cell with ``h`` horizontal and ``v`` vertical wires is a function on
``h + v`` bit codes. Codes pack the horizontal bits high and the vertical
bits low: ``code = (h_bits << v) | v_bits``. Wire 0 is the most significant
horizontal bit; wires ``h .. h+v-1`` are the vertical ones.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

DEFAULT_MAX_WIDTH = 12


class CellError(ValueError):
    """Malformed cell, netlist or cell spec."""


class NotBijective(CellError):
    def __init__(self, code: int, first_index: int, second_index: int):
        self.code = code
        self.first_index = first_index
        self.second_index = second_index
        super().__init__(
            f"not bijective: output code {code} produced by inputs "
            f"{first_index} and {second_index}"
        )


class CellSizeError(CellError):
    pass


@dataclass(frozen=True)
class CombinationalFunction:
    """Arbitrary truth table of an (h, v)-cell; used for faulty behavior."""

    h: int
    v: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.h < 1 or self.v < 1:
            raise CellError(f"h and v must be >= 1, got h={self.h}, v={self.v}")
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        n = 1 << (self.h + self.v)
        if len(self.table) != n:
            raise CellError(
                f"table for a ({self.h},{self.v})-cell needs {n} entries, "
                f"got {len(self.table)}"
            )
        for i, out in enumerate(self.table):
            if not 0 <= out < n:
                raise CellError(f"table[{i}] = {out} out of range [0, {n})")

    @property
    def width(self) -> int:
        return self.h + self.v

    @property
    def size(self) -> int:
        return 1 << (self.h + self.v)

    def __call__(self, code: int) -> int:
        return self.table[code]


@dataclass(frozen=True)
class BijectiveCell(CombinationalFunction):
    """A cell whose truth table is a permutation of its input codes."""

    def __post_init__(self):
        super().__post_init__()
        seen: dict[int, int] = {}
        for i, out in enumerate(self.table):
            if out in seen:
                raise NotBijective(out, seen[out], i)
            seen[out] = i

    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.size
        for i, out in enumerate(self.table):
            inv[out] = i
        return tuple(inv)

    def digest(self) -> str:
        """Content hash of the canonical table; binds test sets to cells."""
        payload = json.dumps(
            {"h": self.h, "v": self.v, "table": list(self.table)},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()


def validate_bijective(f: CombinationalFunction) -> BijectiveCell:
    return BijectiveCell(f.h, f.v, f.table)


def project_h(cell: CombinationalFunction, code: int) -> int:
    _check_code(cell, code)
    return code >> cell.v


def project_v(cell: CombinationalFunction, code: int) -> int:
    _check_code(cell, code)
    return code & ((1 << cell.v) - 1)


def _check_code(cell: CombinationalFunction, code: int) -> None:
    if not 0 <= code < cell.size:
        raise CellError(f"code {code} out of range for a width-{cell.width} cell")


def format_code(cell: CombinationalFunction, code: int) -> str:
    """Render a code as ``"<h_bits>/<v_bits>"``, e.g. ``"01/1"``."""
    return f"{project_h(cell, code):0{cell.h}b}/{project_v(cell, code):0{cell.v}b}"


# -- k-CNOT netlists ---------------------------------------------------------


@dataclass(frozen=True)
class CnotGate:
    controls: frozenset[int]
    target: int

    def __init__(self, controls: Iterable[int], target: int):
        object.__setattr__(self, "controls", frozenset(int(c) for c in controls))
        object.__setattr__(self, "target", int(target))
        if self.target in self.controls:
            raise CellError(f"gate target {self.target} is also a control")

    @property
    def k(self) -> int:
        return len(self.controls)


@dataclass(frozen=True)
class CnotNetlist:
    width: int
    gates: tuple[CnotGate, ...] = field(default=())

    def __post_init__(self):
        if self.width < 1:
            raise CellError(f"netlist width must be >= 1, got {self.width}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            wires = set(g.controls) | {g.target}
            if min(wires) < 0 or max(wires) >= self.width:
                raise CellError(f"gate {g} uses a wire outside 0..{self.width - 1}")
            # k_max <= width - 1; implied by the checks above
            assert g.k <= self.width - 1

    def reversed(self) -> CnotNetlist:
        return CnotNetlist(self.width, self.gates[::-1])


def _wire_mask(width: int, wire: int) -> int:
    return 1 << (width - 1 - wire)


def eval_netlist(netlist: CnotNetlist, code: int) -> int:
    """Apply the gates in listed order; each flips its target iff all controls are 1."""
    w = netlist.width
    if not 0 <= code < (1 << w):
        raise CellError(f"input {code} out of range for a width-{w} netlist")
    for gate in netlist.gates:
        cmask = 0
        for c in gate.controls:
            cmask |= _wire_mask(w, c)
        if code & cmask == cmask:
            code ^= _wire_mask(w, gate.target)
    return code


def netlist_to_cell(netlist: CnotNetlist, h: int, v: int) -> BijectiveCell:
    if netlist.width != h + v:
        raise CellError(
            f"netlist width {netlist.width} does not match h+v = {h + v}"
        )
    return BijectiveCell(h, v, tuple(eval_netlist(netlist, i) for i in range(1 << (h + v))))


def random_bijective_cell(
    h: int, v: int, seed: int, max_width: int = DEFAULT_MAX_WIDTH
) -> BijectiveCell:
    if h < 1 or v < 1:
        raise CellError(f"h and v must be >= 1, got h={h}, v={v}")
    if h + v > max_width:
        raise CellSizeError(f"h+v = {h + v} exceeds the width cap {max_width}")
    table = list(range(1 << (h + v)))
    random.Random(seed).shuffle(table)
    return BijectiveCell(h, v, tuple(table))


# -- cell spec files ---------------------------------------------------------


def parse_cell_spec(data: dict[str, Any] | str) -> BijectiveCell:
    """Build a cell from a spec dict (or its JSON text).

    Exactly one of ``"table"`` or ``"netlist"`` must be present.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise CellError(f"cell spec is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise CellError("cell spec must be a JSON object")
    try:
        h, v = int(data["h"]), int(data["v"])
    except (KeyError, TypeError, ValueError):
        raise CellError("cell spec needs integer 'h' and 'v'") from None
    has_table, has_netlist = "table" in data, "netlist" in data
    if has_table == has_netlist:
        raise CellError("cell spec needs exactly one of 'table' or 'netlist'")
    if has_table:
        return validate_bijective(CombinationalFunction(h, v, tuple(data["table"])))
    try:
        gates = [CnotGate(g["controls"], g["target"]) for g in data["netlist"]["gates"]]
    except (KeyError, TypeError) as exc:
        raise CellError(f"malformed netlist: {exc}") from None
    return netlist_to_cell(CnotNetlist(h + v, tuple(gates)), h, v)


def load_cell(path) -> BijectiveCell:
    with open(path) as fh:
        return parse_cell_spec(fh.read())


def cell_to_spec(cell: CombinationalFunction) -> dict[str, Any]:
    return {"h": cell.h, "v": cell.v, "table": list(cell.table)}


def netlist_to_spec(netlist: CnotNetlist, h: int, v: int) -> dict[str, Any]:
    return {
        "h": h,
        "v": v,
        "netlist": {
            "gates": [
                {"controls": sorted(g.controls), "target": g.target}
                for g in netlist.gates
            ]
        },
    }


def dump_cell_spec(spec: dict[str, Any]) -> str:
    return json.dumps(spec, separators=(", ", ": ")) + "\n"


def identity_cell(h: int, v: int) -> BijectiveCell:
    return BijectiveCell(h, v, tuple(range(1 << (h + v))))


def cell_from_table(h: int, v: int, table: Sequence[int]) -> BijectiveCell:
    return BijectiveCell(h, v, tuple(table))

"""Closed-walk decompositions of transition diagrams.

A decomposition is stored as an edge-successor permutation ``H``: ``H[e]`` is
the edge that follows ``e`` in its closed walk. The walks themselves are the
cycles of ``H``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cells import BijectiveCell, project_v
from .diagrams import Kind, TransitionDiagram, build_diagram

DEFAULT_ENUM_LIMIT = 10**6


class DecompositionError(ValueError):
    pass


class CombinatoricsOverLimit(DecompositionError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(
            f"{count} decompositions exceed the enumeration limit {limit}"
        )


def permutation_cycles(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of ``perm``, each starting at its smallest element, sorted by start."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = perm[i]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def _is_permutation(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(len(perm)))


@dataclass(frozen=True)
class Decomposition:
    kind: Kind
    H: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(int(x) for x in self.H))
        if not _is_permutation(self.H):
            raise DecompositionError("successor map is not a permutation of edge ids")

    @property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return permutation_cycles(self.H)

    def orbit_of(self) -> tuple[int, ...]:
        """Index of the cycle containing each edge."""
        idx = [0] * len(self.H)
        for k, cyc in enumerate(self.cycles):
            for e in cyc:
                idx[e] = k
        return tuple(idx)

    def validate(self, diagram: TransitionDiagram) -> None:
        if diagram.kind is not self.kind:
            raise DecompositionError(
                f"{self.kind.value} decomposition checked against a "
                f"{diagram.kind.value} diagram"
            )
        if len(self.H) != len(diagram.edges):
            raise DecompositionError(
                f"decomposition has {len(self.H)} edges, diagram has {len(diagram.edges)}"
            )
        for e, nxt in enumerate(self.H):
            if diagram.dst(e) != diagram.src(nxt):
                raise DecompositionError(
                    f"edge {e} ends at node {diagram.dst(e)} but its successor "
                    f"{nxt} starts at node {diagram.src(nxt)}"
                )

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "H": list(self.H),
                "cycles": [list(c) for c in self.cycles]}

    @classmethod
    def from_json(cls, data: dict) -> Decomposition:
        return cls(Kind(data.get("kind", "x")), tuple(data["H"]))


def state_cycles(cell: BijectiveCell) -> Decomposition:
    # in the state diagram edge e runs e -> f(e), so H = f is the only choice
    return Decomposition(Kind.STATE, cell.table)


def canonical_x_decomposition(cell: BijectiveCell) -> Decomposition:
    """Pair each node's sorted incoming edges with its sorted outgoing edges."""
    diagram = build_diagram(cell, Kind.X)
    H = [0] * cell.size
    for node in range(diagram.node_count):
        for e_in, e_out in zip(diagram.in_edges[node], diagram.out_edges[node]):
            H[e_in] = e_out
    return Decomposition(Kind.X, tuple(H))


def count_x_decompositions(cell: BijectiveCell) -> int:
    return math.factorial(1 << cell.v) ** (1 << cell.h)


def enumerate_x_decompositions(
    cell: BijectiveCell, limit: int = DEFAULT_ENUM_LIMIT
) -> Iterator[Decomposition]:
    """Yield every in/out pairing of the x-diagram, lexicographically.

    Raises CombinatoricsOverLimit before yielding anything if the total
    count exceeds ``limit``.
    """
    count = count_x_decompositions(cell)
    if count > limit:
        raise CombinatoricsOverLimit(count, limit)
    return _enumerate(cell)


def _enumerate(cell: BijectiveCell) -> Iterator[Decomposition]:
    diagram = build_diagram(cell, Kind.X)
    nodes = range(diagram.node_count)
    choices = [itertools.permutations(diagram.out_edges[n]) for n in nodes]
    for pairing in itertools.product(*choices):
        H = [0] * cell.size
        for node, outs in zip(nodes, pairing):
            for e_in, e_out in zip(diagram.in_edges[node], outs):
                H[e_in] = e_out
        yield Decomposition(Kind.X, tuple(H))


@dataclass(frozen=True)
class VerticalSuccessor:
    V: tuple[int, ...]

    def check(self, cell: BijectiveCell, d: Decomposition) -> list[str]:
        """Return a list of violated conditions (empty when V is valid for d)."""
        problems = []
        V, H = self.V, d.H
        if not _is_permutation(V) or len(V) != cell.size:
            return ["V is not a permutation of edge ids"]
        for e in range(cell.size):
            if project_v(cell, cell(e)) != project_v(cell, V[e]):
                problems.append(f"v-chaining fails at edge {e}")
            if V[H[e]] != H[V[e]]:
                problems.append(f"V and H do not commute at edge {e}")
        return problems


def find_vertical_successor(
    cell: BijectiveCell, d: Decomposition
) -> VerticalSuccessor | None:
    """Search for V with v_out(e) == v_in(V(e)) and V∘H == H∘V.

    A commuting V is fixed on a whole H-cycle by its value on the cycle's
    first edge, and must carry the cycle onto a cycle of the same length, so
    the backtracking runs over cycle-to-cycle assignments. Candidates are
    tried smallest edge id first.
    """
    d.validate(build_diagram(cell, Kind.X))
    H = d.H
    cycles = d.cycles
    v_out = [project_v(cell, cell(e)) for e in range(cell.size)]
    v_in = [project_v(cell, e) for e in range(cell.size)]
    orbit = d.orbit_of()

    # candidate images for each cycle: list of (target cycle, offset start edge)
    def candidates(ci: int) -> list[tuple[int, int]]:
        src = cycles[ci]
        out = []
        for t in range(cell.size):
            tgt_cycle = cycles[orbit[t]]
            if len(tgt_cycle) != len(src):
                continue
            e, img, ok = src[0], t, True
            for _ in src:
                if v_out[e] != v_in[img]:
                    ok = False
                    break
                e, img = H[e], H[img]
            if ok:
                out.append((orbit[t], t))
        return out

    cands = [candidates(ci) for ci in range(len(cycles))]
    used = [False] * len(cycles)
    chosen: list[int] = [0] * len(cycles)

    # iterative backtracking; cycle count can reach 2^(h+v)
    next_try = [0] * len(cycles)
    taken: list[int] = [-1] * len(cycles)
    ci = 0
    while 0 <= ci < len(cycles):
        if taken[ci] >= 0:
            used[taken[ci]] = False
            taken[ci] = -1
        opts = cands[ci]
        k = next_try[ci]
        while k < len(opts) and used[opts[k][0]]:
            k += 1
        if k == len(opts):
            next_try[ci] = 0
            ci -= 1
            continue
        tgt, start = opts[k]
        used[tgt] = True
        taken[ci] = tgt
        chosen[ci] = start
        next_try[ci] = k + 1
        ci += 1
    if ci < 0:
        return None
    V = [0] * cell.size
    for ci, cyc in enumerate(cycles):
        img = chosen[ci]
        for e in cyc:
            V[e] = img
            img = H[img]
    return VerticalSuccessor(tuple(V))


def find_decomposition_with_successor(
    cell: BijectiveCell, limit: int = DEFAULT_ENUM_LIMIT
) -> tuple[int, Decomposition, VerticalSuccessor] | None:
    """First enumerated x-decomposition admitting a vertical successor."""
    for index, d in enumerate(enumerate_x_decompositions(cell, limit)):
        V = find_vertical_successor(cell, d)
        if V is not None:
            return index, d, V
    return None

"""C-testable test generation for AND-EXOR (k-CNOT) iterative logic arrays."""

from .cells import (
    BijectiveCell,
    CnotGate,
    CnotNetlist,
    CombinationalFunction,
    NotBijective,
    eval_netlist,
    netlist_to_cell,
    parse_cell_spec,
    random_bijective_cell,
    validate_bijective,
)
from .decomp import (
    Decomposition,
    VerticalSuccessor,
    canonical_x_decomposition,
    enumerate_x_decompositions,
    find_vertical_successor,
    state_cycles,
)
from .diagrams import Kind, build_diagram, check_degrees, export_dot
from .grid import GridShape
from .sim import IlaGrid, atomic_fault_universe, run_campaign, simulate
from .testgen import TestSet, gen_1d, gen_2d_atpg, gen_2d_euler, gen_nd

__version__ = "0.1.0"

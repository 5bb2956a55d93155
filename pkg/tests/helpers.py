"""Independent checks shared by the generator and acceptance tests."""

from ilatpg.sim import IlaGrid, simulate


def check_set(cell, ts):
    """Assert size, coverage, chaining and expected outputs by simulation."""
    grid = IlaGrid(cell, ts.shape)
    assert len(ts) == cell.size
    applied = [set() for _ in range(ts.shape.ncells)]
    for vec in ts.vectors:
        run = simulate(grid, vec.primary_inputs)
        assert run.inputs == vec.cells
        assert run.observables == vec.expected
        for i, c in enumerate(run.inputs):
            applied[i].add(c)
    assert all(len(a) == cell.size for a in applied)
    return grid


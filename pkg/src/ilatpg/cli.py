"""Command-line front end.

Exit codes: 0 success, 1 input/validation error, 2 generation infeasible or
over a limit, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cells as cells_mod
from .cells import CellError, load_cell
from .decomp import (
    DEFAULT_ENUM_LIMIT,
    CombinatoricsOverLimit,
    DecompositionError,
    canonical_x_decomposition,
    enumerate_x_decompositions,
    find_decomposition_with_successor,
    find_vertical_successor,
    state_cycles,
)
from .diagrams import Kind, build_diagram, check_degrees, export_dot
from .grid import GridShape, ShapeError
from .sim import (
    IlaGrid,
    atomic_fault_universe,
    random_table_fault_campaign,
    run_campaign,
)
from .testgen import (
    GenerationError,
    TestSet,
    gen_1d,
    gen_2d_atpg,
    gen_2d_euler,
    gen_nd,
)

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def enum_limit(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("ILA_ENUM_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"ILA_ENUM_LIMIT must be an integer, got {env!r}") from None
    return DEFAULT_ENUM_LIMIT


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(path: str):
    try:
        return load_cell(path)
    except OSError as exc:
        raise CliError(f"cannot read cell spec: {exc}") from None


def cmd_check(args) -> int:
    cell = _load(args.cell)
    lengths = ",".join(str(len(c)) for c in state_cycles(cell).cycles)
    reports = [check_degrees(build_diagram(cell, k)) for k in (Kind.X, Kind.Y, Kind.STATE)]
    print(f"({cell.h},{cell.v})-cell, digest {cell.digest()[:16]}")
    print(f"bijective; state cycles: {lengths}; {reports[0]}; {reports[1]}")
    if not all(r.ok for r in reports):
        print("degree check failed", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_diagram(args) -> int:
    cell = _load(args.cell)
    _write(export_dot(build_diagram(cell, Kind(args.kind))), args.out)
    return EXIT_OK


def _pick_decomposition(cell, index: int | None, limit: int):
    if index is None:
        return canonical_x_decomposition(cell)
    for i, d in enumerate(enumerate_x_decompositions(cell, limit)):
        if i == index:
            return d
    raise CliError(f"decomposition index {index} out of range")


def cmd_gen(args) -> int:
    cell = _load(args.cell)
    sizes = args.sizes
    if len(sizes) != args.dims:
        raise CliError(f"--dims {args.dims} needs {args.dims} sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise CliError(f"sizes must be >= 1, got {sizes}")
    limit = enum_limit(args.limit)
    method = args.method or ("euler" if args.dims == 1 else "atpg")

    if args.dims == 1:
        if args.widths:
            raise CliError("--widths applies to --dims >= 3 only")
        if method == "euler":
            ts = gen_1d(cell, sizes[0], _pick_decomposition(cell, args.decomp_index, limit))
        else:
            ts = gen_nd(cell, GridShape.line(cell.h, cell.v, sizes[0]))
    elif args.dims == 2:
        if args.widths:
            raise CliError("--widths applies to --dims >= 3 only")
        p, q = sizes
        if method == "atpg":
            ts = gen_2d_atpg(cell, p, q)
        elif args.decomp_index is not None:
            d = _pick_decomposition(cell, args.decomp_index, limit)
            V = find_vertical_successor(cell, d)
            if V is None:
                raise CliError(
                    f"decomposition {args.decomp_index} admits no vertical successor; "
                    "try --method atpg", EXIT_INFEASIBLE)
            ts = gen_2d_euler(cell, p, q, d, V)
        else:
            found = find_decomposition_with_successor(cell, limit)
            if found is None:
                raise CliError(
                    "no x-decomposition admits a vertical successor; try --method atpg",
                    EXIT_INFEASIBLE)
            _, d, V = found
            ts = gen_2d_euler(cell, p, q, d, V)
    else:
        if method != "atpg":
            raise CliError("only --method atpg is available for --dims >= 3")
        if not args.widths or len(args.widths) != args.dims:
            raise CliError(f"--dims {args.dims} needs --widths with {args.dims} entries")
        ts = gen_nd(cell, GridShape(tuple(args.widths), tuple(sizes)))

    _write(ts.dumps(cell if args.pretty else None), args.out)
    print(f"{len(ts)} vectors ({ts.method.value}) for shape {ts.shape.to_json()}",
          file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    cell = _load(args.cell)
    try:
        with open(args.testset) as fh:
            ts = TestSet.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"cannot read test set: {exc}") from None
    if ts.cell_digest != cell.digest():
        raise CliError("test set was generated for a different cell (digest mismatch)")
    grid = IlaGrid(cell, ts.shape)
    atomic = run_campaign(grid, ts, atomic_fault_universe(grid))
    report = {"vectors": len(ts), "atomic": atomic.to_json()}
    ok = atomic.passed
    lines = [atomic.summary(f"atomic row faults ({cell.size * (cell.size - 1)} per cell)")]
    if args.random_trials:
        sampled = random_table_fault_campaign(grid, ts, args.random_trials, args.seed)
        report["sampled"] = sampled.to_json()
        ok = ok and sampled.passed
        lines.append(sampled.summary("sampled table faults"))
    if args.report:
        _write(json.dumps(report, indent=1) + "\n", args.report)
    if args.summary:
        print(f"{'PASS' if ok else 'FAIL'}: " + " | ".join(lines))
    else:
        print("\n".join(lines))
        for f in atomic.undetected[:20]:
            print(f"  undetected: {f}")
        if len(atomic.undetected) > 20:
            print(f"  ... {len(atomic.undetected) - 20} more")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_random_cell(args) -> int:
    cell = cells_mod.random_bijective_cell(args.h, args.v, args.seed, args.max_width)
    _write(cells_mod.dump_cell_spec(cells_mod.cell_to_spec(cell)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ilatpg",
        description="Test generation and fault simulation for AND-EXOR iterative logic arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a cell and its transition diagrams")
    p.add_argument("cell")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("diagram", help="export a transition diagram as DOT")
    p.add_argument("cell")
    p.add_argument("--kind", choices=[k.value for k in Kind], default="x")
    p.add_argument("--out")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("gen", help="generate a test set")
    p.add_argument("cell")
    p.add_argument("--dims", type=int, default=1)
    p.add_argument("--sizes", type=int, nargs="+", required=True,
                   help="1D: p; 2D: rows cols; nD: one size per axis")
    p.add_argument("--widths", type=int, nargs="+",
                   help="wires per dimension for --dims >= 3, most significant first")
    p.add_argument("--method", choices=["euler", "atpg"])
    p.add_argument("--decomp-index", type=int,
                   help="pick the n-th enumerated x-decomposition")
    p.add_argument("--limit", type=int, help="decomposition enumeration cap")
    p.add_argument("--pretty", action="store_true", help="render cell codes as bit strings")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run fault campaigns against a test set")
    p.add_argument("cell")
    p.add_argument("testset")
    p.add_argument("--random-trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write the JSON campaign report here")
    p.add_argument("--summary", action="store_true", help="one-line verdict")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random-cell", help="write a random bijective cell spec")
    p.add_argument("h", type=int)
    p.add_argument("v", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-width", type=int, default=cells_mod.DEFAULT_MAX_WIDTH)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random_cell)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are input errors here
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CombinatoricsOverLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (CellError, ShapeError, DecompositionError, GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

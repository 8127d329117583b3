# -*- coding: utf-8 -*-
"""Generate meshes, solve plates and run the benchmark problems.

Examples:
    python run_polyplate.py mesh gen --mesh cvt:64
    python run_polyplate.py run --problem patch --h 0.01 --mesh structured:8
    python run_polyplate.py bench --problem square_udl --bc clamped --h 1e-5 --nodes 803
    python run_polyplate.py run --cfg-path ./configs/square_plate/nonuniform.py --log
    python run_polyplate.py verify-all
"""

import argparse
import sys

from polyplate import runner
from polyplate.common.errors import ConfigParseError
import polyplate.common.helper_functions as common_utils
from polyplate.system.boundary import KINDS


def add_common_args(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--seed", type=int, default=42, help="random seed for reproducibility"
    )
    parser.add_argument(
        "--output-dir",
        type=str,
        default=None,
        help="artifact directory (default: $POLYPLATE_OUTPUT_ROOT/<command>/<time>)",
    )


def add_mesh_args(parser: argparse.ArgumentParser, required: bool = False):
    parser.add_argument(
        "--mesh",
        type=str,
        default=None,
        required=required,
        help="kind:n with kind structured|trapezoidal (n divisions) or cvt (n elements)",
    )
    parser.add_argument(
        "--domain", type=str, default="unit_square", choices=("unit_square", "disk")
    )
    parser.add_argument("--size", type=float, default=1.0, help="square side or disk radius")


def add_polygon_args(parser: argparse.ArgumentParser):
    parser.add_argument("--sides", type=int, default=5, help="number of polygon vertices")
    parser.add_argument(
        "--random", dest="random", action="store_true", help="random instead of regular polygon"
    )


def parse_args(argv=None) -> argparse.Namespace:
    # configurations
    parser = argparse.ArgumentParser(description="Polygonal Reissner-Mindlin plate elements")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    mesh = commands.add_parser("mesh", help="mesh utilities")
    mesh_commands = mesh.add_subparsers(dest="action")
    mesh_commands.required = True
    gen = mesh_commands.add_parser("gen", help="generate and write a mesh")
    add_common_args(gen)
    add_mesh_args(gen, required=True)
    gen.add_argument("--out", type=str, default=None, help="mesh file path")

    basis = commands.add_parser("basis", help="basis utilities")
    basis_commands = basis.add_subparsers(dest="action")
    basis_commands.required = True
    sample = basis_commands.add_parser("sample", help="sample basis functions on a polygon")
    add_common_args(sample)
    add_polygon_args(sample)
    sample.add_argument("--points", type=int, default=20, help="number of interior points")
    sample.add_argument("--out", type=str, default=None, help="csv path")

    element = commands.add_parser("element", help="element utilities")
    element_commands = element.add_subparsers(dest="action")
    element_commands.required = True
    dump = element_commands.add_parser("dump", help="write K_e and its spectrum")
    add_common_args(dump)
    add_polygon_args(dump)
    dump.add_argument("--h", type=float, default=0.01, help="thickness over diameter")
    dump.add_argument("--out", type=str, default=None, help="output directory")

    solve = commands.add_parser("solve", help="solve one plate under uniform load")
    add_common_args(solve)
    add_mesh_args(solve)
    solve.add_argument("--mesh-file", type=str, default=None, help="polyplate-mesh v1 file")
    solve.add_argument("--h", type=float, default=0.01, help="thickness over domain size")
    solve.add_argument("--bc", type=str, default="clamped", choices=KINDS[:2])
    solve.add_argument("--q", type=float, default=1.0, help="uniform pressure")

    bench = commands.add_parser("bench", aliases=["run"], help="run a benchmark problem")
    add_common_args(bench)
    bench.add_argument("--cfg-path", type=str, default=None, help="config path")
    bench.add_argument(
        "--problem", type=str, default=None, choices=sorted(runner.PROBLEM_CONFIGS)
    )
    bench.add_argument("--h", type=float, default=None, help="single thickness ratio")
    bench.add_argument("--bc", type=str, default=None, choices=KINDS[:2])
    bench.add_argument("--mesh", type=str, default=None, help="kind:n single mesh")
    bench.add_argument("--nodes", type=int, default=None, help="single node target")
    bench.add_argument(
        "--cfg-options", nargs="+", default=None, help="dotted.key=value overrides"
    )
    bench.add_argument("--log", dest="log", action="store_true", help="turn on logging")
    bench.add_argument(
        "--integration-test",
        dest="integration_test",
        action="store_true",
        help="indicate integration test",
    )

    verify = commands.add_parser("verify-all", help="run the whole acceptance suite")
    add_common_args(verify)
    verify.add_argument("--log", dest="log", action="store_true", help="turn on logging")
    verify.add_argument(
        "--integration-test",
        dest="integration_test",
        action="store_true",
        help="indicate integration test",
    )

    return parser.parse_args(argv)


def main(argv=None) -> int:
    """Main."""
    args = parse_args(argv)
    common_utils.set_random_seed(args.seed)

    try:
        if getattr(args, "mesh", None):
            runner.parse_mesh_option(args.mesh)
        if args.command == "solve" and not args.mesh and not args.mesh_file:
            raise ValueError("[ERROR] solve needs --mesh or --mesh-file")
        cfg = runner.load_config(args) if args.command in ("bench", "run") else None
    except ValueError as e:
        print(e)
        return runner.EXIT_USAGE

    try:
        if args.command == "mesh":
            return runner.mesh_gen(args)
        if args.command == "basis":
            return runner.basis_sample(args)
        if args.command == "element":
            return runner.element_dump(args)
        if args.command == "solve":
            return runner.solve(args)
        if args.command == "verify-all":
            return runner.verify_all(args)
    except ConfigParseError as e:
        print(e)
        return runner.EXIT_USAGE
    except (ValueError, RuntimeError, LookupError, OSError) as e:
        print(f"[ERROR] {e}")
        return runner.EXIT_FAILED
    return runner.run(cfg, args)


if __name__ == "__main__":
    sys.exit(main())

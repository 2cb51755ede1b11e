"""
Solve Stage - Explicit trajectories from a realization file.
"""

import argparse

from stages.base import BaseStage
from systems.flow import solve_general
from systems.serialization import (
    load_trajectory,
    read_json,
    realization_from_dict,
    trajectory_to_dict,
    write_csv,
)


class SolveStage(BaseStage):
    command = "solve"
    help = "evaluate w on a box from an initial condition (random compatible by default)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("realization", help="realization JSON written by regularize")
        parser.add_argument("--box", required=True, help="output box lo1:hi1,...,lon:hin (write --box=-3:3,... for negative bounds)")
        parser.add_argument("--init", help="initial condition trajectory JSON over Z^d")
        parser.add_argument("--random-init", action="store_true",
                            help="draw a random compatible initial condition (default without --init)")
        parser.add_argument("--init-out", help="write the initial condition used to this path")
        parser.add_argument("--csv", help="exact CSV export path")
        parser.add_argument("--float-csv", help="floating point CSV export path")
        parser.add_argument("--no-verify", action="store_true", help="skip the residual check")
        self.add_common(parser, ["out", "seed"])

    def run(self, args: argparse.Namespace) -> int:
        settings = self.settings_for(args)
        data, text = read_json(args.realization)
        real, T, source = realization_from_dict(data, text)
        box = self.parse_box(args.box, real.n)
        x = None if (args.random_init or not args.init) else load_trajectory(args.init)

        solution = solve_general(source, box, x, settings, self.rng(settings), realization=real, transform=T)
        print(f"Solved {solution.w.size()} points on [{box[0]}, {box[1]}]")
        if solution.report is not None:
            print(f"Residual: {solution.report.max_residual} over {solution.report.checked_points} points")
        self.emit(trajectory_to_dict(solution.w), args.out)
        if args.init_out:
            self.emit(trajectory_to_dict(solution.x), args.init_out)
        if args.csv:
            write_csv(solution.w, args.csv)
            print(f"Wrote {args.csv}")
        if args.float_csv:
            write_csv(solution.w, args.float_csv, floats=True)
            print(f"Wrote {args.float_csv}")
        return 0

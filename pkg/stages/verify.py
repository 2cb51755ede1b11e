"""
Verify Stage - Brute-force residual of R(s) w on a trajectory file.
"""

import argparse

from stages.base import BaseStage
from systems.flow import verify_solution
from systems.serialization import load_system, load_trajectory


class VerifyStage(BaseStage):
    command = "verify"
    help = "check R(s) w = 0 at every checkable point of a trajectory"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("system", help="system JSON {n, q, R}")
        parser.add_argument("trajectory", help="trajectory JSON")
        self.add_common(parser, ["out"])

    def run(self, args: argparse.Namespace) -> int:
        system = load_system(args.system)
        w = load_trajectory(args.trajectory)
        report = verify_solution(system, w)
        print(f"Checked {report.checked_points} points, max residual {report.max_residual}")
        self.emit(report.to_dict(), args.out)
        return 0 if report.ok else 4

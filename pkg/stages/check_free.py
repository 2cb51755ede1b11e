"""
Check-Free Stage - Freeness and non-autonomy of the state space.
"""

import argparse

from stages.base import BaseStage
from systems.serialization import read_json, realization_from_dict
from systems.state import analyze_state_space


class CheckFreeStage(BaseStage):
    command = "check-free"
    help = "decide whether the initial conditions form a free module"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("realization", help="realization JSON written by regularize")
        self.add_common(parser, ["out"])

    def run(self, args: argparse.Namespace) -> int:
        data, text = read_json(args.realization)
        real, _, _ = realization_from_dict(data, text)
        report = analyze_state_space(real)
        print(f"gamma = {report.gamma}, d = {report.d}, rank X = {report.rank}")
        print(f"Free: {report.is_free}, non-autonomous over A_{report.d}: {report.is_nonautonomous}")
        self.emit(report.to_dict(), args.out)
        return 0

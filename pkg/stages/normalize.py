"""
Normalize Stage - Unimodular coordinate change making the system strongly relevant.
"""

import argparse

from core.errors import NotAutonomousError
from stages.base import BaseStage
from systems.behavior import is_autonomous
from systems.dnnl import normalize
from systems.serialization import load_system, normalization_to_dict


class NormalizeStage(BaseStage):
    command = "normalize"
    help = "run the normalization flow chart and write T, d and certificates"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("system", help="system JSON {n, q, R}")
        self.add_common(parser, ["out", "t-bound", "cert-bound", "seed"])

    def run(self, args: argparse.Namespace) -> int:
        settings = self.settings_for(args)
        system = load_system(args.system)
        if not is_autonomous(system):
            raise NotAutonomousError("system is not autonomous: the annihilator is zero")
        norm = normalize(system, settings, self.rng(settings))
        norm.check_invariants()
        print(f"T = {norm.transform.tolist()}, d = {norm.d}")
        for cert in norm.certificates:
            print(f"  certificate {cert}")
        self.publish("normalization.finished", {"d": norm.d, "T": norm.transform.tolist()})
        self.emit(normalization_to_dict(norm), args.out)
        return 0

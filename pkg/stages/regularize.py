"""
Regularize Stage - Build X, A_j, C for a normalized system.
"""

import argparse

from core.errors import NotAutonomousError
from stages.base import BaseStage
from systems.behavior import is_autonomous
from systems.dnnl import normalize
from systems.realization import build_realization, export_latent
from systems.serialization import (
    normalization_from_dict,
    read_json,
    realization_to_dict,
    system_from_dict,
    write_json,
)


class RegularizeStage(BaseStage):
    command = "regularize"
    help = "build the first-order realization from a normalization (or a system) file"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("input", help="normalization JSON, or a system JSON to normalize first")
        parser.add_argument("--latent", help="also write the latent-variable matrix to this path")
        self.add_common(parser, ["out", "t-bound", "cert-bound", "seed"])

    def run(self, args: argparse.Namespace) -> int:
        settings = self.settings_for(args)
        data, text = read_json(args.input)
        if "transformed_R" in data:
            norm = normalization_from_dict(data, text)
        else:
            system = system_from_dict(data, text)
            if not is_autonomous(system):
                raise NotAutonomousError("system is not autonomous: the annihilator is zero")
            norm = normalize(system, settings, self.rng(settings))

        real = build_realization(norm.transformed, norm.d, norm.certificates or None, settings.cert_degree_bound)
        real.check_invariants()
        print(f"d = {real.d}, gamma = {real.gamma}, {real.delta} relations")
        print("Generators: " + ", ".join(g.label(real.d) for g in real.generators))
        self.publish("realization.finished", {"d": real.d, "gamma": real.gamma, "delta": real.delta})
        self.emit(realization_to_dict(real, norm.transform, norm.source), args.out)

        if args.latent:
            latent = export_latent(real)
            write_json({"n": real.n, "rows": latent.rows, "cols": latent.cols, "M": latent.to_strings()},
                       args.latent)
            print(f"Wrote {args.latent}")
        return 0

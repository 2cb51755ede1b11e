"""
Analyze Stage - Autonomy, annihilator, Krull dimension and strong relevance.
"""

import argparse

from core.errors import NotStronglyRelevantError
from stages.base import BaseStage
from systems.behavior import annihilator, characteristic_ideal, is_autonomous
from systems.certificates import extract_certificates_from_annihilator
from systems.dnnl import krull_dimension
from systems.serialization import load_system


class AnalyzeStage(BaseStage):
    command = "analyze"
    help = "report autonomy, annihilator and the normalization level d"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("system", help="system JSON {n, q, R}")
        self.add_common(parser, ["out", "t-bound", "cert-bound"])

    def run(self, args: argparse.Namespace) -> int:
        settings = self.settings_for(args)
        system = load_system(args.system)
        print(f"n = {system.nvars}, q = {system.rank}, {len(system.rows)} equations")

        autonomous = is_autonomous(system)
        ann = annihilator(system)
        report = {
            "n": system.nvars,
            "q": system.rank,
            "autonomous": autonomous,
            "annihilator": [str(g[0]) for g in ann.reduced_generators()],
            "characteristic_ideal": [str(g[0]) for g in characteristic_ideal(system).rows],
        }
        print(f"Autonomous: {autonomous}")
        if not autonomous:
            print("Annihilator is zero; normalization and realization do not apply")
            report.update({"d": system.nvars, "strongly_relevant_at_identity": False})
            self.emit(report, args.out)
            return 0

        print("Annihilator: " + ", ".join(report["annihilator"]))
        d = krull_dimension(ann, settings.t_bound)
        try:
            certs = extract_certificates_from_annihilator(ann, d, settings.cert_degree_bound)
            relevant = True
        except NotStronglyRelevantError:
            certs, relevant = [], False
        print(f"Krull dimension d = {d}")
        print(f"Strongly relevant of order {d} without a transform: {relevant}")
        for cert in certs:
            print(f"  {cert}")
        report.update({
            "d": d,
            "krull_dimension": d,
            "strongly_relevant_at_identity": relevant,
            "certificates": [str(c.polynomial) for c in certs],
        })
        self.publish("analysis.finished", report)
        self.emit(report, args.out)
        return 0

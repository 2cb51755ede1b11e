"""
Membership Stage - Decide f in R through the realization, cross-checked by Gröbner reduction.
"""

import argparse

from algebra.parser import parse_polynomial
from core.errors import InvariantViolation, ParseError
from stages.base import BaseStage
from systems.serialization import read_json, realization_from_dict


class MembershipStage(BaseStage):
    command = "membership"
    help = "test whether a row vector (original coordinates) lies in the equation module"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("realization", help="realization JSON written by regularize")
        parser.add_argument("entries", nargs="+", help="the q polynomial entries of the row vector")
        self.add_common(parser, ["out"])

    def run(self, args: argparse.Namespace) -> int:
        data, text = read_json(args.realization)
        real, T, source = realization_from_dict(data, text)
        if len(args.entries) != real.q:
            raise ParseError(f"{len(args.entries)} entries given, q = {real.q}",
                             details={"entries": len(args.entries), "q": real.q})
        vector = [parse_polynomial(e, real.n) for e in args.entries]
        transformed = tuple(T.phi(p) for p in vector)

        member, witness = real.member_test(transformed)
        oracle = source.contains(vector)
        if member != oracle:
            raise InvariantViolation("realization membership disagrees with Gröbner membership",
                                     {"realization": member, "groebner": oracle})
        print(f"Member: {member}")
        if witness is not None:
            print("Witness F: [" + ", ".join(str(f) for f in witness) + "]")
        self.emit({"member": member, "witness": [str(f) for f in witness] if witness is not None else None},
                  args.out)
        return 0

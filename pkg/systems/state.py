"""
State Space Analysis - Freeness and non-autonomy of {x : X(s) x = 0}.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from algebra.equations import EquationModule, contract_to_subring
from algebra.laurent import LaurentPolynomial
from systems.behavior import annihilator
from systems.dnnl import NormalizationResult
from systems.realization import FirstOrderRealization

_log = logging.getLogger(__name__)


@dataclass
class StateSpaceReport:
    gamma: int
    d: int
    rank: int
    is_free: bool
    is_nonautonomous: Optional[bool] = None
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": self.gamma,
            "d": self.d,
            "rank": self.rank,
            "is_free": self.is_free,
            "is_nonautonomous": self.is_nonautonomous,
            "witnesses": self.witnesses,
        }


def minor_ideal(real: FirstOrderRealization) -> EquationModule:
    """Ideal of the r x r minors of X over A_d, r = rank X."""
    X = real.X
    r = X.rank() if X.rows else 0
    if r == 0:
        return EquationModule.full(real.d)
    minors: List[LaurentPolynomial] = []
    for rows in itertools.combinations(range(X.rows), r):
        for cols in itertools.combinations(range(X.cols), r):
            m = X.submatrix(rows, cols).det()
            if m:
                minors.append(m)
    return EquationModule.ideal(real.d, minors)


def freeness_check(real: FirstOrderRealization) -> StateSpaceReport:
    """
    Projectivity of the quotient by rowspan X through its Fitting ideal:
    free iff the maximal nonvanishing minors generate the unit ideal.
    """
    r = real.X.rank() if real.X.rows else 0
    ideal = minor_ideal(real)
    report = StateSpaceReport(real.gamma, real.d, r, ideal.is_full())
    if r and report.is_free:
        one = (LaurentPolynomial.one(real.d),)
        cofactors = ideal.lift(one)
        report.witnesses["bezout"] = {
            "minors": [str(g) for g in ideal.generators],
            "cofactors": [str(c) for c in cofactors] if cofactors is not None else None,
        }
    elif r:
        report.witnesses["minor_ideal"] = [str(g[0]) for g in ideal.reduced_generators()]
    _log.info("State space: rank %d, free=%s", r, report.is_free)
    return report


def faithful_over(system: EquationModule, d: int) -> bool:
    """ann(A^q / R) ∩ A_d = 0."""
    return contract_to_subring(annihilator(system), d).is_zero()


def nonautonomy_check(norm: NormalizationResult, d: Optional[int] = None) -> bool:
    """True when the state space is a non-autonomous d-D behavior (A^q / phi_hat(R) faithful over A_d)."""
    return faithful_over(norm.transformed, norm.d if d is None else d)


def analyze_state_space(real: FirstOrderRealization) -> StateSpaceReport:
    report = freeness_check(real)
    report.is_nonautonomous = faithful_over(real.system, real.d)
    return report

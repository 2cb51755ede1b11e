"""
Behaviors - Kernel representations and the quotient module they define.

ker R(s) is described by its equation module (row span of R).  This
module computes the characteristic ideal, the annihilator of A^q / rowspan R,
the autonomy test, and lets quotient elements act on trajectory windows.
"""

import itertools
import logging
from typing import List, Sequence

from algebra import modules
from algebra.equations import EquationModule, unit_vectors
from algebra.laurent import LaurentPolynomial, LaurentVector
from algebra.matrix import LaurentMatrix
from core.errors import DimensionMismatchError, InsufficientSupportError, WindowExhaustedError
from systems.trajectory import TrajectoryWindow, apply_operator, required_padding

_log = logging.getLogger(__name__)


def characteristic_ideal(system: EquationModule) -> EquationModule:
    """Ideal of all q x q minors of R; the zero ideal when R has fewer than q rows."""
    q, n = system.rank, system.nvars
    rows = system.rows
    if len(rows) < q:
        return EquationModule.zero(n)
    matrix = system.matrix
    minors = []
    for subset in itertools.combinations(range(len(rows)), q):
        m = matrix.submatrix(subset, range(q)).det()
        if m:
            minors.append(m)
    return EquationModule.ideal(n, minors)


def annihilator(system: EquationModule) -> EquationModule:
    """
    ann(A^q / R) = intersection over j of {f : f e_j in R}.

    Each colon ideal is the first coordinate of the syzygies of [e_j; R rows].
    """
    q, n = system.rank, system.nvars
    if q == 1:
        return EquationModule.ideal(n, [r[0] for r in system.rows])
    rows = system.nonzero_rows()
    if not rows:
        return EquationModule.zero(n)
    result = None
    for e_j in unit_vectors(n, q):
        syz = modules.syzygy_rows([e_j] + list(rows), q, n)
        colon = EquationModule.ideal(n, [s[0] for s in syz if s[0]])
        result = colon if result is None else result.intersect(colon)
        if result.is_zero():
            break
    _log.debug("Annihilator of rank-%d system: %d generators", q, len(result.rows))
    return result


def is_autonomous(system: EquationModule) -> bool:
    """
    ann != 0.  When R has at least q rows the minors test is evaluated too and
    any disagreement is logged as a warning.
    """
    autonomous = not annihilator(system).is_zero()
    if len(system.rows) >= system.rank:
        by_minors = not characteristic_ideal(system).is_zero()
        if by_minors != autonomous:
            _log.warning(
                "Autonomy tests disagree: annihilator says %s, characteristic ideal says %s",
                autonomous, by_minors,
            )
    return autonomous


def act_on_trajectory(lift: Sequence[LaurentPolynomial], w: TrajectoryWindow) -> TrajectoryWindow:
    """Apply the quotient element represented by ``lift`` to the window (a scalar output)."""
    if len(lift) != w.width:
        raise DimensionMismatchError(f"lift of length {len(lift)} on a width-{w.width} window")
    nvars = lift[0].nvars if lift else w.dim
    operator = LaurentMatrix(nvars, [list(lift)], cols=len(lift))
    try:
        return apply_operator(operator, w)
    except WindowExhaustedError as e:
        raise InsufficientSupportError(
            "window too small for the lift's support",
            dict(e.details, lift=[str(p) for p in lift]),
        ) from e


def required_box_for(lift: Sequence[LaurentPolynomial], lo, hi):
    """Input box needed to evaluate ``lift`` on [lo, hi]."""
    operator = LaurentMatrix(lift[0].nvars, [list(lift)], cols=len(lift))
    return required_padding(operator, tuple(lo), tuple(hi))


class QuotientModulePresentation:
    """
    M = A^q / R, with classes represented by normal forms against the
    saturated basis of R.
    """

    def __init__(self, parent: EquationModule):
        self.parent = parent

    @property
    def rank(self) -> int:
        return self.parent.rank

    def reduce(self, vector: Sequence[LaurentPolynomial]) -> LaurentVector:
        """Normal form of a lift; equal for two lifts that clear to the same shift."""
        return self.parent.normal_form(vector)

    def same_class(self, u: Sequence[LaurentPolynomial], v: Sequence[LaurentPolynomial]) -> bool:
        return self.parent.contains(tuple(a - b for a, b in zip(u, v)))

    def is_zero_class(self, u: Sequence[LaurentPolynomial]) -> bool:
        return self.parent.contains(u)

    def act(self, lift: Sequence[LaurentPolynomial], w: TrajectoryWindow) -> TrajectoryWindow:
        return act_on_trajectory(lift, w)

    def annihilator(self) -> EquationModule:
        return annihilator(self.parent)

    def basis_classes(self) -> List[LaurentVector]:
        """Classes of e_1..e_q."""
        return unit_vectors(self.parent.nvars, self.parent.rank)

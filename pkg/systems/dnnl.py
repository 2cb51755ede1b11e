"""
Discrete Noether Normalization - Make a quotient finitely generated over A_d.

The flow driver walks down the tower A_n ⊃ A_{n-1} ⊃ ... : while the
current ideal still meets A_level, one element of that intersection is
normalized by a lower-triangular shear of the first ``level`` lattice
coordinates, which makes A_{level-1} -> A_level / (a ∩ A_level) integral.
The level where the intersection first vanishes is d.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra.equations import EquationModule, contract_to_subring
from algebra.laurent import LaurentPolynomial
from core.config import EngineSettings
from core.errors import InvariantViolation, NormalizationIncompleteError, NotStronglyRelevantError
from systems.behavior import annihilator
from systems.certificates import (
    IntegralityCertificate,
    extract_certificates_from_annihilator,
    monic_unit_form,
)
from systems.transform import UnimodularTransform

_log = logging.getLogger(__name__)


# ==================== Single polynomial ====================

def _separates(t: Sequence[int], support: Sequence[Tuple[int, ...]]) -> bool:
    """<(t, 1), nu> pairwise distinct on the support."""
    values = {sum(a * b for a, b in zip(t, nu[:-1])) + nu[-1] for nu in support}
    return len(values) == len(support)


def _search_order(m: int, bound: int):
    """All t in Z^m with max |t_i| <= bound, smallest magnitudes first."""
    for b in range(bound + 1):
        shell = [t for t in itertools.product(range(-b, b + 1), repeat=m) if max(map(abs, t), default=0) == b]
        shell.sort(key=lambda t: (sum(map(abs, t)), tuple((abs(x), x < 0) for x in t)))
        yield from shell


def _shear(t: Sequence[int]) -> UnimodularTransform:
    n = len(t) + 1
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[-1][:-1] = list(t)
    return UnimodularTransform.from_rows(rows)


def separating_vector(f: LaurentPolynomial, bound: int = 8) -> Tuple[int, ...]:
    """
    t in Z^(n-1) making the last-coordinate degrees of phi_T(f) distinct.

    Bounded search first; otherwise t_i = B^(n-i) with B = 2D + 1, D the
    largest coordinate magnitude on the support.
    """
    n = f.nvars
    support = f.support()
    for t in _search_order(n - 1, bound):
        if _separates(t, support):
            return t
    D = max(abs(x) for nu in support for x in nu)
    base = 2 * D + 1
    t = tuple(base ** (n - 1 - i) for i in range(n - 1))
    if not _separates(t, support):
        raise InvariantViolation("mixed-radix shear failed to separate the support",
                                 {"polynomial": str(f), "t": list(t)})
    _log.debug("t-search exhausted at bound %d, fallback t=%s", bound, t)
    return t


def normalize_polynomial(f: LaurentPolynomial, bound: int = 8) -> Tuple[UnimodularTransform, LaurentPolynomial]:
    """
    T and phi_T(f) with every s_n-coefficient of phi_T(f) a single term.

    T is lower triangular with unit diagonal and last row (t, 1).
    """
    if f.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    n = f.nvars
    if n == 0 or len(f) == 1:
        return UnimodularTransform.identity(n), f
    T = _shear(separating_vector(f, bound))
    return T, T.phi(f)


# ==================== Flow chart ====================

@dataclass
class FlowStep:
    """One pass of the flow chart: normalize at ``level`` and step down."""

    level: int
    transform: UnimodularTransform
    element: LaurentPolynomial
    witness: IntegralityCertificate


@dataclass
class NormalizationResult:
    transform: UnimodularTransform
    d: int
    transformed: EquationModule
    annihilator: EquationModule
    certificates: List[IntegralityCertificate] = field(default_factory=list)
    steps: List[FlowStep] = field(default_factory=list)
    source: Optional[EquationModule] = None

    @property
    def n(self) -> int:
        return self.transformed.nvars

    @property
    def krull_dimension(self) -> int:
        return self.d

    @property
    def path(self) -> List[int]:
        """Levels whose intersection was nonzero, top down."""
        return [s.level for s in self.steps]

    @property
    def witnesses(self) -> List[IntegralityCertificate]:
        return [s.witness for s in self.steps]

    def check_invariants(self) -> None:
        faithful = contract_to_subring(self.annihilator, self.d)
        if not self.annihilator.is_full() and not faithful.is_zero():
            raise InvariantViolation(f"annihilator meets A_{self.d} after normalization", {"d": self.d})
        for cert in self.certificates:
            if not cert.is_well_formed(self.d):
                raise InvariantViolation(f"certificate {cert} is not monic with unit trailing coefficient")
            if not cert.annihilates(self.transformed):
                raise InvariantViolation(f"certificate {cert} does not annihilate the transformed module")


def _choose(candidates: List[LaurentPolynomial], level: int, selection: str,
            rng: Optional[np.random.Generator]) -> LaurentPolynomial:
    if selection == "random":
        rng = rng if rng is not None else np.random.default_rng()
        return candidates[int(rng.integers(len(candidates)))]
    return min(candidates, key=lambda g: (
        g.total_degree(),
        0 if monic_unit_form(g, level - 1) is not None else 1,
        len(g),
        str(g),
    ))


def step_down(ideal: EquationModule, level: int, t_bound: int = 8, selection: str = "smallest",
              rng: Optional[np.random.Generator] = None,
              ) -> Optional[Tuple[UnimodularTransform, EquationModule, LaurentPolynomial, IntegralityCertificate]]:
    """
    Normalize an element of ideal ∩ A_level inside A_level.

    Returns (blockdiag(T~, I), phi_T(ideal), the chosen element, its
    normalized image as a witness), or None when the intersection is zero.
    """
    n = ideal.nvars
    small = contract_to_subring(ideal, level)
    if small.is_zero():
        return None
    var = level - 1
    if small.is_full():
        relation = LaurentPolynomial.variable(n, var) - 1
        return UnimodularTransform.identity(n), ideal, LaurentPolynomial.one(n), IntegralityCertificate(var, relation, 1)

    candidates = [r[0] for r in small.reduced_generators() if r[0]]
    element = _choose(candidates, level, selection, rng)
    if monic_unit_form(element, var) is not None:
        local = UnimodularTransform.identity(level)
    else:
        local, _ = normalize_polynomial(element, t_bound)
    Tstep = UnimodularTransform.block_diagonal(local, n)
    found = monic_unit_form(local.phi(element), var)
    if found is None:
        raise InvariantViolation("normalized element is not monic", {"element": str(element), "level": level})
    monic, degree = found
    witness = IntegralityCertificate(var, monic.embed(n, range(level)), degree)
    _log.info("Level %d: normalized %s with T~=%s", level, element, local.tolist())
    return Tstep, Tstep.phi_hat(ideal), element.embed(n, range(level)), witness


def dnnl_ideal(ideal: EquationModule, t_bound: int = 8, selection: str = "smallest",
               rng: Optional[np.random.Generator] = None,
               cert_bound: Optional[int] = None) -> NormalizationResult:
    """Run the flow chart on an ideal of A_n and extract certificates at the stopping level."""
    if ideal.rank != 1:
        raise ValueError("dnnl_ideal expects an ideal")
    n = ideal.nvars
    T = UnimodularTransform.identity(n)
    current = ideal
    steps: List[FlowStep] = []
    level = n
    while level > 0:
        stepped = step_down(current, level, t_bound, selection, rng)
        if stepped is None:
            break
        Tstep, current, element, witness = stepped
        steps = [FlowStep(s.level, s.transform, s.element, s.witness.transport(Tstep)) for s in steps]
        steps.append(FlowStep(level, Tstep, element, witness))
        T = Tstep @ T
        level -= 1
    d = level
    _log.info("Normalization stopped at d=%d with T=%s", d, T.tolist())

    result = NormalizationResult(T, d, current, current, steps=steps, source=ideal)
    if current.is_zero():
        return result
    try:
        result.certificates = extract_certificates_from_annihilator(current, d, cert_bound)
    except NotStronglyRelevantError as e:
        raise NormalizationIncompleteError(
            f"normalization reached d={d} but certificate extraction failed: {e.message}",
            dict(e.details, T=T.tolist(), transformed=[str(r[0]) for r in current.rows]),
        ) from e
    return result


def dnnl_module(system: EquationModule, t_bound: int = 8, selection: str = "smallest",
                rng: Optional[np.random.Generator] = None,
                cert_bound: Optional[int] = None) -> NormalizationResult:
    """Normalize ann(A^q / R) and carry R along with phi_hat_T."""
    ann = annihilator(system)
    result = dnnl_ideal(ann, t_bound, selection, rng, cert_bound)
    result.transformed = result.transform.phi_hat(system)
    result.source = system
    return result


def normalize(system: EquationModule, settings: Optional[EngineSettings] = None,
              rng: Optional[np.random.Generator] = None) -> NormalizationResult:
    """dnnl_module with knobs read from ``settings``."""
    settings = settings or EngineSettings()
    if rng is None and settings.selection == "random":
        rng = np.random.default_rng(settings.seed)
    return dnnl_module(system, settings.t_bound, settings.selection, rng, settings.cert_degree_bound)


def krull_dimension(ideal: EquationModule, t_bound: int = 8) -> int:
    """Stopping level of the flow chart; certificates are not extracted."""
    n = ideal.nvars
    current, level = ideal, n
    while level > 0:
        stepped = step_down(current, level, t_bound)
        if stepped is None:
            break
        current = stepped[1]
        level -= 1
    return level

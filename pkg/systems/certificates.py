"""
Integrality Certificates - Monic relations of the big variables over A_d.

A certificate for variable s_i (i >= d) is an element of the annihilator

    p = s_i^L + a_{L-1} s_i^(L-1) + ... + a_0,    a_k in A_d,  a_0 a unit

Its existence for every big variable is exactly finite generation of
A^q / R over A_d.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from algebra import groebner as gb
from algebra import modules
from algebra.equations import EquationModule
from algebra.laurent import LaurentPolynomial
from algebra.orders import module_order
from core.errors import NotStronglyRelevantError
from systems.behavior import annihilator as compute_annihilator

_log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegralityCertificate:
    """
    p_i for the big variable with 0-based index ``var_index``.

    ``polynomial`` lives in the full n-variable ring; it involves only
    s_1..s_d and s_{var_index+1}.
    """

    var_index: int
    polynomial: LaurentPolynomial
    degree: int

    @property
    def nvars(self) -> int:
        return self.polynomial.nvars

    def coefficients(self) -> Dict[int, LaurentPolynomial]:
        """Coefficient of s_i^k for k = 0..L (n-variable polynomials free of s_i)."""
        return self.polynomial.coefficients_in(self.var_index)

    def leading(self) -> LaurentPolynomial:
        return self.coefficients()[self.degree]

    def trailing(self) -> LaurentPolynomial:
        return self.coefficients()[0]

    def is_well_formed(self, d: int) -> bool:
        """Monic of degree L in s_i, unit constant coefficient, coefficients over A_d."""
        allowed = set(range(d)) | {self.var_index}
        if not set(self.polynomial.variables()) <= allowed:
            return False
        coeffs = self.coefficients()
        if set(coeffs) - set(range(self.degree + 1)):
            return False
        if self.degree < 1 or coeffs.get(self.degree) != LaurentPolynomial.one(self.nvars):
            return False
        return 0 in coeffs and coeffs[0].is_unit()

    def annihilates(self, system: EquationModule) -> bool:
        """p e_j in R for every j."""
        zero = LaurentPolynomial.zero(self.nvars)
        for j in range(system.rank):
            row = tuple(self.polynomial if k == j else zero for k in range(system.rank))
            if not system.contains(row):
                return False
        return True

    def transport(self, transform) -> "IntegralityCertificate":
        """
        Image under phi_T for a transform that fixes s_i and maps A_d into A_d.

        Units stay units and monicity in s_i is preserved.
        """
        return IntegralityCertificate(self.var_index, transform.phi(self.polynomial), self.degree)

    def __str__(self) -> str:
        return f"s{self.var_index + 1}: {self.polynomial}"


def monic_unit_form(poly: LaurentPolynomial, var: int) -> Optional[Tuple[LaurentPolynomial, int]]:
    """
    Shift so the lowest power of ``var`` is 0 and divide by the leading
    coefficient; None unless both extreme coefficients are units.
    """
    if poly.is_zero():
        return None
    coeffs = poly.coefficients_in(var)
    lo, hi = min(coeffs), max(coeffs)
    if hi == lo:
        return None
    lead, trail = coeffs[hi], coeffs[lo]
    if not (lead.is_unit() and trail.is_unit()):
        return None
    shifted = poly.shift(tuple(-lo if k == var else 0 for k in range(poly.nvars)))
    return shifted * lead.inverse(), hi - lo


def _combine_leading(elements: List[LaurentPolynomial], var: int, d: int,
                     bound: int) -> Optional[Tuple[LaurentPolynomial, int]]:
    """
    Build a monic element from A_d-combinations of ``elements``.

    For L = 1..bound: if the leading coefficients of the elements of
    s_var-degree <= L generate the unit ideal of A_d, 1 = sum h_k lc_k and
    p = sum h_k s_var^(L - deg_k) g_k is monic of degree L.
    """
    nvars = elements[0].nvars if elements else 0
    shaped = []
    for g in elements:
        coeffs = g.coefficients_in(var)
        lo = min(coeffs)
        g = g.shift(tuple(-lo if k == var else 0 for k in range(nvars)))
        coeffs = g.coefficients_in(var)
        shaped.append((g, max(coeffs), coeffs[max(coeffs)]))
    small = list(range(d))
    for L in range(1, bound + 1):
        usable = [(g, deg, lc) for g, deg, lc in shaped if 0 < deg <= L]
        if not usable:
            continue
        lc_ideal = EquationModule.ideal(d, [lc.project(small) for _, _, lc in usable])
        cofactors = lc_ideal.lift((LaurentPolynomial.one(d),))
        if cofactors is None:
            continue
        p = LaurentPolynomial.zero(nvars)
        for (g, deg, _), h in zip(usable, cofactors):
            lifted = h.embed(nvars, small)
            p = p + lifted * g.shift(tuple(L - deg if k == var else 0 for k in range(nvars)))
        found = monic_unit_form(p, var)
        if found is not None:
            _log.debug("Certificate for s%d from a combination at L=%d", var + 1, L)
            return found
    return None


def extract_certificate(annihilator: EquationModule, d: int, var: int,
                        degree_bound: Optional[int] = None) -> IntegralityCertificate:
    """Certificate for big variable ``var`` (0-based, var >= d)."""
    n = annihilator.nvars
    if annihilator.is_full():
        # quotient is zero; s - 1 is a valid relation
        return IntegralityCertificate(var, LaurentPolynomial.variable(n, var) - 1, 1)
    keep = list(range(d)) + [var]
    eliminated = annihilator.contract(keep)
    if eliminated.is_zero():
        raise NotStronglyRelevantError(
            f"annihilator meets A_{d}[s{var + 1}] trivially: not strongly relevant of order {d}",
            {"d": d, "variable": var + 1},
        )
    # basis with the certificate variable (index d of the small ring) eliminated first
    vectors, _ = modules.rows_to_vectors(eliminated.rows)
    basis = gb.groebner(vectors, 1, d + 1, module_order("elimination", eliminate=[d]))
    candidates = [modules.vector_to_row(v, 1, d + 1)[0] for v in basis.generators]
    candidates.extend(r[0] for r in eliminated.reduced_generators())

    accepted = []
    for g in candidates:
        found = monic_unit_form(g, d)
        if found is not None:
            accepted.append(found)
    if accepted:
        p, L = min(accepted, key=lambda item: (item[1], len(item[0]), str(item[0])))
    else:
        bound = degree_bound or max(1, 2 * max(c.total_degree() for c in candidates))
        combined = _combine_leading(candidates, d, d, bound)
        if combined is None:
            raise NotStronglyRelevantError(
                f"no monic relation with unit constant term for s{var + 1} over A_{d} "
                f"(degree bound {bound}): not strongly relevant of order {d}, or bound too small",
                {"d": d, "variable": var + 1, "degree_bound": bound},
            )
        p, L = combined
    positions = list(range(d)) + [var]
    cert = IntegralityCertificate(var, p.embed(n, positions), L)
    _log.info("Certificate %s (L=%d)", cert, L)
    return cert


def extract_certificates_from_annihilator(annihilator: EquationModule, d: int,
                                          degree_bound: Optional[int] = None) -> List[IntegralityCertificate]:
    return [extract_certificate(annihilator, d, var, degree_bound) for var in range(d, annihilator.nvars)]


def extract_certificates(system: EquationModule, d: int, degree_bound: Optional[int] = None,
                         annihilator: Optional[EquationModule] = None) -> List[IntegralityCertificate]:
    """One certificate per big variable s_{d+1}..s_n; raises NotStronglyRelevantError."""
    if not 0 <= d <= system.nvars:
        raise ValueError(f"d={d} outside [0, {system.nvars}]")
    ann = annihilator if annihilator is not None else compute_annihilator(system)
    if ann.is_zero():
        raise NotStronglyRelevantError("system is not autonomous (annihilator is zero)", {"d": d})
    return extract_certificates_from_annihilator(ann, d, degree_bound)


def is_strongly_relevant(system: EquationModule, d: int, degree_bound: Optional[int] = None) -> bool:
    """True when certificates exist at order d in the current coordinates."""
    try:
        extract_certificates(system, d, degree_bound)
    except NotStronglyRelevantError:
        return False
    return True

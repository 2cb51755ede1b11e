"""
Laurent Bridge - Laurent-module semantics on top of the polynomial Gröbner engine.

A submodule of A^q (A the Laurent ring) is represented by the polynomial
module spanned by its cleared rows, saturated by x1*...*xn.  Membership,
syzygies, contraction to a subring, intersection and colon are all
computed on that model and translated back.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from algebra import groebner as gb
from algebra.laurent import Exponent, LaurentPolynomial, LaurentVector, clear_vector
from algebra.orders import Monomial
from core.errors import DimensionMismatchError, InvariantViolation

_log = logging.getLogger(__name__)

# Laurent lifting multiplies by (x1...xn)^k; k never needs to exceed this in practice
_MAX_LIFT_SHIFT = 256


# ==================== Conversion ====================

def poly_to_dict(poly: LaurentPolynomial) -> Dict[Monomial, Fraction]:
    return dict(poly.items())


def dict_to_poly(terms: Dict[Monomial, Fraction], nvars: int) -> LaurentPolynomial:
    return LaurentPolynomial(nvars, terms)


def rows_to_vectors(rows: Sequence[Sequence[LaurentPolynomial]]) -> Tuple[List[gb.Vector], List[Exponent]]:
    """Clear every nonzero row to a polynomial vector; returns vectors and their shifts."""
    vectors, shifts = [], []
    for row in rows:
        cleared, mu = clear_vector(row)
        vec: gb.Vector = {}
        for pos, poly in enumerate(cleared):
            for mono, c in poly.items():
                vec[(pos, mono)] = c
        if vec:
            vectors.append(vec)
            shifts.append(mu)
    return vectors, shifts


def vector_to_row(vec: gb.Vector, rank: int, nvars: int) -> LaurentVector:
    parts: List[Dict[Exponent, Fraction]] = [dict() for _ in range(rank)]
    for (pos, mono), c in vec.items():
        parts[pos][mono] = c
    return tuple(LaurentPolynomial(nvars, p) for p in parts)


def _vector_nvars(rows: Sequence[Sequence[LaurentPolynomial]], default: int) -> int:
    for row in rows:
        for p in row:
            return p.nvars
    return default


# ==================== Laurent operations ====================

def saturated_basis(rows: Sequence[Sequence[LaurentPolynomial]], rank: int, nvars: int) -> gb.PolyModuleBasis:
    """Reduced Gröbner basis (grevlex, term over position) of the saturated polynomial model."""
    vectors, _ = rows_to_vectors(rows)
    sat = gb.saturate_variables(vectors, rank, nvars) if vectors else []
    return gb.groebner(sat, rank, nvars)


def member(vector: Sequence[LaurentPolynomial], sat: gb.PolyModuleBasis) -> bool:
    if len(vector) != sat.rank:
        raise DimensionMismatchError(f"Vector of length {len(vector)} against a rank {sat.rank} module")
    vectors, _ = rows_to_vectors([vector])
    return not vectors or gb.contains(sat, vectors[0])


def syzygy_rows(rows: Sequence[Sequence[LaurentPolynomial]], rank: int, nvars: int) -> List[LaurentVector]:
    """
    Laurent generators of {r : sum r_i rows_i = 0}.

    Rows are cleared one by one (row i times s^mu_i); a polynomial syzygy
    s of the cleared rows gives the Laurent syzygy (s_i s^mu_i).
    """
    k = len(rows)
    cleared: List[gb.Vector] = []
    shifts: List[Exponent] = []
    for row in rows:
        vecs, mus = rows_to_vectors([row])
        cleared.append(vecs[0] if vecs else {})
        shifts.append(mus[0] if mus else (0,) * nvars)
    nonzero = [i for i in range(k) if cleared[i]]
    zero_rows = [i for i in range(k) if not cleared[i]]

    result: List[LaurentVector] = []
    one = LaurentPolynomial.one(nvars)
    zero = LaurentPolynomial.zero(nvars)
    for i in zero_rows:
        result.append(tuple(one if j == i else zero for j in range(k)))
    for syz in gb.syzygy_module([cleared[i] for i in nonzero], rank, nvars):
        parts = vector_to_row(syz, len(nonzero), nvars)
        full = [zero] * k
        for local, i in enumerate(nonzero):
            full[i] = parts[local].shift(shifts[i])
        result.append(tuple(full))
    return result


def contract(rows: Sequence[Sequence[LaurentPolynomial]], rank: int, nvars: int,
             keep: Sequence[int]) -> List[LaurentVector]:
    """
    Elements of the Laurent span involving only the variables in ``keep``.

    Returned rows live in len(keep) variables (variable k of the result is
    variable keep[k] of the input).
    """
    keep = list(keep)
    drop = [i for i in range(nvars) if i not in keep]
    sat = saturated_basis(rows, rank, nvars)
    kept = gb.eliminate(sat.generators, rank, nvars, drop)
    result = []
    for vec in kept:
        projected = {(p, tuple(m[i] for i in keep)): c for (p, m), c in vec.items()}
        result.append(vector_to_row(projected, rank, len(keep)))
    _log.debug("Contracted %d generators to %d over variables %s", len(sat.generators), len(result), keep)
    return result


def intersect(a_rows: Sequence[Sequence[LaurentPolynomial]], b_rows: Sequence[Sequence[LaurentPolynomial]],
              rank: int, nvars: int) -> List[LaurentVector]:
    sat_a = saturated_basis(a_rows, rank, nvars)
    sat_b = saturated_basis(b_rows, rank, nvars)
    if sat_a.is_zero() or sat_b.is_zero():
        return []
    vecs = gb.intersect(sat_a.generators, sat_b.generators, rank, nvars)
    return [vector_to_row(v, rank, nvars) for v in vecs]


def colon_element(rows: Sequence[Sequence[LaurentPolynomial]], g: LaurentPolynomial,
                  rank: int, nvars: int) -> List[LaurentVector]:
    """M : g = {v : g v in M} over the Laurent ring."""
    if g.is_zero():
        raise ValueError("colon by the zero element")
    sat = saturated_basis(rows, rank, nvars)
    cleared, _ = g.clear()
    vecs = gb.colon(sat.generators, poly_to_dict(cleared), rank, nvars)
    return [vector_to_row(v, rank, nvars) for v in vecs]


def lift(rows: Sequence[Sequence[LaurentPolynomial]], vector: Sequence[LaurentPolynomial],
         rank: int, nvars: int) -> Optional[List[LaurentPolynomial]]:
    """
    Laurent cofactors F with vector = sum F_l rows_l, or None when not a member.
    """
    sat = saturated_basis(rows, rank, nvars)
    if not member(vector, sat):
        return None
    k = len(rows)
    zero = LaurentPolynomial.zero(nvars)
    target, mu_v = clear_vector(vector)
    if all(p.is_zero() for p in target):
        return [zero] * k

    cleared: List[gb.Vector] = []
    shifts: List[Exponent] = []
    index: List[int] = []
    for l, row in enumerate(rows):
        vecs, mus = rows_to_vectors([row])
        if vecs:
            cleared.append(vecs[0])
            shifts.append(mus[0])
            index.append(l)

    target_vecs, _ = rows_to_vectors([target])
    base = target_vecs[0]
    for k_shift in range(_MAX_LIFT_SHIFT + 1):
        shift = (k_shift,) * nvars
        candidate = gb.scale_vector(base, Fraction(1), shift)
        cofactors = gb.lift(cleared, candidate, rank, nvars)
        if cofactors is None:
            continue
        result = [zero] * k
        for local, l in enumerate(index):
            poly = dict_to_poly(cofactors[local], nvars)
            # s^(k + mu_v) v = sum a_l s^mu_l R_l
            exp = tuple(m - mv - k_shift for m, mv in zip(shifts[local], mu_v))
            result[l] = poly.shift(exp)
        return result
    raise InvariantViolation("Laurent lift did not terminate", {"max_shift": _MAX_LIFT_SHIFT})


def normal_form(vector: Sequence[LaurentPolynomial], sat: gb.PolyModuleBasis) -> LaurentVector:
    """Remainder of the cleared vector modulo the saturated basis, shifted back."""
    nvars = sat.nvars
    cleared, mu = clear_vector(vector)
    vecs, _ = rows_to_vectors([cleared])
    if not vecs:
        return tuple(vector)
    rem = gb.normal_form(vecs[0], sat)
    back = tuple(-m for m in mu)
    return tuple(p.shift(back) for p in vector_to_row(rem, sat.rank, nvars))

"""
Gröbner Engine - Buchberger completion for submodules of free polynomial modules.

Module elements are sparse dicts ``{(position, monomial): Fraction}`` over
Q[x1..xm] with non-negative exponents.  The Laurent layer sits on top of
this in ``algebra.modules``.
"""

import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from algebra.orders import Monomial, ModuleOrder, module_order

_log = logging.getLogger(__name__)

Term = Tuple[int, Monomial]
Vector = Dict[Term, Fraction]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def leading_term(vec: Vector, order: ModuleOrder) -> Term:
    return max(vec, key=lambda t: order.term_key(t[0], t[1]))


def subtract_multiple(target: Vector, vec: Vector, coeff: Fraction, shift: Monomial) -> None:
    """target -= coeff * x^shift * vec, in place."""
    for (pos, mono), c in vec.items():
        key = (pos, _add(mono, shift))
        value = target.get(key, 0) - coeff * c
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def scale_vector(vec: Vector, coeff: Fraction, shift: Optional[Monomial] = None) -> Vector:
    if shift is None:
        return {t: c * coeff for t, c in vec.items()}
    return {(p, _add(m, shift)): c * coeff for (p, m), c in vec.items()}


class _Element:
    __slots__ = ("vec", "lead", "lc")

    def __init__(self, vec: Vector, order: ModuleOrder):
        self.lead = leading_term(vec, order)
        lc = vec[self.lead]
        self.vec = {t: c / lc for t, c in vec.items()}
        self.lc = Fraction(1)


@dataclass(eq=False)
class PolyModuleBasis:
    """Generators of a submodule of Q[x1..x_nvars]^rank under a fixed term order."""

    rank: int
    nvars: int
    generators: List[Vector]
    order: ModuleOrder
    is_groebner: bool = False

    def leading_terms(self) -> List[Term]:
        return [leading_term(g, self.order) for g in self.generators]

    def is_zero(self) -> bool:
        return not self.generators

    def contains_unit_vector(self, pos: int) -> bool:
        """True when the leading terms include 1*e_pos (basis must be a GB)."""
        one = (0,) * self.nvars
        return any(t == (pos, one) for t in self.leading_terms())


# ==================== Division ====================

def spoly(f: _Element, g: _Element) -> Vector:
    """S-vector of two monic elements with leading terms in the same position."""
    lcm = _lcm(f.lead[1], g.lead[1])
    s = scale_vector(f.vec, Fraction(1), _sub(lcm, f.lead[1]))
    subtract_multiple(s, g.vec, Fraction(1), _sub(lcm, g.lead[1]))
    return s


def reduce(vec: Vector, elements: Sequence[_Element], order: ModuleOrder,
           track: bool = False) -> Tuple[Vector, Optional[List[Dict[Monomial, Fraction]]]]:
    """
    Full multivariate division of ``vec`` by ``elements``.

    Returns the remainder and, when ``track`` is set, the polynomial
    cofactor of each element (vec = sum cof_k * elem_k + remainder).
    """
    p = dict(vec)
    remainder: Vector = {}
    cofactors = [dict() for _ in elements] if track else None
    key = lambda t: order.term_key(t[0], t[1])
    by_position: Dict[int, List[int]] = {}
    for k, e in enumerate(elements):
        by_position.setdefault(e.lead[0], []).append(k)

    while p:
        t = max(p, key=key)
        c = p[t]
        divisor = None
        for k in by_position.get(t[0], ()):
            if _divides(elements[k].lead[1], t[1]):
                divisor = k
                break
        if divisor is None:
            remainder[t] = c
            del p[t]
            continue
        e = elements[divisor]
        shift = _sub(t[1], e.lead[1])
        factor = c / e.lc
        subtract_multiple(p, e.vec, factor, shift)
        if track:
            cof = cofactors[divisor]
            value = cof.get(shift, 0) + factor
            if value:
                cof[shift] = value
            else:
                cof.pop(shift, None)
    return remainder, cofactors


# ==================== Completion ====================

def _pair(i: int, j: int) -> Tuple[int, int]:
    return (i, j) if i < j else (j, i)


def select(pairs: Set[Tuple[int, int]], elements: Sequence[_Element], order: ModuleOrder) -> Tuple[int, int]:
    """Normal strategy: smallest lcm degree, then smallest lcm in the term order."""
    def strategy_key(p):
        f, g = elements[p[0]], elements[p[1]]
        lcm = _lcm(f.lead[1], g.lead[1])
        return (sum(lcm), order.term_key(f.lead[0], lcm), p)
    return min(pairs, key=strategy_key)


def _chain_criterion(i: int, j: int, elements: Sequence[_Element], pending: Set[Tuple[int, int]]) -> bool:
    pos = elements[i].lead[0]
    lcm = _lcm(elements[i].lead[1], elements[j].lead[1])
    for k, e in enumerate(elements):
        if k in (i, j) or e.lead[0] != pos:
            continue
        if _divides(e.lead[1], lcm) and _pair(i, k) not in pending and _pair(j, k) not in pending:
            return True
    return False


def minimalize(elements: List[_Element], order: ModuleOrder) -> List[_Element]:
    """Drop elements whose leading term is divisible by another leading term."""
    result: List[_Element] = []
    for e in sorted(elements, key=lambda x: order.term_key(*x.lead)):
        if all(not (m.lead[0] == e.lead[0] and _divides(m.lead[1], e.lead[1])) for m in result):
            result.append(e)
    return result


def interreduce(elements: List[_Element], order: ModuleOrder) -> List[_Element]:
    """Reduced basis from a minimal one."""
    reduced = []
    for i, e in enumerate(elements):
        others = elements[:i] + elements[i + 1:]
        r, _ = reduce(e.vec, others, order)
        reduced.append(_Element(r, order))
    return reduced


def _complete(generators: Sequence[Vector], rank: int, order: ModuleOrder) -> List[_Element]:
    elements = [_Element(dict(g), order) for g in generators if g]
    pending: Set[Tuple[int, int]] = {
        (i, j) for j in range(len(elements)) for i in range(j)
        if elements[i].lead[0] == elements[j].lead[0]
    }
    reductions = 0
    while pending:
        i, j = select(pending, elements, order)
        pending.discard((i, j))
        f, g = elements[i], elements[j]
        if rank == 1 and _lcm(f.lead[1], g.lead[1]) == _add(f.lead[1], g.lead[1]):
            continue
        if _chain_criterion(i, j, elements, pending):
            continue
        r, _ = reduce(spoly(f, g), elements, order)
        reductions += 1
        if r:
            new = _Element(r, order)
            k = len(elements)
            elements.append(new)
            pending.update((m, k) for m in range(k) if elements[m].lead[0] == new.lead[0])
    _log.debug("Buchberger finished: %d elements, %d S-reductions", len(elements), reductions)
    return interreduce(minimalize(elements, order), order)


class GroebnerCache:
    """
    LRU cache of reduced Gröbner bases keyed by (generators, order).

    Guarded by a lock so concurrent callers see identical results.
    """

    def __init__(self, size: int = 256):
        self.size = size
        self._data: "OrderedDict[Tuple, List[Vector]]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Tuple) -> Optional[List[Vector]]:
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                self.hits += 1
                return self._data[key]
            self.misses += 1
            return None

    def put(self, key: Tuple, value: List[Vector]) -> None:
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.size:
                self._data.popitem(last=False)

    def resize(self, size: int) -> None:
        with self._lock:
            self.size = size
            while len(self._data) > self.size:
                self._data.popitem(last=False)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_cache = GroebnerCache()


def get_cache() -> GroebnerCache:
    """Get the process-wide Gröbner basis cache."""
    return _cache


def _cache_key(generators: Sequence[Vector], rank: int, nvars: int, order: ModuleOrder) -> Tuple:
    canon = tuple(sorted(tuple(sorted(g.items())) for g in generators if g))
    return (order.cache_token(), rank, nvars, canon)


def buchberger(basis: PolyModuleBasis) -> PolyModuleBasis:
    """Reduced Gröbner basis of the span of ``basis`` (same order, same rank)."""
    if basis.is_groebner:
        return basis
    key = _cache_key(basis.generators, basis.rank, basis.nvars, basis.order)
    cached = _cache.get(key)
    if cached is None:
        elements = _complete(basis.generators, basis.rank, basis.order)
        cached = [e.vec for e in elements]
        _cache.put(key, cached)
    return PolyModuleBasis(basis.rank, basis.nvars, [dict(v) for v in cached], basis.order, True)


def groebner(generators: Sequence[Vector], rank: int, nvars: int,
             order: Optional[ModuleOrder] = None) -> PolyModuleBasis:
    return buchberger(PolyModuleBasis(rank, nvars, list(generators), order or module_order()))


def _elements(gb: PolyModuleBasis) -> List[_Element]:
    if not gb.is_groebner:
        raise ValueError("normal form needs a Gröbner basis")
    return [_Element(g, gb.order) for g in gb.generators]


def normal_form(vec: Vector, gb: PolyModuleBasis, with_cofactors: bool = False):
    """
    Remainder of ``vec`` modulo a Gröbner basis.

    With ``with_cofactors`` returns (remainder, cofactors) where
    cofactors[k] is the polynomial multiplier of gb.generators[k].
    """
    remainder, cofactors = reduce(vec, _elements(gb), gb.order, track=with_cofactors)
    if with_cofactors:
        return remainder, cofactors
    return remainder


def contains(gb: PolyModuleBasis, vec: Vector) -> bool:
    return not normal_form(vec, gb)


def span_contains(gb: PolyModuleBasis, generators: Sequence[Vector]) -> bool:
    elements = _elements(gb)
    return all(not reduce(g, elements, gb.order)[0] for g in generators)


# ==================== Derived constructions ====================

def _embed_block(vec: Vector, offset: int) -> Vector:
    return {(p + offset, m): c for (p, m), c in vec.items()}


def _unit(pos: int, nvars: int) -> Vector:
    return {(pos, (0,) * nvars): Fraction(1)}


def _second_block(gb: PolyModuleBasis, split: int) -> List[Vector]:
    """Generators whose support lies entirely in positions >= split, shifted down."""
    result = []
    for g in gb.generators:
        if all(p >= split for (p, _) in g):
            result.append(_embed_block(g, -split))
    return result


def syzygy_module(vectors: Sequence[Vector], rank: int, nvars: int) -> List[Vector]:
    """
    Generators of {a in P^k : sum a_i v_i = 0} for k = len(vectors).

    Computed from a basis of the rows (v_i | e_i) under an order where the
    first ``rank`` positions dominate.
    """
    k = len(vectors)
    if k == 0:
        return []
    rows = []
    for i, v in enumerate(vectors):
        row = dict(v)
        row.update(_unit(rank + i, nvars))
        rows.append(row)
    gb = groebner(rows, rank + k, nvars, module_order(kind="split", split=rank))
    return _second_block(gb, rank)


def colon(generators: Sequence[Vector], g: Dict[Monomial, Fraction], rank: int, nvars: int) -> List[Vector]:
    """Generators of M : g = {v : g v in M} for a polynomial g."""
    rows = []
    for j in range(rank):
        row = {(j, m): c for m, c in g.items()}
        row.update(_unit(rank + j, nvars))
        rows.append(row)
    rows.extend(dict(v) for v in generators if v)
    gb = groebner(rows, 2 * rank, nvars, module_order(kind="split", split=rank))
    return _second_block(gb, rank)


def same_span(a: Sequence[Vector], b: Sequence[Vector], rank: int, nvars: int) -> bool:
    ga = groebner(a, rank, nvars)
    gb = groebner(b, rank, nvars)
    return span_contains(ga, b) and span_contains(gb, a)


def saturate(generators: Sequence[Vector], g: Dict[Monomial, Fraction], rank: int, nvars: int) -> List[Vector]:
    """
    M : g^inf by iterated colon until the span stops growing.

    Returns reduced Gröbner generators (grevlex, term over position).
    """
    current = groebner(generators, rank, nvars)
    rounds = 0
    while True:
        bigger = colon(current.generators, g, rank, nvars)
        rounds += 1
        if span_contains(current, bigger):
            _log.debug("Saturation stable after %d colon rounds", rounds)
            return current.generators
        current = groebner(bigger, rank, nvars)


def saturate_variables(generators: Sequence[Vector], rank: int, nvars: int) -> List[Vector]:
    """
    M : (x1 * ... * xm)^inf.

    Done one variable at a time; (M : x^inf) : y^inf = M : (xy)^inf.
    """
    current = list(generators)
    for i in range(nvars):
        mono = tuple(1 if k == i else 0 for k in range(nvars))
        current = saturate(current, {mono: Fraction(1)}, rank, nvars)
    return groebner(current, rank, nvars).generators


def eliminate(generators: Sequence[Vector], rank: int, nvars: int, variables: Sequence[int]) -> List[Vector]:
    """Generators of M ∩ (polynomials free of ``variables``)^rank."""
    if not variables:
        return groebner(generators, rank, nvars).generators
    gb = groebner(generators, rank, nvars, module_order("elimination", eliminate=variables))
    drop = set(variables)
    return [v for v in gb.generators if all(m[i] == 0 for (_, m) in v for i in drop)]


def intersect(a: Sequence[Vector], b: Sequence[Vector], rank: int, nvars: int) -> List[Vector]:
    """
    A ∩ B via an auxiliary variable t: eliminate t from t*A + (1 - t)*B.
    """
    t = nvars
    lifted = nvars + 1

    def with_t(vec: Vector, power: int) -> Vector:
        return {(p, m + (power,)): c for (p, m), c in vec.items()}

    rows = [with_t(v, 1) for v in a if v]
    for v in b:
        if not v:
            continue
        row = with_t(v, 0)
        for key, c in with_t(v, 1).items():
            row[key] = row.get(key, 0) - c
        rows.append({k: c for k, c in row.items() if c})
    kept = eliminate(rows, rank, lifted, [t])
    return [{(p, m[:nvars]): c for (p, m), c in v.items()} for v in kept]


def lift(generators: Sequence[Vector], vec: Vector, rank: int, nvars: int) -> Optional[List[Dict[Monomial, Fraction]]]:
    """
    Polynomial cofactors a with vec = sum a_l generators_l, or None.

    Uses a basis of (m_l | e_l) with the module block dominating; the
    remainder of (vec | 0) has an empty first block iff vec is in the span,
    and then its second block is -a.
    """
    k = len(generators)
    rows = []
    for i, v in enumerate(generators):
        row = dict(v)
        row.update(_unit(rank + i, nvars))
        rows.append(row)
    if not rows:
        return None if vec else []
    gb = groebner(rows, rank + k, nvars, module_order(kind="split", split=rank))
    remainder = normal_form(dict(vec), gb)
    if any(p < rank for (p, _) in remainder):
        return None
    cofactors: List[Dict[Monomial, Fraction]] = [dict() for _ in range(k)]
    for (p, m), c in remainder.items():
        cofactors[p - rank][m] = -c
    return cofactors

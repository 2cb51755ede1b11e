"""
First-Order Realization - State equations x(nu + e_j) = A_j(s) x(nu), w = C(s) x.

Built for a system that is strongly relevant of order d: the classes of
the parallelepiped monomials (one box per basis vector) generate A^q / R
over A_d.  Every matrix here lives over A_d (d variables); the system and
its certificates stay in the full ring.
"""

import itertools
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.equations import EquationModule, contract_to_subring, syzygies
from algebra.laurent import Exponent, LaurentPolynomial, LaurentVector
from algebra.matrix import LaurentMatrix
from algebra.modules import syzygy_rows
from core.errors import DimensionMismatchError, InvariantViolation, NotUnimodularError
from systems.certificates import IntegralityCertificate, extract_certificates

_log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Generator:
    """The monomial s^exponents (big variables only) times e_index."""

    exponents: Tuple[int, ...]
    index: int

    def monomial(self, n: int, d: int) -> LaurentPolynomial:
        return LaurentPolynomial.monomial(n, (0,) * d + self.exponents)

    def lift(self, n: int, d: int, q: int) -> LaurentVector:
        zero = LaurentPolynomial.zero(n)
        return tuple(self.monomial(n, d) if j == self.index else zero for j in range(q))

    def label(self, d: int) -> str:
        mono = "*".join(
            f"s{d + k + 1}" if e == 1 else f"s{d + k + 1}^{e}"
            for k, e in enumerate(self.exponents) if e
        ) or "1"
        return f"{mono}*e{self.index + 1}"


def _sorted_certificates(certs: Sequence[IntegralityCertificate], d: int) -> List[IntegralityCertificate]:
    by_var = {c.var_index: c for c in certs}
    n = certs[0].nvars if certs else d
    missing = [v + 1 for v in range(d, n) if v not in by_var]
    if missing:
        raise DimensionMismatchError(f"no certificate for s{missing}", {"missing": missing})
    return [by_var[v] for v in range(d, n)]


def build_generating_set(certs: Sequence[IntegralityCertificate], q: int, d: int) -> List[Generator]:
    """
    q * prod L_i generators; basis index outermost, then the first big
    variable varies fastest.
    """
    certs = _sorted_certificates(certs, d)
    ranges = [range(c.degree) for c in reversed(certs)]
    boxes = [tuple(reversed(p)) for p in itertools.product(*ranges)]
    return [Generator(e, j) for j in range(q) for e in boxes]


class SpanReducer:
    """
    Coordinates over A_d of a vector of A_n^q against the generating set.

    Powers s_i^e are reduced modulo p_i by two-sided division and memoized:
    multiplying by s_i pushes the top coefficient through the monic
    relation, dividing by s_i pushes the bottom one through the unit
    trailing coefficient.
    """

    def __init__(self, certs: Sequence[IntegralityCertificate], q: int, d: int):
        self.d = d
        self.q = q
        self.certs = _sorted_certificates(certs, d)
        self.n = self.certs[0].nvars if self.certs else d
        self.generators = build_generating_set(self.certs, q, d)
        self._position = {(g.exponents, g.index): k for k, g in enumerate(self.generators)}
        small = list(range(d))
        self._coeffs: List[List[LaurentPolynomial]] = []
        for c in self.certs:
            by_power = c.coefficients()
            self._coeffs.append([
                by_power.get(k, LaurentPolynomial.zero(self.n)).project(small) for k in range(c.degree)
            ])
        self._powers: Dict[Tuple[int, int], Tuple[LaurentPolynomial, ...]] = {}
        self._lock = threading.Lock()

    @property
    def gamma(self) -> int:
        return len(self.generators)

    def _up(self, i: int, vec: Sequence[LaurentPolynomial]) -> Tuple[LaurentPolynomial, ...]:
        a = self._coeffs[i]
        top = vec[-1]
        shifted = [LaurentPolynomial.zero(self.d)] + list(vec[:-1])
        return tuple(s - top * a_k for s, a_k in zip(shifted, a))

    def _down(self, i: int, vec: Sequence[LaurentPolynomial]) -> Tuple[LaurentPolynomial, ...]:
        a = self._coeffs[i]
        L = len(a)
        bottom = vec[0] * a[0].inverse()
        shifted = list(vec[1:]) + [LaurentPolynomial.zero(self.d)]
        # s^-1 = -a_0^-1 (s^(L-1) + a_{L-1} s^(L-2) + ... + a_1)
        tail = [a[k + 1] if k + 1 < L else LaurentPolynomial.one(self.d) for k in range(L)]
        return tuple(s - bottom * t for s, t in zip(shifted, tail))

    def power(self, i: int, e: int) -> Tuple[LaurentPolynomial, ...]:
        """Coefficients of s_{d+i+1}^e in the basis 1, s, ..., s^(L_i - 1)."""
        key = (i, e)
        with self._lock:
            if key in self._powers:
                return self._powers[key]
        L = self.certs[i].degree
        if 0 <= e < L:
            result = self._basis(L, e)
            with self._lock:
                self._powers[key] = result
            return result

        # walk back toward the basis range until a known power is found
        step = 1 if e > 0 else -1
        k = e
        known = None
        while known is None:
            k -= step
            if 0 <= k < L:
                known = self._basis(L, k)
            else:
                with self._lock:
                    known = self._powers.get((i, k))

        result = known
        while k != e:
            k += step
            result = self._up(i, result) if step > 0 else self._down(i, result)
            with self._lock:
                self._powers[(i, k)] = result
        return result

    def _basis(self, L: int, e: int) -> Tuple[LaurentPolynomial, ...]:
        return tuple(LaurentPolynomial.one(self.d) if k == e else LaurentPolynomial.zero(self.d)
                     for k in range(L))

    def reduce_monomial(self, exp: Exponent, coeff, index: int) -> Dict[int, LaurentPolynomial]:
        small = LaurentPolynomial.monomial(self.d, exp[:self.d], coeff)
        factors = [self.power(i, e) for i, e in enumerate(exp[self.d:])]
        out: Dict[int, LaurentPolynomial] = {}
        for combo in itertools.product(*(range(len(f)) for f in factors)):
            value = small
            for f, k in zip(factors, combo):
                value = value * f[k]
                if not value:
                    break
            if value:
                pos = self._position[(tuple(combo), index)]
                out[pos] = out.get(pos, LaurentPolynomial.zero(self.d)) + value
        return out

    def reduce(self, vector: Sequence[LaurentPolynomial]) -> Tuple[LaurentPolynomial, ...]:
        if len(vector) != self.q:
            raise DimensionMismatchError(f"vector of length {len(vector)} against q={self.q}")
        row = [LaurentPolynomial.zero(self.d) for _ in range(self.gamma)]
        for j, poly in enumerate(vector):
            for exp, coeff in poly.items():
                for pos, value in self.reduce_monomial(exp, coeff, j).items():
                    row[pos] = row[pos] + value
        return tuple(row)


def reduce_to_span(vector: Sequence[LaurentPolynomial], certs: Sequence[IntegralityCertificate],
                   d: int) -> Tuple[LaurentPolynomial, ...]:
    return SpanReducer(certs, len(vector), d).reduce(vector)


def companion_matrices(reducer: SpanReducer) -> List[LaurentMatrix]:
    """Row k of A_j is the reduction of s_{d+j} g_k."""
    n, d, q = reducer.n, reducer.d, reducer.q
    result = []
    for j in range(n - d):
        shift = LaurentPolynomial.variable(n, d + j)
        rows = []
        for g in reducer.generators:
            rows.append(list(reducer.reduce(tuple(shift * p for p in g.lift(n, d, q)))))
        result.append(LaurentMatrix(d, rows, cols=reducer.gamma))
    return result


def matrix_of_relations(system: EquationModule, generators: Sequence[Generator], d: int) -> LaurentMatrix:
    """
    Rows generating ker(psi) over A_d: syzygies of [generator lifts; R],
    projected to the generator block and contracted to A_d.
    """
    n, q = system.nvars, system.rank
    gamma = len(generators)
    lifts = [g.lift(n, d, q) for g in generators]
    stacked = lifts + list(system.nonzero_rows())
    relations = [s[:gamma] for s in syzygy_rows(stacked, q, n)]
    kernel = EquationModule(n, gamma, [r for r in relations if any(r)])
    small = contract_to_subring(kernel, d)
    rows = [list(r) for r in small.nonzero_rows()]
    _log.debug("Matrix of relations: %d rows over A_%d", len(rows), d)
    return LaurentMatrix(d, rows, cols=gamma)


def output_matrix(generators: Sequence[Generator], q: int, d: int) -> LaurentMatrix:
    """0/1 selection of the generators 1 * e_i."""
    zero = (0,) * len(generators[0].exponents) if generators else ()
    rows = [[1 if (g.exponents == zero and g.index == i) else 0 for g in generators] for i in range(q)]
    return LaurentMatrix(d, rows, cols=len(generators))


def lift_through_relations(X: LaurentMatrix, A: LaurentMatrix) -> LaurentMatrix:
    """E with X A = E X; raises InvariantViolation when a row of X A leaves rowspan X."""
    if X.rows == 0:
        return LaurentMatrix(X.nvars, [], cols=0)
    span = EquationModule(X.nvars, X.cols, X.tolist())
    rows = []
    for i, row in enumerate((X @ A).tolist()):
        cofactors = span.lift(row)
        if cofactors is None:
            raise InvariantViolation("relation module is not invariant under a companion matrix", {"row": i})
        rows.append(cofactors)
    return LaurentMatrix(X.nvars, rows, cols=X.rows)


def _unit_inverse(A: LaurentMatrix, j: int) -> LaurentMatrix:
    try:
        return A.inverse()
    except NotUnimodularError as e:
        raise InvariantViolation(f"companion matrix A_{j + 1} is not unimodular", e.details) from e


@dataclass(eq=False)
class FirstOrderRealization:
    """
    Usage:
        real = build_realization(system, d)
        real.A[0] @ real.A[1] == real.A[1] @ real.A[0]
        real.member_test(row)    # (True, F) with F X = coordinates of row
    """

    system: EquationModule
    d: int
    generators: List[Generator]
    X: LaurentMatrix
    A: List[LaurentMatrix]
    C: LaurentMatrix
    certificates: List[IntegralityCertificate]
    A_inv: List[LaurentMatrix] = field(default_factory=list)
    _powers: Dict[Tuple[int, int], LaurentMatrix] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if not self.A_inv:
            self.A_inv = [_unit_inverse(a, j) for j, a in enumerate(self.A)]

    @property
    def n(self) -> int:
        return self.system.nvars

    @property
    def q(self) -> int:
        return self.system.rank

    @property
    def gamma(self) -> int:
        return len(self.generators)

    @property
    def delta(self) -> int:
        return self.X.rows

    # ==================== Matrix powers ====================

    def _binary_power(self, j: int, k: int) -> LaurentMatrix:
        """A_j^(2^k) for k >= 0, A_j^(-2^(-k-1)) for k < 0."""
        key = (j, k)
        with self._lock:
            if key in self._powers:
                return self._powers[key]
        sign, level = (1, k) if k >= 0 else (-1, -k - 1)
        base = self.A[j] if sign > 0 else self.A_inv[j]
        if level == 0:
            value = base
        else:
            half = self._binary_power(j, k - 1 if sign > 0 else k + 1)
            value = half @ half
        with self._lock:
            self._powers[key] = value
        return value

    def power(self, j: int, e: int) -> LaurentMatrix:
        """A_j^e; negative exponents use the stored inverse."""
        result = LaurentMatrix.identity(self.d, self.gamma)
        bits, sign = abs(e), (1 if e >= 0 else -1)
        level = 0
        while bits:
            if bits & 1:
                result = result @ self._binary_power(j, level if sign > 0 else -level - 1)
            bits >>= 1
            level += 1
        return result

    def monomial_operator(self, exponents: Sequence[int]) -> LaurentMatrix:
        """prod_j A_j^(nu_j) for nu over the big variables."""
        result = LaurentMatrix.identity(self.d, self.gamma)
        for j, e in enumerate(exponents):
            if e:
                result = result @ self.power(j, e)
        return result

    def output_operator(self, exponents: Sequence[int]) -> LaurentMatrix:
        """C prod_j A_j^(nu_j): w(nu) = (this x)(nu_1..nu_d)."""
        return self.C @ self.monomial_operator(exponents)

    # ==================== Membership ====================

    def coordinates(self, vector: Sequence[LaurentPolynomial]) -> Tuple[LaurentPolynomial, ...]:
        """Row over A_d whose image under psi is the class of ``vector``."""
        if len(vector) != self.q:
            raise DimensionMismatchError(f"vector of length {len(vector)} against q={self.q}")
        total = [LaurentPolynomial.zero(self.d) for _ in range(self.gamma)]
        for j, poly in enumerate(vector):
            for exp, coeff in poly.items():
                small = LaurentPolynomial.monomial(self.d, exp[:self.d], coeff)
                image = self.monomial_operator(exp[self.d:]).apply_row(self.C.row(j))
                total = [t + small * v for t, v in zip(total, image)]
        return tuple(total)

    def member_test(self, vector: Sequence[LaurentPolynomial]) -> Tuple[bool, Optional[List[LaurentPolynomial]]]:
        """(vector in R, F with F X = coordinates(vector) when it is)."""
        coords = self.coordinates(vector)
        if not any(coords):
            return True, [LaurentPolynomial.zero(self.d)] * self.delta
        if self.delta == 0:
            return False, None
        witness = EquationModule(self.d, self.gamma, self.X.tolist()).lift(coords)
        return witness is not None, witness

    # ==================== Consistency ====================

    def psi(self, row: Sequence[LaurentPolynomial]) -> LaurentVector:
        """sum_k row_k g_k as an element of A_n^q."""
        small = list(range(self.d))
        total = [LaurentPolynomial.zero(self.n) for _ in range(self.q)]
        for coeff, g in zip(row, self.generators):
            if coeff:
                total[g.index] = total[g.index] + coeff.embed(self.n, small) * g.monomial(self.n, self.d)
        return tuple(total)

    def e_matrices(self) -> List[LaurentMatrix]:
        return [lift_through_relations(self.X, a) for a in self.A]

    def check_invariants(self) -> None:
        for i, a in enumerate(self.A):
            for j in range(i + 1, len(self.A)):
                if a @ self.A[j] != self.A[j] @ a:
                    raise InvariantViolation(f"A_{i + 1} and A_{j + 1} do not commute")
            if not a.det().is_unit():
                raise InvariantViolation(f"det A_{i + 1} is not a unit", {"det": str(a.det())})
        self.e_matrices()
        for k, row in enumerate(self.X.tolist()):
            if not self.system.contains(self.psi(row)):
                raise InvariantViolation("row of X is not a relation of the generators", {"row": k})
        for i in range(self.q):
            image = self.psi(self.C.row(i))
            diff = tuple(p - (1 if j == i else 0) for j, p in enumerate(image))
            if not self.system.contains(diff):
                raise InvariantViolation(f"C row {i + 1} does not present e_{i + 1}")
        for cert in self.certificates:
            if not cert.annihilates(self.system):
                raise InvariantViolation(f"certificate {cert} does not annihilate R")
        _log.debug("Realization invariants hold (gamma=%d, delta=%d)", self.gamma, self.delta)


def build_realization(system: EquationModule, d: int,
                      certificates: Optional[Sequence[IntegralityCertificate]] = None,
                      degree_bound: Optional[int] = None) -> FirstOrderRealization:
    """Regularization stage for a system strongly relevant of order d."""
    certs = list(certificates) if certificates is not None else extract_certificates(system, d, degree_bound)
    reducer = SpanReducer(certs, system.rank, d)
    A = companion_matrices(reducer)
    X = matrix_of_relations(system, reducer.generators, d)
    C = output_matrix(reducer.generators, system.rank, d)
    real = FirstOrderRealization(system, d, reducer.generators, X, A, C, reducer.certs)
    _log.info("Realization: d=%d, gamma=%d, %d relations", d, real.gamma, real.delta)
    return real


def export_latent(real: FirstOrderRealization) -> LaurentMatrix:
    """
    [ X            0 ]
    [ s_{d+i} I - A_i   0 ]   for each big variable
    [ -C           I ]
    over the full ring, with columns (x, w).
    """
    n, d, gamma, q = real.n, real.d, real.gamma, real.q
    small = list(range(d))

    def up(entry: LaurentPolynomial) -> LaurentPolynomial:
        return entry.embed(n, small)

    rows: List[List[LaurentPolynomial]] = []
    zero = LaurentPolynomial.zero(n)
    for r in real.X.tolist():
        rows.append([up(p) for p in r] + [zero] * q)
    for j, a in enumerate(real.A):
        shift = LaurentPolynomial.variable(n, d + j)
        for i, r in enumerate(a.tolist()):
            rows.append([(shift if k == i else zero) - up(p) for k, p in enumerate(r)] + [zero] * q)
    for i, r in enumerate(real.C.tolist()):
        rows.append([-up(p) for p in r] + [LaurentPolynomial.one(n) if k == i else zero for k in range(q)])
    return LaurentMatrix(n, rows, cols=gamma + q)


def right_kernel(X: LaurentMatrix) -> LaurentMatrix:
    """Y with X Y = 0 (columns generate the solutions over A_d); identity for empty X."""
    if X.rows == 0:
        return LaurentMatrix.identity(X.nvars, X.cols)
    return syzygies(X.transpose()).transpose()

"""
Equation Modules - Submodules of A^q given by generating rows.

``EquationModule`` is the value every higher layer passes around: the
row span of a kernel representation R(s), an ideal (q = 1), or a module
of relations.  Gröbner data of the saturated polynomial model is
computed lazily and cached on the instance.
"""

import threading
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from algebra import modules
from algebra.groebner import PolyModuleBasis
from algebra.laurent import LaurentPolynomial, LaurentVector
from algebra.matrix import LaurentMatrix
from core.errors import DimensionMismatchError


class EquationModule:
    """
    Row span of a Laurent matrix inside A^rank.

    Usage:
        sys = EquationModule.from_matrix(R)
        sys.contains([s1 - 1])
        sys.lift(row)            # Laurent cofactors against the rows
    """

    def __init__(self, nvars: int, rank: int, rows: Iterable[Sequence[LaurentPolynomial]]):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        self.nvars = nvars
        self.rank = rank
        checked = []
        for i, row in enumerate(rows):
            row = tuple(row)
            if len(row) != rank:
                raise DimensionMismatchError(f"Row {i} has length {len(row)}, expected {rank}")
            for p in row:
                if p.nvars != nvars:
                    raise DimensionMismatchError(
                        f"Row {i} has an entry in {p.nvars} variables, expected {nvars}"
                    )
            checked.append(row)
        self.rows: Tuple[LaurentVector, ...] = tuple(checked)
        self._sat: Optional[PolyModuleBasis] = None
        self._lock = threading.Lock()

    # ==================== Constructors ====================

    @classmethod
    def from_matrix(cls, matrix: LaurentMatrix) -> "EquationModule":
        return cls(matrix.nvars, matrix.cols, matrix.tolist())

    @classmethod
    def ideal(cls, nvars: int, generators: Iterable[LaurentPolynomial]) -> "EquationModule":
        return cls(nvars, 1, [(g,) for g in generators])

    @classmethod
    def zero(cls, nvars: int, rank: int = 1) -> "EquationModule":
        return cls(nvars, rank, [])

    @classmethod
    def full(cls, nvars: int, rank: int = 1) -> "EquationModule":
        return cls(nvars, rank, unit_vectors(nvars, rank))

    # ==================== Views ====================

    @property
    def matrix(self) -> LaurentMatrix:
        return LaurentMatrix(self.nvars, [list(r) for r in self.rows], cols=self.rank)

    @property
    def generators(self) -> List[LaurentPolynomial]:
        """Ideal generators (rank 1 only)."""
        if self.rank != 1:
            raise DimensionMismatchError("generators() is defined for ideals only")
        return [r[0] for r in self.rows]

    def nonzero_rows(self) -> List[LaurentVector]:
        return [r for r in self.rows if any(r)]

    def saturated(self) -> PolyModuleBasis:
        """Gröbner basis of the saturated polynomial model (cached)."""
        with self._lock:
            if self._sat is None:
                self._sat = modules.saturated_basis(self.rows, self.rank, self.nvars)
            return self._sat

    def reduced_generators(self) -> List[LaurentVector]:
        """Generators read off the saturated basis."""
        sat = self.saturated()
        return [modules.vector_to_row(v, self.rank, self.nvars) for v in sat.generators]

    def reduced(self) -> "EquationModule":
        return EquationModule(self.nvars, self.rank, self.reduced_generators())

    def max_degree(self) -> int:
        """Largest total degree among the saturated generators."""
        best = 0
        for row in self.reduced_generators():
            best = max(best, max((p.total_degree() for p in row if p), default=0))
        return best

    # ==================== Predicates ====================

    def contains(self, vector: Sequence[LaurentPolynomial]) -> bool:
        if len(vector) != self.rank:
            raise DimensionMismatchError(f"Vector of length {len(vector)} against rank {self.rank}")
        return modules.member(vector, self.saturated())

    def contains_element(self, poly: LaurentPolynomial) -> bool:
        """Ideal membership (rank 1)."""
        return self.contains((poly,))

    def contains_all(self, rows: Iterable[Sequence[LaurentPolynomial]]) -> bool:
        return all(self.contains(r) for r in rows)

    def is_zero(self) -> bool:
        return self.saturated().is_zero()

    def is_full(self) -> bool:
        sat = self.saturated()
        return all(sat.contains_unit_vector(j) for j in range(self.rank))

    def issubset(self, other: "EquationModule") -> bool:
        self._check(other)
        return other.contains_all(self.nonzero_rows())

    def spans_equal(self, other: "EquationModule") -> bool:
        return self.issubset(other) and other.issubset(self)

    def _check(self, other: "EquationModule") -> None:
        if self.nvars != other.nvars or self.rank != other.rank:
            raise DimensionMismatchError(
                f"Modules live in A_{self.nvars}^{self.rank} and A_{other.nvars}^{other.rank}"
            )

    # ==================== Constructions ====================

    def lift(self, vector: Sequence[LaurentPolynomial]) -> Optional[List[LaurentPolynomial]]:
        """Laurent cofactors F with vector = F * rows, or None."""
        return modules.lift(self.rows, vector, self.rank, self.nvars)

    def normal_form(self, vector: Sequence[LaurentPolynomial]) -> LaurentVector:
        return modules.normal_form(vector, self.saturated())

    def syzygies(self) -> LaurentMatrix:
        return syzygies(self.matrix)

    def contract(self, keep: Sequence[int]) -> "EquationModule":
        rows = modules.contract(self.rows, self.rank, self.nvars, keep)
        return EquationModule(len(keep), self.rank, rows)

    def intersect(self, other: "EquationModule") -> "EquationModule":
        self._check(other)
        return EquationModule(self.nvars, self.rank,
                              modules.intersect(self.rows, other.rows, self.rank, self.nvars))

    def colon_element(self, g: LaurentPolynomial) -> "EquationModule":
        return EquationModule(self.nvars, self.rank,
                              modules.colon_element(self.rows, g, self.rank, self.nvars))

    def map_entries(self, fn: Callable[[LaurentPolynomial], LaurentPolynomial],
                    nvars: Optional[int] = None) -> "EquationModule":
        nvars = self.nvars if nvars is None else nvars
        return EquationModule(nvars, self.rank, [[fn(p) for p in r] for r in self.rows])

    def with_rows(self, extra: Iterable[Sequence[LaurentPolynomial]]) -> "EquationModule":
        return EquationModule(self.nvars, self.rank, list(self.rows) + [tuple(r) for r in extra])

    def __repr__(self) -> str:
        body = "; ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)
        return f"EquationModule(n={self.nvars}, q={self.rank}, rows=[{body}])"


def unit_vectors(nvars: int, rank: int) -> List[LaurentVector]:
    one = LaurentPolynomial.one(nvars)
    zero = LaurentPolynomial.zero(nvars)
    return [tuple(one if i == j else zero for i in range(rank)) for j in range(rank)]


# ==================== Named operations ====================

def laurent_member(vector: Sequence[LaurentPolynomial], module: EquationModule) -> bool:
    """Membership of a Laurent row vector in the span of ``module``."""
    return module.contains(vector)


def syzygies(matrix: LaurentMatrix) -> LaurentMatrix:
    """Rows generating {r : r * matrix = 0} over the Laurent ring."""
    rows = modules.syzygy_rows(matrix.tolist(), matrix.cols, matrix.nvars)
    return LaurentMatrix(matrix.nvars, [list(r) for r in rows], cols=matrix.rows)


def contract_to_subring(module: EquationModule, d: int) -> EquationModule:
    """Elements of the span free of s_{d+1}..s_n, as a module over A_d."""
    if not 0 <= d <= module.nvars:
        raise ValueError(f"d={d} outside [0, {module.nvars}]")
    if d == module.nvars:
        return module
    return module.contract(range(d))


def ideal_ops(a: EquationModule, b, kind: str) -> EquationModule:
    """
    ``intersect``: a ∩ b.  ``colon_element``: a : b for a LaurentPolynomial b.
    ``colon``: a : b for a module b of the same ring (intersection of element colons).
    """
    if kind == "intersect":
        return a.intersect(b)
    if kind == "colon_element":
        return a.colon_element(b)
    if kind == "colon":
        result: Optional[EquationModule] = None
        for row in b.nonzero_rows():
            if b.rank != 1:
                raise DimensionMismatchError("colon by a module needs an ideal on the right")
            part = a.colon_element(row[0])
            result = part if result is None else result.intersect(part)
        return result if result is not None else EquationModule.full(a.nvars, a.rank)
    raise ValueError(f"Unknown ideal operation: {kind}")

"""
Laurent Matrices - Dense matrices over the Laurent ring.

Determinants use cofactor expansion up to 4x4 and fraction-free (Bareiss)
elimination above; rank is computed with the same elimination.
"""

from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from algebra.laurent import Exponent, LaurentPolynomial, Scalar, exact_divide
from core.errors import DimensionMismatchError, NotUnimodularError

Entry = Union[LaurentPolynomial, Scalar]

_COFACTOR_LIMIT = 4


class LaurentMatrix:
    """
    Immutable rows x cols matrix of LaurentPolynomial entries sharing ``nvars``.

    Zero-sized matrices are allowed (an empty relation matrix has 0 rows).
    """

    __slots__ = ("nvars", "rows", "cols", "_entries")

    def __init__(self, nvars: int, entries: Sequence[Sequence[Entry]], cols: Optional[int] = None):
        self.nvars = nvars
        self.rows = len(entries)
        if self.rows:
            self.cols = len(entries[0])
        elif cols is not None:
            self.cols = cols
        else:
            self.cols = 0
        grid: List[Tuple[LaurentPolynomial, ...]] = []
        for i, row in enumerate(entries):
            if len(row) != self.cols:
                raise DimensionMismatchError(f"Row {i} has {len(row)} entries, expected {self.cols}")
            grid.append(tuple(self._coerce(e) for e in row))
        self._entries: Tuple[Tuple[LaurentPolynomial, ...], ...] = tuple(grid)

    def _coerce(self, entry: Entry) -> LaurentPolynomial:
        if isinstance(entry, LaurentPolynomial):
            if entry.nvars != self.nvars:
                raise DimensionMismatchError(
                    f"Entry in {entry.nvars} variables inside a matrix over {self.nvars}"
                )
            return entry
        return LaurentPolynomial.constant(self.nvars, entry)

    # ==================== Constructors ====================

    @classmethod
    def zeros(cls, nvars: int, rows: int, cols: int) -> "LaurentMatrix":
        zero = LaurentPolynomial.zero(nvars)
        return cls(nvars, [[zero] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, nvars: int, size: int) -> "LaurentMatrix":
        return cls(nvars, [[1 if i == j else 0 for j in range(size)] for i in range(size)], cols=size)

    @classmethod
    def from_rows(cls, nvars: int, rows: Iterable[Sequence[Entry]], cols: int) -> "LaurentMatrix":
        return cls(nvars, [list(r) for r in rows], cols=cols)

    # ==================== Access ====================

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> LaurentPolynomial:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> Tuple[LaurentPolynomial, ...]:
        return self._entries[i]

    def column(self, j: int) -> Tuple[LaurentPolynomial, ...]:
        return tuple(r[j] for r in self._entries)

    def __iter__(self) -> Iterator[Tuple[LaurentPolynomial, ...]]:
        return iter(self._entries)

    def tolist(self) -> List[List[LaurentPolynomial]]:
        return [list(r) for r in self._entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LaurentMatrix":
        return LaurentMatrix(self.nvars, [[self._entries[i][j] for j in cols] for i in rows], cols=len(cols))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self._entries for e in r)

    def offsets(self) -> List[Exponent]:
        """Every exponent vector occurring in some entry."""
        found = set()
        for r in self._entries:
            for e in r:
                found.update(e.support())
        return sorted(found)

    # ==================== Arithmetic ====================

    def _check_ring(self, other: "LaurentMatrix") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatchError("matrices live over different rings")

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape}")
        return LaurentMatrix(self.nvars, [[a + b for a, b in zip(r, s)] for r, s in zip(self, other)],
                             cols=self.cols)

    def __neg__(self) -> "LaurentMatrix":
        return LaurentMatrix(self.nvars, [[-a for a in r] for r in self], cols=self.cols)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return self + (-other)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        zero = LaurentPolynomial.zero(self.nvars)
        columns = [other.column(j) for j in range(other.cols)]
        rows = []
        for r in self._entries:
            out = []
            for col in columns:
                acc = zero
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            rows.append(out)
        return LaurentMatrix(self.nvars, rows, cols=other.cols)

    def scale(self, factor: Entry) -> "LaurentMatrix":
        return LaurentMatrix(self.nvars, [[a * factor for a in r] for r in self], cols=self.cols)

    def apply_row(self, vector: Sequence[LaurentPolynomial]) -> Tuple[LaurentPolynomial, ...]:
        """Row vector times matrix."""
        if len(vector) != self.rows:
            raise DimensionMismatchError(f"Row vector of length {len(vector)} against {self.rows} rows")
        zero = LaurentPolynomial.zero(self.nvars)
        out = []
        for j in range(self.cols):
            acc = zero
            for v, r in zip(vector, self._entries):
                if v and r[j]:
                    acc = acc + v * r[j]
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.nvars, [list(self.column(j)) for j in range(self.cols)], cols=self.rows)

    def map_entries(self, fn: Callable[[LaurentPolynomial], LaurentPolynomial],
                    nvars: Optional[int] = None) -> "LaurentMatrix":
        return LaurentMatrix(self.nvars if nvars is None else nvars,
                             [[fn(a) for a in r] for r in self], cols=self.cols)

    def evaluate(self, point: Sequence[Scalar]) -> List[List[Fraction]]:
        return [[a.evaluate(point) for a in r] for r in self]

    # ==================== Determinants ====================

    def det(self) -> LaurentPolynomial:
        if not self.is_square():
            raise DimensionMismatchError(f"det of non-square {self.shape} matrix")
        if self.rows == 0:
            return LaurentPolynomial.one(self.nvars)
        if self.rows <= _COFACTOR_LIMIT:
            return _cofactor_det([list(r) for r in self._entries])
        return _bareiss_det([list(r) for r in self._entries], self.nvars)

    def minor(self, i: int, j: int) -> LaurentPolynomial:
        """Determinant with row i and column j removed."""
        rows = [k for k in range(self.rows) if k != i]
        cols = [c for c in range(self.cols) if c != j]
        return self.submatrix(rows, cols).det()

    def adjugate(self) -> "LaurentMatrix":
        if not self.is_square():
            raise DimensionMismatchError("adjugate of non-square matrix")
        n = self.rows
        if n == 1:
            return LaurentMatrix.identity(self.nvars, 1)
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                cofactor = self.minor(i, j)
                adj[j][i] = -cofactor if (i + j) % 2 else cofactor
        return LaurentMatrix(self.nvars, adj, cols=n)

    def inverse(self) -> "LaurentMatrix":
        """A^-1 = adj(A) det(A)^-1; requires a unit determinant."""
        d = self.det()
        if not d.is_unit():
            raise NotUnimodularError(
                "not unimodular over ring", {"det": str(d)}
            )
        return self.adjugate().scale(d.inverse())

    def rank(self) -> int:
        """Rank over the fraction field."""
        if self.rows == 0 or self.cols == 0:
            return 0
        rank, _ = _bareiss_eliminate([list(r) for r in self._entries], self.nvars)
        return rank

    # ==================== Comparison & printing ====================

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.nvars, self.rows, self.cols, self._entries))

    def to_strings(self) -> List[List[str]]:
        return [[str(a) for a in r] for r in self._entries]

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.nvars}, {self.to_strings()})"


def _cofactor_det(m: List[List[LaurentPolynomial]]) -> LaurentPolynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = LaurentPolynomial.zero(m[0][0].nvars)
    for j, a in enumerate(m[0]):
        if not a:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = a * _cofactor_det(sub)
        total = total - term if j % 2 else total + term
    return total


def _bareiss_eliminate(m: List[List[LaurentPolynomial]], nvars: int) -> Tuple[int, int]:
    """
    In-place fraction-free row echelon form.

    Returns (rank, sign of the row permutation).  Every division is exact.
    """
    rows, cols = len(m), len(m[0])
    prev = LaurentPolynomial.one(nvars)
    sign = 1
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
            sign = -sign
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = exact_divide(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev)
            m[i][c] = LaurentPolynomial.zero(nvars)
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r, sign


def _bareiss_det(m: List[List[LaurentPolynomial]], nvars: int) -> LaurentPolynomial:
    n = len(m)
    rank, sign = _bareiss_eliminate(m, nvars)
    if rank < n:
        return LaurentPolynomial.zero(nvars)
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def matrix_ops(a: LaurentMatrix, b: Optional[LaurentMatrix], kind: str):
    """Matrix operation by name: ``mul``, ``det``, ``adjugate_inverse`` or ``rank``."""
    if kind == "mul":
        if b is None:
            raise ValueError("mul needs two matrices")
        return a @ b
    if kind == "det":
        return a.det()
    if kind == "adjugate_inverse":
        return a.inverse()
    if kind == "rank":
        return a.rank()
    raise ValueError(f"Unknown matrix operation: {kind}")

"""
Unimodular Transforms - Integer coordinate changes of Z^n and the maps they induce.

For T with det T = ±1:
    phi_T      s^v -> s^(T v)          ring automorphism of the Laurent ring
    phi_hat_T  entry-wise phi_T        on row vectors, matrices and modules
    Phi_T      w(v) -> w(T v)          pull-back on trajectories
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import sympy

from algebra.equations import EquationModule
from algebra.laurent import Exponent, LaurentPolynomial
from core.errors import DimensionMismatchError, NotUnimodularError


@dataclass(frozen=True)
class UnimodularTransform:
    """
    An n x n integer matrix with determinant ±1.

    Usage:
        T = UnimodularTransform.from_rows([[1, 0], [2, 1]])
        T.phi(f)             # s1 -> s1*s2^2, s2 -> s2
        (T @ S).phi(f) == T.phi(S.phi(f))
    """

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(r) != n for r in self.matrix):
            raise NotUnimodularError("transform must be square", {"T": [list(r) for r in self.matrix]})
        det = sympy.Matrix(self.matrix).det() if n else 1
        if det not in (1, -1):
            raise NotUnimodularError(
                f"det T = {det}, expected ±1", {"T": [list(r) for r in self.matrix], "det": int(det)}
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "UnimodularTransform":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "UnimodularTransform":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def elementary(cls, n: int, i: int, j: int, factor: int) -> "UnimodularTransform":
        """Identity plus ``factor`` at (i, j), i != j."""
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[i][j] += factor
        return cls.from_rows(rows)

    @classmethod
    def block_diagonal(cls, upper: "UnimodularTransform", n: int) -> "UnimodularTransform":
        """blockdiag(upper, I_(n-k)) for a k x k ``upper``."""
        k = upper.n
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i < k and j < k:
                    rows[i][j] = upper.matrix[i][j]
                elif i == j:
                    rows[i][j] = 1
        return cls.from_rows(rows)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.matrix]

    def is_identity(self) -> bool:
        return self == UnimodularTransform.identity(self.n)

    # ==================== Lattice action ====================

    def apply(self, nu: Sequence[int]) -> Exponent:
        """T nu."""
        if len(nu) != self.n:
            raise DimensionMismatchError(f"point of length {len(nu)} against a {self.n}x{self.n} transform")
        return tuple(sum(a * b for a, b in zip(row, nu)) for row in self.matrix)

    def __matmul__(self, other: "UnimodularTransform") -> "UnimodularTransform":
        if self.n != other.n:
            raise DimensionMismatchError("transforms of different sizes")
        cols = list(zip(*other.matrix))
        return UnimodularTransform(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.matrix
        ))

    def inverse(self) -> "UnimodularTransform":
        if self.n == 0:
            return self
        inv = sympy.Matrix(self.matrix).inv()
        return UnimodularTransform.from_rows([[int(x) for x in inv.row(i)] for i in range(self.n)])

    # ==================== Induced ring maps ====================

    def phi(self, f: LaurentPolynomial) -> LaurentPolynomial:
        """phi_T(f): re-key every term by nu -> T nu."""
        if f.nvars != self.n:
            raise DimensionMismatchError(f"polynomial in {f.nvars} variables, transform is {self.n}x{self.n}")
        return f.map_exponents(self.apply)

    def phi_hat(self, module: EquationModule) -> EquationModule:
        """Entry-wise phi_T on the generating rows."""
        return module.map_entries(self.phi)


def phi_T(f: LaurentPolynomial, T: UnimodularTransform) -> LaurentPolynomial:
    return T.phi(f)


def phi_hat_T(module: EquationModule, T: UnimodularTransform) -> EquationModule:
    return T.phi_hat(module)

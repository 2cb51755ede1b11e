"""
Laurent Polynomials - Exact sparse Laurent polynomials over the rationals.

A polynomial in ``nvars`` shift variables s1..sn is a map from integer
exponent vectors to nonzero ``Fraction`` coefficients.  Values are
immutable; every operation returns a new object in canonical form.
"""

from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import DimensionMismatchError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    """Monomial product s^a * s^b = s^(a+b)."""
    return tuple(x + y for x, y in zip(a, b))


def sub_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def zero_exponent(nvars: int) -> Exponent:
    return (0,) * nvars


def unit_exponent(nvars: int, index: int, power: int = 1) -> Exponent:
    """Exponent of s_{index+1}^power."""
    exp = [0] * nvars
    exp[index] = power
    return tuple(exp)


def format_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _format_monomial(exp: Exponent) -> str:
    parts = []
    for i, e in enumerate(exp):
        if e == 0:
            continue
        parts.append(f"s{i + 1}" if e == 1 else f"s{i + 1}^{e}")
    return "*".join(parts)


class LaurentPolynomial:
    """
    Element of Q[s1^±1, ..., sn^±1].

    Usage:
        f = LaurentPolynomial(2, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
        g, mu = f.shift((-1, 0)).clear()
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DimensionMismatchError(
                    f"Exponent {exp} has length {len(exp)}, expected {nvars}"
                )
            value = Fraction(coeff)
            if value:
                clean[exp] = clean.get(exp, Fraction(0)) + value
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> "LaurentPolynomial":
        """Build from an already canonical term dict (no copying, no checks)."""
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # ==================== Constructors ====================

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPolynomial":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "LaurentPolynomial":
        value = Fraction(value)
        return cls._wrap(nvars, {zero_exponent(nvars): value} if value else {})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPolynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], coeff: Scalar = 1) -> "LaurentPolynomial":
        return cls(nvars, {tuple(exp): coeff})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "LaurentPolynomial":
        """The shift s_{index+1}^power (index is 0-based)."""
        return cls._wrap(nvars, {unit_exponent(nvars, index, power): Fraction(1)})

    # ==================== Inspection ====================

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """Units of the Laurent ring are exactly the nonzero monomials."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and zero_exponent(self.nvars) in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(zero_exponent(self.nvars), Fraction(0))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def support(self) -> List[Exponent]:
        return list(self._terms)

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return zero_exponent(self.nvars)
        return tuple(min(col) for col in zip(*self._terms)) if self.nvars else ()

    def max_exponents(self) -> Exponent:
        if not self._terms:
            return zero_exponent(self.nvars)
        return tuple(max(col) for col in zip(*self._terms)) if self.nvars else ()

    def variables(self) -> List[int]:
        """0-based indices of the variables that occur with a nonzero exponent."""
        used = set()
        for exp in self._terms:
            used.update(i for i, e in enumerate(exp) if e)
        return sorted(used)

    def total_degree(self) -> int:
        """Total degree of the cleared polynomial representative."""
        if not self._terms:
            return 0
        low = self.min_exponents()
        return max(sum(sub_exponents(exp, low)) for exp in self._terms)

    # ==================== Arithmetic ====================

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"Cannot combine polynomials in {self.nvars} and {other.nvars} variables"
            )

    def _coerce(self, other: Union["LaurentPolynomial", Scalar]) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            value = terms.get(exp, 0) + coeff
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return LaurentPolynomial._wrap(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._wrap(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return LaurentPolynomial.zero(self.nvars)
            return LaurentPolynomial._wrap(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = add_exponents(e1, e2)
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return LaurentPolynomial._wrap(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPolynomial):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, power: int) -> "LaurentPolynomial":
        if power < 0:
            return self.inverse() ** (-power)
        result = LaurentPolynomial.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def inverse(self) -> "LaurentPolynomial":
        """Inverse of a unit (single monomial)."""
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit of the Laurent ring")
        (exp, coeff), = self._terms.items()
        return LaurentPolynomial._wrap(self.nvars, {tuple(-e for e in exp): 1 / coeff})

    def shift(self, mu: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial s^mu."""
        mu = tuple(mu)
        return LaurentPolynomial._wrap(
            self.nvars, {add_exponents(e, mu): c for e, c in self._terms.items()}
        )

    def clear(self) -> Tuple["LaurentPolynomial", Exponent]:
        """
        Canonical polynomial representative.

        Returns (g, mu) with g = s^mu * f, all exponents of g non-negative and
        every variable reaching exponent 0 in some term of g.
        """
        if not self._terms:
            raise ValueError("Cannot clear the zero polynomial")
        mu = tuple(-e for e in self.min_exponents())
        return self.shift(mu), mu

    def map_exponents(self, fn: Callable[[Exponent], Exponent], nvars: Optional[int] = None) -> "LaurentPolynomial":
        """Re-key every term through ``fn``; ``fn`` must be injective on the support."""
        nvars = self.nvars if nvars is None else nvars
        terms: Dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            new_exp = tuple(fn(exp))
            terms[new_exp] = terms.get(new_exp, 0) + coeff
        return LaurentPolynomial._wrap(nvars, {e: c for e, c in terms.items() if c})

    def embed(self, nvars: int, positions: Sequence[int]) -> "LaurentPolynomial":
        """Move variable k of this ring to variable positions[k] of a ring with ``nvars`` variables."""
        def move(exp: Exponent) -> Exponent:
            out = [0] * nvars
            for k, e in enumerate(exp):
                out[positions[k]] += e
            return tuple(out)
        return self.map_exponents(move, nvars)

    def project(self, positions: Sequence[int]) -> "LaurentPolynomial":
        """
        Restrict to the variables listed in ``positions``.

        Every other variable must be absent from the support.
        """
        keep = set(positions)
        for exp in self._terms:
            if any(e and i not in keep for i, e in enumerate(exp)):
                raise ValueError(f"{self} involves variables outside {sorted(keep)}")
        return self.map_exponents(lambda exp: tuple(exp[p] for p in positions), len(positions))

    def coefficients_in(self, index: int) -> Dict[int, "LaurentPolynomial"]:
        """View as a Laurent polynomial in s_{index+1}; coefficients keep nvars with that exponent zeroed."""
        result: Dict[int, Dict[Exponent, Fraction]] = {}
        for exp, coeff in self._terms.items():
            rest = exp[:index] + (0,) + exp[index + 1:]
            result.setdefault(exp[index], {})[rest] = coeff
        return {k: LaurentPolynomial._wrap(self.nvars, v) for k, v in result.items()}

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Value at a point of the torus (all coordinates nonzero)."""
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            value = coeff
            for p, e in zip(point, exp):
                value *= p ** e
            total += value
        return total

    # ==================== Comparison & printing ====================

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPolynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in printing order: graded lex on cleared exponents, descending."""
        low = self.min_exponents()

        def key(item):
            cleared = sub_exponents(item[0], low)
            return (sum(cleared), cleared, item[0])

        return sorted(self._terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (exp, coeff) in enumerate(self.sorted_terms()):
            mono = _format_monomial(exp)
            magnitude = abs(coeff)
            if not mono:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{format_rational(magnitude)}*{mono}"
            if i == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.nvars}, '{self}')"


LaurentVector = Tuple[LaurentPolynomial, ...]


def exact_divide(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """
    Quotient f / g when it is a Laurent polynomial.

    Works on cleared representatives with lex long division; a nonzero
    remainder raises ValueError.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPolynomial.zero(f.nvars)
    if g.is_unit():
        return f * g.inverse()
    big_f, mu_f = f.clear()
    big_g, mu_g = g.clear()
    lead_g = max(big_g._terms)
    lead_c = big_g._terms[lead_g]
    remainder = dict(big_f._terms)
    quotient: Dict[Exponent, Fraction] = {}
    while remainder:
        lead = max(remainder)
        if any(a < b for a, b in zip(lead, lead_g)):
            raise ValueError(f"{f} is not divisible by {g}")
        mono = sub_exponents(lead, lead_g)
        coeff = remainder[lead] / lead_c
        quotient[mono] = quotient.get(mono, 0) + coeff
        for exp, c in big_g._terms.items():
            key = add_exponents(exp, mono)
            value = remainder.get(key, 0) - coeff * c
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    # f = s^-mu_f F, g = s^-mu_g G, F = G Q  =>  f / g = s^(mu_g - mu_f) Q
    return LaurentPolynomial._wrap(f.nvars, {e: c for e, c in quotient.items() if c}).shift(
        sub_exponents(mu_g, mu_f)
    )


def clear_vector(vector: Sequence[LaurentPolynomial]) -> Tuple[LaurentVector, Exponent]:
    """
    Multiply a row vector by the smallest monomial s^mu making every entry a polynomial.

    The zero vector clears to itself with mu = 0.
    """
    nvars = vector[0].nvars if vector else 0
    lows = [p.min_exponents() for p in vector if p]
    if not lows:
        return tuple(vector), zero_exponent(nvars)
    mu = tuple(-min(col) for col in zip(*lows)) if nvars else ()
    return tuple(p.shift(mu) for p in vector), mu


def poly_arith(f: LaurentPolynomial, g: LaurentPolynomial, kind: str) -> LaurentPolynomial:
    """Ring arithmetic by name: ``add``, ``sub`` or ``mul``."""
    f._check(g)
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise ValueError(f"Unknown arithmetic kind: {kind}")


def is_unit(f: LaurentPolynomial) -> bool:
    return f.is_unit()


def clear_to_polynomial(f: LaurentPolynomial) -> Tuple[LaurentPolynomial, Exponent]:
    return f.clear()


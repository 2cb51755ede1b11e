"""
Polynomial Parser - Text grammar for Laurent polynomials.

Grammar: variables ``s1..s<n>``, integer exponents with ``^`` (negative
allowed), ``*`` products, rational coefficients ``p/q``.  Whitespace is
ignored.  Example: ``s1*s2^-1 - 3/2``.
"""

import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from algebra.laurent import Exponent, LaurentPolynomial
from core.errors import ParseError

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_ALLOWED = re.compile(r"[\sA-Za-z0-9+\-*/^()]*")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_VARIABLE = re.compile(r"s([1-9][0-9]*)")


def _symbols(nvars: int) -> Dict[str, sympy.Symbol]:
    return {f"s{i + 1}": sympy.Symbol(f"s{i + 1}") for i in range(nvars)}


def _fail(message: str, text: str, offset: int, line: Optional[int], column: Optional[int]) -> ParseError:
    col = None if column is None else column + offset
    return ParseError(message, line=line, column=col, details={"text": text, "offset": offset})


def parse_polynomial(text: str, nvars: int, line: Optional[int] = None,
                     column: Optional[int] = None) -> LaurentPolynomial:
    """
    Parse one polynomial.

    ``line``/``column`` locate ``text`` inside a larger document so error
    positions can be reported against the file.
    """
    if not isinstance(text, str):
        if isinstance(text, int):
            return LaurentPolynomial.constant(nvars, text)
        raise _fail(f"Expected a polynomial string, got {type(text).__name__}", str(text), 0, line, column)
    if not text.strip():
        raise _fail("Empty polynomial", text, 0, line, column)

    match = _ALLOWED.fullmatch(text)
    if match is None:
        bad = next(i for i, ch in enumerate(text) if not _ALLOWED.fullmatch(ch))
        raise _fail(f"Unexpected character {text[bad]!r}", text, bad, line, column)

    for name in _NAME.finditer(text):
        var = _VARIABLE.fullmatch(name.group())
        if var is None or int(var.group(1)) > nvars:
            raise _fail(f"Unknown variable {name.group()!r} (ring has s1..s{nvars})",
                        text, name.start(), line, column)

    symbols = _symbols(nvars)
    try:
        expr = parse_expr(text, local_dict=dict(symbols), transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
        offset = getattr(e, "offset", None) or 0
        raise _fail(f"Malformed polynomial: {e}", text, max(offset - 1, 0), line, column) from e

    return from_sympy(expr, nvars, text=text, line=line, column=column)


def from_sympy(expr, nvars: int, text: str = "", line: Optional[int] = None,
               column: Optional[int] = None) -> LaurentPolynomial:
    """Convert a sympy expression in s1..sn into a LaurentPolynomial."""
    symbols = _symbols(nvars)
    index = {sym: i for i, sym in enumerate(symbols.values())}
    expr = sympy.expand(sympy.sympify(expr))
    if expr == 0:
        return LaurentPolynomial.zero(nvars)

    terms: Dict[Exponent, Fraction] = {}
    for monomial, coeff in expr.as_coefficients_dict().items():
        if not coeff.is_Rational:
            raise _fail(f"Coefficient {coeff} is not rational", text, 0, line, column)
        exp = [0] * nvars
        for base, power in monomial.as_powers_dict().items():
            if base == 1:
                continue
            if base.is_Rational:
                # Rational factor hidden inside the monomial (e.g. 2**-1)
                value = base ** power
                if not value.is_Rational:
                    raise _fail(f"Irrational coefficient {value}", text, 0, line, column)
                coeff = coeff * value
                continue
            if base not in index:
                raise _fail(f"Non-polynomial factor {base}", text, 0, line, column)
            if not power.is_Integer:
                raise _fail(f"Exponent {power} of {base} is not an integer", text, 0, line, column)
            exp[index[base]] += int(power)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return LaurentPolynomial(nvars, terms)


def to_sympy(poly: LaurentPolynomial):
    """Inverse of :func:`from_sympy`."""
    symbols = list(_symbols(poly.nvars).values())
    expr = sympy.Integer(0)
    for exp, coeff in poly.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for sym, e in zip(symbols, exp):
            term *= sym ** e
        expr += term
    return expr


def parse_matrix(rows: Sequence[Sequence[str]], nvars: int,
                 locate: Optional[Callable[[int, int], Tuple[Optional[int], Optional[int]]]] = None) -> List[List[LaurentPolynomial]]:
    """
    Parse a nested list of polynomial strings.

    ``locate(i, j)`` may return the (line, column) of entry (i, j) in the
    source document.
    """
    result = []
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)):
            raise ParseError(f"Row {i} is not a list", details={"row": i})
        parsed_row = []
        for j, entry in enumerate(row):
            line, column = locate(i, j) if locate else (None, None)
            try:
                parsed_row.append(parse_polynomial(entry, nvars, line=line, column=column))
            except ParseError as e:
                e.details.update({"row": i, "col": j})
                raise
        result.append(parsed_row)
    return result


def split_box(text: str) -> List[Tuple[int, int]]:
    """Parse ``lo1:hi1,lo2:hi2,...`` into inclusive integer ranges."""
    ranges = []
    for k, part in enumerate(p for p in text.split(",") if p.strip()):
        try:
            lo, hi = (int(v) for v in part.split(":"))
        except ValueError as e:
            raise ParseError(f"Bad box component {part!r}; expected lo:hi",
                             line=1, column=text.find(part) + 1) from e
        if lo > hi:
            raise ParseError(f"Empty range {lo}:{hi} in box", line=1, column=text.find(part) + 1,
                             details={"axis": k})
        ranges.append((lo, hi))
    return ranges

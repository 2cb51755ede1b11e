"""
Serialization - JSON artifacts exchanged between stages, plus CSV export.

Every writer is deterministic (sorted keys, fixed indentation) so
re-running a stage on unchanged input reproduces the file byte for byte.
"""

import csv
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra.equations import EquationModule
from algebra.laurent import format_rational
from algebra.matrix import LaurentMatrix
from algebra.parser import parse_matrix, parse_polynomial
from core.errors import ParseError
from systems.certificates import IntegralityCertificate
from systems.dnnl import FlowStep, NormalizationResult
from systems.realization import FirstOrderRealization, Generator
from systems.trajectory import TrajectoryWindow
from systems.transform import UnimodularTransform

_STRING = re.compile(r'"(?:[^"\\]|\\.)*"')


# ==================== Files ====================

def read_json(path: str | Path) -> Tuple[Dict[str, Any], str]:
    """Parsed document and its raw text; syntax errors carry line/column."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e.msg}", line=e.lineno, column=e.colno) from e


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(data: Dict[str, Any], path: str | Path) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")


def _require(data: Dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in data]
    if missing:
        raise ParseError(f"Missing field(s): {', '.join(missing)}", details={"missing": missing})


def matrix_locator(text: str, key: str, rows: Sequence[Sequence[Any]]) -> Callable[[int, int], Tuple[Optional[int], Optional[int]]]:
    """
    (line, column) of entry (i, j) of the string matrix stored under ``key``.

    String tokens after the key are matched to entries in row-major order.
    """
    marker = re.search(r'"%s"\s*:' % re.escape(key), text)
    positions: List[int] = []
    if marker is not None:
        total = sum(len(r) for r in rows if isinstance(r, (list, tuple)))
        for m in _STRING.finditer(text, marker.end()):
            positions.append(m.start() + 1)
            if len(positions) >= total:
                break
    offsets: Dict[Tuple[int, int], int] = {}
    k = 0
    for i, row in enumerate(rows):
        for j in range(len(row) if isinstance(row, (list, tuple)) else 0):
            if k < len(positions):
                offsets[(i, j)] = positions[k]
            k += 1

    def locate(i: int, j: int) -> Tuple[Optional[int], Optional[int]]:
        offset = offsets.get((i, j))
        if offset is None:
            return None, None
        line = text.count("\n", 0, offset) + 1
        column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        return line, column
    return locate


def _matrix(data: Dict[str, Any], key: str, nvars: int, cols: int, text: str = "") -> LaurentMatrix:
    rows = data.get(key, [])
    locate = matrix_locator(text, key, rows) if text else None
    parsed = parse_matrix(rows, nvars, locate)
    return LaurentMatrix(nvars, parsed, cols=cols)


def _strings(matrix: LaurentMatrix) -> List[List[str]]:
    return matrix.to_strings()


# ==================== Systems ====================

def system_from_dict(data: Dict[str, Any], text: str = "") -> EquationModule:
    _require(data, "n", "q", "R")
    n, q = int(data["n"]), int(data["q"])
    if n < 1 or q < 1:
        raise ParseError("n and q must be positive", details={"n": n, "q": q})
    rows = data["R"]
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != q:
            raise ParseError(f"Row {i} of R must have q={q} entries", details={"row": i})
    matrix = _matrix(data, "R", n, q, text)
    return EquationModule.from_matrix(matrix)


def load_system(path: str | Path) -> EquationModule:
    data, text = read_json(path)
    return system_from_dict(data, text)


def system_to_dict(system: EquationModule) -> Dict[str, Any]:
    return {"n": system.nvars, "q": system.rank, "R": [[str(p) for p in r] for r in system.rows]}


# ==================== Normalization ====================

def certificate_to_dict(cert: IntegralityCertificate) -> Dict[str, Any]:
    return {"var": cert.var_index + 1, "poly": str(cert.polynomial), "degree": cert.degree}


def certificate_from_dict(data: Dict[str, Any], n: int) -> IntegralityCertificate:
    _require(data, "var", "poly", "degree")
    return IntegralityCertificate(int(data["var"]) - 1, parse_polynomial(data["poly"], n), int(data["degree"]))


def normalization_to_dict(norm: NormalizationResult) -> Dict[str, Any]:
    source = norm.source if norm.source is not None else norm.transformed
    return {
        "n": norm.n,
        "q": norm.transformed.rank,
        "T": norm.transform.tolist(),
        "d": norm.d,
        "source_R": [[str(p) for p in r] for r in source.rows],
        "transformed_R": [[str(p) for p in r] for r in norm.transformed.rows],
        "annihilator": [str(r[0]) for r in norm.annihilator.rows],
        "certificates": [certificate_to_dict(c) for c in norm.certificates],
        "steps": [
            {"level": s.level, "T": s.transform.tolist(), "element": str(s.element),
             "witness": certificate_to_dict(s.witness)}
            for s in norm.steps
        ],
    }


def normalization_from_dict(data: Dict[str, Any], text: str = "") -> NormalizationResult:
    _require(data, "n", "q", "T", "d", "transformed_R", "certificates")
    n, q = int(data["n"]), int(data["q"])
    T = UnimodularTransform.from_rows(data["T"])
    transformed = EquationModule.from_matrix(_matrix(data, "transformed_R", n, q, text))
    source = EquationModule.from_matrix(_matrix(data, "source_R", n, q, text)) if "source_R" in data else None
    ann = EquationModule.ideal(n, [parse_polynomial(g, n) for g in data.get("annihilator", [])])
    steps = [
        FlowStep(int(s["level"]), UnimodularTransform.from_rows(s["T"]), parse_polynomial(s["element"], n),
                 certificate_from_dict(s["witness"], n))
        for s in data.get("steps", [])
    ]
    certs = [certificate_from_dict(c, n) for c in data["certificates"]]
    return NormalizationResult(T, int(data["d"]), transformed, ann, certs, steps, source)


# ==================== Realization ====================

def realization_to_dict(real: FirstOrderRealization, transform: Optional[UnimodularTransform] = None,
                        source: Optional[EquationModule] = None) -> Dict[str, Any]:
    transform = transform or UnimodularTransform.identity(real.n)
    source = source if source is not None else real.system
    return {
        "n": real.n,
        "q": real.q,
        "d": real.d,
        "gamma": real.gamma,
        "generators": [
            {"monomial": g.label(real.d), "exponents": list(g.exponents), "index": g.index + 1}
            for g in real.generators
        ],
        "X": _strings(real.X),
        "A": [_strings(a) for a in real.A],
        "C": _strings(real.C),
        "certificates": [certificate_to_dict(c) for c in real.certificates],
        "T": transform.tolist(),
        "source_R": [[str(p) for p in r] for r in source.rows],
        "transformed_R": [[str(p) for p in r] for r in real.system.rows],
    }


def realization_from_dict(data: Dict[str, Any], text: str = "",
                          ) -> Tuple[FirstOrderRealization, UnimodularTransform, EquationModule]:
    """Realization, the transform it was built under and the original system."""
    _require(data, "n", "q", "d", "gamma", "generators", "X", "A", "C", "certificates", "transformed_R")
    n, q, d, gamma = (int(data[k]) for k in ("n", "q", "d", "gamma"))
    system = EquationModule.from_matrix(_matrix(data, "transformed_R", n, q, text))
    source = EquationModule.from_matrix(_matrix(data, "source_R", n, q, text)) if "source_R" in data else system
    generators = [Generator(tuple(g["exponents"]), int(g["index"]) - 1) for g in data["generators"]]
    if len(generators) != gamma:
        raise ParseError(f"gamma={gamma} but {len(generators)} generators listed")
    X = _matrix(data, "X", d, gamma, text)
    A = [LaurentMatrix(d, parse_matrix(a, d), cols=gamma) for a in data["A"]]
    C = _matrix(data, "C", d, gamma, text)
    certs = [certificate_from_dict(c, n) for c in data["certificates"]]
    T = UnimodularTransform.from_rows(data["T"]) if "T" in data else UnimodularTransform.identity(n)
    return FirstOrderRealization(system, d, generators, X, A, C, certs), T, source


# ==================== Trajectories ====================

def trajectory_to_dict(w: TrajectoryWindow) -> Dict[str, Any]:
    return {
        "dim": w.dim,
        "lo": list(w.lo),
        "hi": list(w.hi),
        "width": w.width,
        "values": [format_rational(v) for v in w.flat_values()],
    }


def trajectory_from_dict(data: Dict[str, Any]) -> TrajectoryWindow:
    _require(data, "lo", "hi", "width", "values")
    try:
        values = [Fraction(v) for v in data["values"]]
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Bad trajectory value: {e}") from e
    if "dim" in data and int(data["dim"]) != len(data["lo"]):
        raise ParseError("dim does not match the box", details={"dim": data["dim"], "lo": data["lo"]})
    try:
        return TrajectoryWindow(data["lo"], data["hi"], int(data["width"]), values)
    except ValueError as e:
        raise ParseError(f"Bad trajectory window: {e}") from e


def load_trajectory(path: str | Path) -> TrajectoryWindow:
    data, _ = read_json(path)
    return trajectory_from_dict(data)


def write_csv(w: TrajectoryWindow, path: str | Path, floats: bool = False) -> None:
    """One lattice point per row: nu_1..nu_k, w_1..w_m."""
    header = [f"nu{k + 1}" for k in range(w.dim)] + [f"w{j + 1}" for j in range(w.width)]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for nu in w.points():
            values = w[nu]
            cells = [float(v) for v in values] if floats else [format_rational(v) for v in values]
            writer.writerow(list(nu) + cells)


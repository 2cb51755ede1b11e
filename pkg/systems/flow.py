"""
Flow Engine - Solve, renormalize and verify trajectories on finite windows.

Recursion:        w(nu) = (C prod A_j^(nu_{d+j}) x)(nu_1..nu_d)
Renormalization:  w(nu) = w~(T nu)
Verification:     R(s) w = 0 at every point where all shifts are sampled
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.equations import EquationModule
from algebra.matrix import LaurentMatrix
from core.config import EngineSettings
from core.errors import (
    CompatibilityError,
    DimensionMismatchError,
    InsufficientSupportError,
    NotAutonomousError,
    VerificationError,
    WindowExhaustedError,
)
from systems.behavior import is_autonomous
from systems.dnnl import NormalizationResult, dnnl_module
from systems.realization import FirstOrderRealization, build_realization, right_kernel
from systems.trajectory import (
    Box,
    Point,
    TrajectoryWindow,
    apply_operator,
    bounding_box,
    box_points,
    require_cover,
    required_padding,
)
from systems.transform import UnimodularTransform

_log = logging.getLogger(__name__)


def _split(box: Box, d: int) -> Tuple[Box, List[Point]]:
    lo, hi = box
    return (lo[:d], hi[:d]), list(box_points(lo[d:], hi[d:]))


def _union(boxes: Sequence[Box]) -> Box:
    lo = tuple(min(b[0][k] for b in boxes) for k in range(len(boxes[0][0])))
    hi = tuple(max(b[1][k] for b in boxes) for k in range(len(boxes[0][0])))
    return lo, hi


def required_input_box(real: FirstOrderRealization, out_box: Box) -> Box:
    """Box of Z^d on which x must be given to evaluate w on ``out_box``."""
    if real.d == 0:
        return (), ()
    (lo, hi), bigs = _split(out_box, real.d)
    return _union([required_padding(real.output_operator(big), lo, hi) for big in bigs])


def check_compatibility(X: LaurentMatrix, x: TrajectoryWindow) -> bool:
    """X(s) x = 0 on every point of x's window where it can be evaluated."""
    if X.rows == 0:
        return True
    residual = apply_operator(X, x)
    return residual.is_zero()


def _incompatibility(X: LaurentMatrix, x: TrajectoryWindow) -> CompatibilityError:
    residual = apply_operator(X, x)
    bad = residual.nonzero_points()
    return CompatibilityError(
        "initial condition violates X(s)x = 0",
        {"points": [list(p) for p in bad[:10]], "violations": len(bad)},
    )


def _slice_values(real: FirstOrderRealization, x: TrajectoryWindow, small: Box,
                  big: Point) -> TrajectoryWindow:
    operator = real.output_operator(big)
    needed = required_padding(operator, small[0], small[1])
    require_cover(x, needed, "initial condition")
    return apply_operator(operator, x.restrict(*needed))


def solve_points(real: FirstOrderRealization, x: TrajectoryWindow, points: Sequence[Point],
                 workers: int = 1) -> Dict[Point, Tuple[Fraction, ...]]:
    """w at the given points of Z^n; points sharing big coordinates share one operator."""
    d = real.d
    groups: Dict[Point, List[Point]] = {}
    for nu in points:
        groups.setdefault(tuple(nu[d:]), []).append(tuple(nu))

    def evaluate(big: Point) -> Dict[Point, Tuple[Fraction, ...]]:
        members = groups[big]
        small = bounding_box([nu[:d] for nu in members]) if d else ((), ())
        window = _slice_values(real, x, small, big)
        return {nu: window[nu[:d]] for nu in members}

    order = sorted(groups)
    if workers > 1 and len(order) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(evaluate, order))
    else:
        parts = [evaluate(big) for big in order]
    result: Dict[Point, Tuple[Fraction, ...]] = {}
    for part in parts:
        result.update(part)
    return result


def solve_strongly_relevant(real: FirstOrderRealization, x: TrajectoryWindow, out_box: Box,
                            workers: int = 1, check: bool = True) -> TrajectoryWindow:
    """Explicit solution on ``out_box`` from the initial condition x over Z^d."""
    if x.width != real.gamma or x.dim != real.d:
        raise DimensionMismatchError(
            f"initial condition must be a {real.d}-D window of width {real.gamma}",
            {"dim": x.dim, "width": x.width},
        )
    require_cover(x, required_input_box(real, out_box), "initial condition")
    if check and real.X.rows:
        try:
            compatible = check_compatibility(real.X, x)
        except WindowExhaustedError as e:
            raise InsufficientSupportError("initial condition window too small to test compatibility",
                                           e.details) from e
        if not compatible:
            raise _incompatibility(real.X, x)
    lo, hi = out_box
    values = solve_points(real, x, list(box_points(lo, hi)), workers)
    w = TrajectoryWindow(lo, hi, real.q)
    for nu, v in values.items():
        w[nu] = v
    _log.info("Solved on [%s, %s] from x on [%s, %s]", lo, hi, x.lo, x.hi)
    return w


def renormalize(w_tilde: TrajectoryWindow, T: UnimodularTransform, out_box: Box) -> TrajectoryWindow:
    """w(nu) = w~(T nu) on ``out_box``."""
    lo, hi = out_box
    points = list(box_points(lo, hi))
    image = [T.apply(nu) for nu in points]
    missing = [p for p in image if not w_tilde.contains(p)]
    if missing:
        need = bounding_box(image)
        raise InsufficientSupportError(
            f"w~ does not cover T * box; needs [{need[0]}, {need[1]}]",
            {"required_lo": list(need[0]), "required_hi": list(need[1]), "missing": len(missing)},
        )
    w = TrajectoryWindow(lo, hi, w_tilde.width)
    for nu, t_nu in zip(points, image):
        w[nu] = w_tilde[t_nu]
    return w


@dataclass
class VerificationReport:
    checked_points: int
    max_residual: Fraction
    nonzero_points: List[Point] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.max_residual == 0

    def to_dict(self) -> dict:
        return {
            "checked_points": self.checked_points,
            "max_residual": str(self.max_residual),
            "ok": self.ok,
            "nonzero_points": [list(p) for p in self.nonzero_points[:20]],
        }


def verify_solution(system: EquationModule, w: TrajectoryWindow) -> VerificationReport:
    """Evaluate every row of R(s) wherever all shifted samples exist."""
    if w.width != system.rank:
        raise DimensionMismatchError(f"window width {w.width} against q={system.rank}")
    rows = system.nonzero_rows()
    if not rows:
        raise InsufficientSupportError("no equations to check")
    try:
        residual = apply_operator(system.matrix, w)
    except WindowExhaustedError as e:
        raise InsufficientSupportError("no checkable point in the window", e.details) from e
    report = VerificationReport(residual.size(), residual.max_abs(), residual.nonzero_points())
    _log.info("Verified %d points, max residual %s", report.checked_points, report.max_residual)
    return report


def compatible_initial_condition(real: FirstOrderRealization, box: Box,
                                 rng: np.random.Generator, low: int = -5, high: int = 5) -> TrajectoryWindow:
    """x = Y(s) z on ``box`` for a random integer window z and X Y = 0."""
    lo, hi = box
    Y = right_kernel(real.X)
    if Y.cols == 0:
        return TrajectoryWindow.zeros(lo, hi, real.gamma)
    z_box = required_padding(Y, tuple(lo), tuple(hi))
    z = TrajectoryWindow.random(z_box[0], z_box[1], Y.cols, rng, low, high)
    return apply_operator(Y, z)


@dataclass
class Solution:
    """Output of the full pipeline, with the intermediate artifacts."""

    w: TrajectoryWindow
    normalization: Optional[NormalizationResult]
    realization: FirstOrderRealization
    x: TrajectoryWindow
    report: Optional[VerificationReport] = None


def _box_size(box: Box) -> int:
    return int(np.prod([b - a + 1 for a, b in zip(*box)])) if box[0] else 1


def solve_general(system: EquationModule, out_box: Box, x: Optional[TrajectoryWindow] = None,
                  settings: Optional[EngineSettings] = None,
                  rng: Optional[np.random.Generator] = None,
                  normalization: Optional[NormalizationResult] = None,
                  realization: Optional[FirstOrderRealization] = None,
                  transform: Optional[UnimodularTransform] = None) -> Solution:
    """
    Normalization, regularization, recursion and renormalization.

    ``x`` is the initial condition of the transformed system; a random
    compatible one is drawn when it is omitted.  A prebuilt realization
    must come with the transform it was built under.
    """
    settings = settings or EngineSettings()
    if realization is None:
        if normalization is None:
            if not is_autonomous(system):
                raise NotAutonomousError("system is not autonomous: the annihilator is zero")
            normalization = dnnl_module(system, settings.t_bound, settings.selection, rng,
                                        settings.cert_degree_bound)
        realization = build_realization(normalization.transformed, normalization.d,
                                        normalization.certificates, settings.cert_degree_bound)
    if transform is None:
        transform = normalization.transform if normalization is not None else UnimodularTransform.identity(system.nvars)
    T = transform
    lo, hi = out_box
    points = list(box_points(lo, hi))
    image = [T.apply(nu) for nu in points]
    hull = bounding_box(image)
    exact = _box_size(hull) > settings.shear_inflation_limit * len(points)

    if exact:
        targets = sorted(set(image))
        needed = _union([required_input_box(realization, (p, p)) for p in targets]) if realization.d else ((), ())
    else:
        needed = required_input_box(realization, hull)
    if x is None:
        rng = rng if rng is not None else np.random.default_rng(settings.seed)
        x = compatible_initial_condition(realization, needed, rng)

    if exact:
        _log.info("Bounding box of T*box inflates past %dx, evaluating %d image points",
                  settings.shear_inflation_limit, len(image))
        require_cover(x, needed, "initial condition")
        if realization.X.rows and not check_compatibility(realization.X, x):
            raise _incompatibility(realization.X, x)
        values = solve_points(realization, x, image, settings.workers)
        w = TrajectoryWindow(lo, hi, system.rank)
        for nu, t_nu in zip(points, image):
            w[nu] = values[t_nu]
    else:
        w_tilde = solve_strongly_relevant(realization, x, hull, settings.workers)
        w = renormalize(w_tilde, T, out_box)

    solution = Solution(w, normalization, realization, x)
    if settings.verify:
        solution.report = verify_solution(system, w)
        if not solution.report.ok:
            raise VerificationError("solution does not satisfy R(s) w = 0", solution.report.to_dict())
    return solution

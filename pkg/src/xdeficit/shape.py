"""Shape classification of the post-measured entropy over the measurement angle.

The entropy curve on [0, pi/2] starts and ends with zero slope for every
member of the family, and can be monotone, carry a single interior extremum,
or be bimodal (exactly one interior maximum plus one interior minimum, born
together from an inflection point).  Locating the interior minimum to high
precision is what the deficit minimization and all boundary solving hinge on,
so classification is deliberately conservative: a coarse uniform grid, local
slope-sign analysis, golden-section refinement of every bracketed extremum,
and an adaptive resolution-doubling pass wherever slopes are suspiciously
flat.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import StateParams, post_entropy

HALF_PI = math.pi / 2.0

# Discrete slopes smaller than this (bits per grid step) count as flat; ties
# are broken toward "no extremum".
FLAT_SLOPE_TOL = 1e-12

# Refined extrema closer than this to an interval end merge with the endpoint,
# since both endpoints are stationary for every family member and produce
# spurious near-endpoint brackets.
ENDPOINT_MARGIN = 1e-4

MAX_GRID_N = 1 << 14

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class UnresolvedShape(RuntimeError):
    """Shape could not be classified at the maximum grid resolution."""


class ShapeClass(enum.Enum):
    MONOTONE_INCREASING = "MonotoneIncreasing"
    MONOTONE_DECREASING = "MonotoneDecreasing"
    INTERIOR_MINIMUM = "InteriorMinimum"
    INTERIOR_MAXIMUM = "InteriorMaximum"
    BIMODAL = "Bimodal"
    FLAT = "Flat"


@dataclass(frozen=True)
class Extremum:
    theta: float
    value: float
    kind: str  # "min" or "max"


@dataclass(frozen=True)
class ShapeReport:
    shape_class: ShapeClass
    extrema: tuple[Extremum, ...]
    grid_n: int


def golden_minimize(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section minimum of a unimodal scalar function on [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _slope_signs(y: np.ndarray) -> np.ndarray:
    d = np.diff(y)
    signs = np.sign(d)
    signs[np.abs(d) < FLAT_SLOPE_TOL] = 0.0
    return signs


def _extremum_brackets(theta: np.ndarray, signs: np.ndarray):
    """Brackets (kind, lo, hi) from sign flips between consecutive nonzero slopes."""
    out = []
    nz = np.nonzero(signs != 0.0)[0]
    for i, j in zip(nz[:-1], nz[1:]):
        if signs[i] > 0.0 and signs[j] < 0.0:
            out.append(("max", theta[i], theta[j + 1]))
        elif signs[i] < 0.0 and signs[j] > 0.0:
            out.append(("min", theta[i], theta[j + 1]))
    return out


def classify_shape(p: StateParams, grid_n: int = 512, refine_tol: float = 1e-10) -> ShapeReport:
    """Classify the entropy curve on [0, pi/2] and refine interior extrema.

    Samples ``grid_n + 1`` uniform angles, brackets extrema by slope-sign
    flips, and polishes each bracket by golden section to ``refine_tol``
    radians.  Whenever a slope magnitude dips within 10x of the flatness
    threshold without flipping (the fingerprint of an extremum pair right
    after its birth), the grid is doubled, up to 2**14 points.

    Raises UnresolvedShape if more than two interior extrema survive
    refinement; two extrema must be one minimum plus one maximum.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    if refine_tol > 1e-8:
        raise ValueError("refine_tol must be at most 1e-8")

    n = grid_n
    while True:
        theta = np.linspace(0.0, HALF_PI, n + 1)
        y = np.asarray(post_entropy(p, theta))
        signs = _slope_signs(y)
        brackets = _extremum_brackets(theta, signs)
        all_flat = bool(np.all(signs == 0.0))
        suspicious = bool(np.any(np.abs(np.diff(y)) < 10.0 * FLAT_SLOPE_TOL)) and not all_flat
        if not suspicious or n >= MAX_GRID_N:
            break
        n *= 2

    f = lambda t: post_entropy(p, t)
    extrema = []
    for kind, lo, hi in brackets:
        if kind == "min":
            x, v = golden_minimize(f, lo, hi, refine_tol)
        else:
            x, neg = golden_minimize(lambda t: -f(t), lo, hi, refine_tol)
            v = -neg
        if ENDPOINT_MARGIN < x < HALF_PI - ENDPOINT_MARGIN:
            extrema.append(Extremum(theta=x, value=v, kind=kind))
    extrema.sort(key=lambda e: e.theta)

    if len(extrema) > 2:
        raise UnresolvedShape(
            f"{len(extrema)} interior extrema at ({p.q1}, {p.q2}); "
            f"at most two are expected for this family"
        )
    if len(extrema) == 2:
        if {extrema[0].kind, extrema[1].kind} != {"min", "max"}:
            raise UnresolvedShape(
                f"two interior extrema of the same kind at ({p.q1}, {p.q2})"
            )
        cls = ShapeClass.BIMODAL
    elif len(extrema) == 1:
        cls = (
            ShapeClass.INTERIOR_MINIMUM
            if extrema[0].kind == "min"
            else ShapeClass.INTERIOR_MAXIMUM
        )
    else:
        if all_flat or abs(y[-1] - y[0]) < FLAT_SLOPE_TOL:
            cls = ShapeClass.FLAT
        elif y[-1] > y[0]:
            cls = ShapeClass.MONOTONE_INCREASING
        else:
            cls = ShapeClass.MONOTONE_DECREASING

    return ShapeReport(shape_class=cls, extrema=tuple(extrema), grid_n=n)


def interior_minimum(
    p: StateParams, grid_n: int = 512, refine_tol: float = 1e-10
) -> Extremum | None:
    """Refined interior minimum of the entropy curve, or None if absent.

    For bimodal shapes this is the minimum of the pair; monotone and
    maximum-only shapes yield None.
    """
    report = classify_shape(p, grid_n=grid_n, refine_tol=refine_tol)
    for ext in report.extrema:
        if ext.kind == "min":
            return ext
    return None


def endpoint_slope_check(p: StateParams, step: float = 1e-5) -> tuple[float, float]:
    """Stationarity probe at both interval ends.

    Returns the magnitudes of symmetric difference quotients of the entropy
    curve at theta = 0 and theta = pi/2.  The closed form extends smoothly
    past both endpoints (even around 0, reflective around pi/2), so the
    straddling quotients vanish identically up to rounding whenever the
    endpoint derivatives are zero, which for this family is always.
    """
    f = lambda t: post_entropy(p, t)
    slope0 = abs(f(step) - f(-step)) / (2.0 * step)
    slope_half = abs(f(HALF_PI + step) - f(HALF_PI - step)) / (2.0 * step)
    return slope0, slope_half

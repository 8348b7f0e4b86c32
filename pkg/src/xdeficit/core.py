"""Closed-form scalar mathematics of the two-parameter X-state family.

The family mixes the Bell states (|01> +- |10>)/sqrt(2), with weights q1 and
q2, and the product state |00>, with weight 1 - q1 - q2.  The valid parameter
domain is the triangle q1 >= 0, q2 >= 0, q1 + q2 <= 1.  A projective
measurement on qubit B is parametrized by a polar angle theta (the azimuthal
angle drops out for this family), and the spectrum of the measurement-averaged
state is known in closed form.  All entropies are reported in bits.

Everything in this module is a pure function of its arguments and safe to call
from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EDGE_TOL = 1e-12

# r values closer than this to 0 or 1 make the half-pi curvature formula
# degenerate (0/0 mixtures); callers get None instead of garbage.
RADIUS_DEGENERACY_TOL = 1e-9


class DomainError(ValueError):
    """Raised when parameters leave the valid probability domain."""


@dataclass(frozen=True)
class StateParams:
    """Point (q1, q2) in the triangular parameter domain.

    Construction rejects violations of q1 >= 0, q2 >= 0, q1 + q2 <= 1 beyond
    a 1e-12 tolerance; float dust inside the tolerance is clamped.
    """

    q1: float
    q2: float

    def __post_init__(self):
        q1, q2 = float(self.q1), float(self.q2)
        if not (math.isfinite(q1) and math.isfinite(q2)):
            raise DomainError(f"non-finite state parameters ({q1}, {q2})")
        if q1 < -EDGE_TOL or q2 < -EDGE_TOL or q1 + q2 > 1.0 + EDGE_TOL:
            raise DomainError(
                f"require q1 >= 0, q2 >= 0, q1 + q2 <= 1; got ({q1}, {q2})"
            )
        object.__setattr__(self, "q1", min(max(q1, 0.0), 1.0))
        object.__setattr__(self, "q2", min(max(q2, 0.0), 1.0))

    def swapped(self) -> "StateParams":
        """Mirror image under the q1 <-> q2 exchange symmetry."""
        return StateParams(self.q2, self.q1)


@dataclass(frozen=True)
class EndpointDiagnostics:
    """Curvature diagnostics of the post-measured entropy at the interval ends.

    ``r`` is the auxiliary radius sqrt((1-q1-q2)^2 + (q1-q2)^2).  ``s2_halfpi``
    is the second derivative of the post-measured entropy at theta = pi/2
    (natural-log units; None when r is degenerately close to 0 or 1).
    ``s2_zero_axis`` is the second derivative at theta = 0, which is finite
    only on the Cartesian axes q1*q2 = 0; off the axes it diverges and the
    field is None.  Only the signs and zero sets of these values carry meaning.
    """

    r: float
    s2_halfpi: float | None
    s2_zero_axis: float | None


def binary_entropy(x: float) -> float:
    """Shannon binary entropy -x*log2(x) - (1-x)*log2(1-x) in bits."""
    x = float(x)
    if x < -EDGE_TOL or x > 1.0 + EDGE_TOL:
        raise DomainError(f"binary entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def quaternary_entropy(x1: float, x2: float, x3: float, x4: float) -> float:
    """Entropy in bits of a four-outcome distribution, with 0*log(0) = 0.

    Entries may carry negative float dust down to -1e-12 (clamped to zero);
    the four values must sum to 1 within 1e-10.
    """
    xs = [float(x1), float(x2), float(x3), float(x4)]
    for x in xs:
        if x < -EDGE_TOL:
            raise DomainError(f"probability {x} below zero beyond tolerance")
    total = sum(xs)
    if abs(total - 1.0) > 1e-10:
        raise DomainError(f"probabilities sum to {total}, expected 1")
    out = 0.0
    for x in xs:
        if x > 0.0:
            out -= x * math.log2(x)
    return out


def family_spectrum(p: StateParams) -> np.ndarray:
    """Eigenvalues (1-q1-q2, q1, q2, 0) of the un-measured density matrix.

    The order is fixed: |00> weight first, then the two Bell weights, then the
    structural zero.  Fidelity and reporting rely on this order.
    """
    lam = np.array([1.0 - p.q1 - p.q2, p.q1, p.q2, 0.0])
    return np.clip(lam, 0.0, 1.0)


def pre_entropy(p: StateParams) -> float:
    """Entropy in bits of the state before any measurement."""
    out = 0.0
    for lam in (p.q1, p.q2, 1.0 - p.q1 - p.q2):
        if lam > EDGE_TOL:
            out -= lam * math.log2(lam)
    return out


def post_spectrum(p: StateParams, theta) -> np.ndarray:
    """Closed-form eigenvalues of the measurement-averaged state.

    Returns the four eigenvalues as the last axis of the result; ``theta``
    may be a scalar or an ndarray of polar angles.  The azimuthal measurement
    angle does not enter.  The formula extends smoothly to any real theta,
    which the symmetry tests exploit.
    """
    a = 1.0 - p.q1 - p.q2
    b = 1.0 - 2.0 * p.q1 - 2.0 * p.q2
    c = p.q1 - p.q2
    theta = np.asarray(theta, dtype=float)
    ct = np.cos(theta)
    st = np.sin(theta)
    rad_p = np.sqrt((a + b * ct) ** 2 + (c * st) ** 2)
    rad_m = np.sqrt((a - b * ct) ** 2 + (c * st) ** 2)
    return np.stack(
        [
            0.25 * (1.0 + a * ct + rad_p),
            0.25 * (1.0 + a * ct - rad_p),
            0.25 * (1.0 - a * ct + rad_m),
            0.25 * (1.0 - a * ct - rad_m),
        ],
        axis=-1,
    )


def _post_entropy_scalar(q1: float, q2: float, theta: float) -> float:
    # scalar fast path; hot inner loop of every refinement and sweep
    a = 1.0 - q1 - q2
    b = 1.0 - 2.0 * q1 - 2.0 * q2
    c = q1 - q2
    ct = math.cos(theta)
    st = math.sin(theta)
    rad_p = math.sqrt((a + b * ct) ** 2 + (c * st) ** 2)
    rad_m = math.sqrt((a - b * ct) ** 2 + (c * st) ** 2)
    out = 0.0
    for lam in (
        0.25 * (1.0 + a * ct + rad_p),
        0.25 * (1.0 + a * ct - rad_p),
        0.25 * (1.0 - a * ct + rad_m),
        0.25 * (1.0 - a * ct - rad_m),
    ):
        if lam > 0.0:
            out -= lam * math.log2(lam)
    return out


def post_entropy(p: StateParams, theta) -> float | np.ndarray:
    """Entropy in bits of the measurement-averaged state at angle theta.

    Symmetric under theta -> pi - theta and under the q1 <-> q2 exchange.
    Accepts scalar or ndarray theta.
    """
    if np.ndim(theta) == 0:
        return _post_entropy_scalar(p.q1, p.q2, float(theta))
    lam = post_spectrum(p, theta)
    lam = np.clip(lam, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0.0, -lam * np.log2(np.where(lam > 0.0, lam, 1.0)), 0.0)
    return terms.sum(axis=-1)


def endpoint_entropy_zero(p: StateParams) -> float:
    """Post-measured entropy at theta = 0 in closed form.

    The spectrum there collapses to (1-s, s/2, s/2, 0) with s = q1 + q2.
    """
    s = p.q1 + p.q2
    out = 0.0
    if 1.0 - s > EDGE_TOL:
        out -= (1.0 - s) * math.log2(1.0 - s)
    if s > EDGE_TOL:
        out -= s * math.log2(s / 2.0)
    return out


def aux_radius(p: StateParams) -> float:
    """Radius sqrt((1-q1-q2)^2 + (q1-q2)^2) governing the theta = pi/2 end."""
    return math.hypot(1.0 - p.q1 - p.q2, p.q1 - p.q2)


def endpoint_entropy_halfpi(p: StateParams) -> float:
    """Post-measured entropy at theta = pi/2: 1 + h((1+r)/2) bits."""
    return 1.0 + binary_entropy((1.0 + aux_radius(p)) / 2.0)


def s2_halfpi(p: StateParams) -> float | None:
    """Second theta-derivative of the post-measured entropy at theta = pi/2.

    Evaluated in natural-log units; only the sign and the zero set are
    contractually meaningful.  Returns None when r is within 1e-9 of 0 or 1
    (degenerate radius; the value is never needed there).
    """
    r = aux_radius(p)
    if r < RADIUS_DEGENERACY_TOL or r > 1.0 - RADIUS_DEGENERACY_TOL:
        return None
    a = 1.0 - p.q1 - p.q2
    b = 1.0 - 2.0 * p.q1 - 2.0 * p.q2
    c = p.q1 - p.q2
    term1 = c * c / (2.0 * r**3) * (r * r - b * b) * math.log((1.0 + r) / (1.0 - r))
    term2 = a * a / (1.0 - r * r) * (1.0 - 2.0 * b * (1.0 - b / (2.0 * r * r)))
    return term1 - term2


def s2_zero_axis(q: float) -> float:
    """Second theta-derivative at theta = 0 on a Cartesian axis.

    ``q`` is the single nonzero mixture weight.  Natural-log units, sign
    significant.  The polynomial prefactor (1-q)(1-2q) vanishes at q = 1/2
    and q = 1; at q = 1 the logarithm diverges but the product limit is 0,
    which is returned directly.  As q -> 0 the value grows without bound.
    """
    q = float(q)
    if q < -EDGE_TOL or q > 1.0 + EDGE_TOL:
        raise DomainError(f"axis weight {q} outside [0, 1]")
    q = min(max(q, 0.0), 1.0)
    poly = (1.0 - q) * (1.0 - 2.0 * q)
    if poly == 0.0:
        return 0.0
    if q == 0.0:
        return math.inf
    return poly / (2.0 - 3.0 * q) * math.log(2.0 * (1.0 - q) / q)


def endpoint_diagnostics(p: StateParams) -> EndpointDiagnostics:
    """Curvature diagnostics at both ends of the measurement interval.

    ``s2_zero_axis`` is populated only when q1*q2 = 0; off the axes the
    theta = 0 second derivative diverges and None marks it.
    """
    on_axis = min(p.q1, p.q2) <= EDGE_TOL
    return EndpointDiagnostics(
        r=aux_radius(p),
        s2_halfpi=s2_halfpi(p),
        s2_zero_axis=s2_zero_axis(max(p.q1, p.q2)) if on_axis else None,
    )


def family_fidelity(p: StateParams, p2: StateParams) -> float:
    """Fidelity between two members of the family.

    All members are simultaneously diagonal in the basis |00>, the two Bell
    states and |11>, so F reduces to (sum_i sqrt(lam_i * lam_i'))^2 over the
    spectra in the fixed basis order.
    """
    lam = family_spectrum(p)
    lam2 = family_spectrum(p2)
    overlap = float(np.sqrt(lam * lam2).sum())
    return min(overlap * overlap, 1.0)

"""Brute-force verification path through explicit density matrices.

Instead of the closed forms in :mod:`xdeficit.core`, this module builds the
4x4 density matrix, applies a rank-1 projective measurement on qubit B by
matrix multiplication, and diagonalizes the result with a fixed-size cyclic
Jacobi eigensolver.  It exists to validate the closed forms and to supply
independently computed expected values for tests; it is a correctness oracle,
not a fast path.

The eigensolver works on the real symmetric embedding [[A, -B], [B, A]] of a
complex Hermitian matrix A + iB, whose spectrum is the Hermitian spectrum
doubled.  A fixed-size Jacobi iteration keeps the oracle bit-reproducible and
free of external linear-algebra dependencies.
"""

from __future__ import annotations

import math

import numpy as np

from .core import StateParams, quaternary_entropy

HERMITICITY_TOL = 1e-10

# Jacobi residuals land around 1e-15; anything above this clamp is a real
# negative eigenvalue and gets rejected upstream.
EIGENVALUE_CLAMP = 1e-10

_I2 = np.eye(2, dtype=complex)


def build_density(p: StateParams) -> np.ndarray:
    """Density matrix of the family member in the computational basis.

    Basis order |00>, |01>, |10>, |11>.  The Bell-state mixture fills the
    central 2x2 block; the |00> weight sits in the corner.
    """
    s = p.q1 + p.q2
    d = p.q1 - p.q2
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0 - s
    rho[1, 1] = rho[2, 2] = s / 2.0
    rho[1, 2] = rho[2, 1] = d / 2.0
    return rho


def projectors(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal rank-1 projector pair for the measurement direction.

    The direction is the SU(2) rotation of the computational basis by polar
    angle theta and azimuthal angle phi.  The two projectors sum to the
    identity and are mutually orthogonal.
    """
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    e_minus = complex(math.cos(phi), -math.sin(phi))
    e_plus = complex(math.cos(phi), math.sin(phi))
    v = np.array([[c, -e_minus * s], [e_plus * s, c]], dtype=complex)
    pi0 = v @ np.diag([1.0 + 0j, 0.0]) @ v.conj().T
    pi1 = v @ np.diag([0.0, 1.0 + 0j]) @ v.conj().T
    return pi0, pi1


def post_measured_state(rho: np.ndarray, theta: float, phi: float) -> np.ndarray:
    """Weighted average of the state after measuring qubit B.

    Computes sum_k (I x Pi_k) rho (I x Pi_k)^dagger.  Hermiticity and unit
    trace are preserved.
    """
    out = np.zeros_like(rho)
    for pik in projectors(theta, phi):
        big = np.kron(_I2, pik)
        out += big @ rho @ big.conj().T
    return out


def _jacobi_eigenvalues_symmetric(mat: np.ndarray) -> np.ndarray:
    """Eigenvalues of a small real symmetric matrix by cyclic Jacobi sweeps.

    Plain-float inner loops; at size 8 they beat array slicing by a wide
    margin and keep the solver dependency-free.
    """
    n = mat.shape[0]
    a = [[float(mat[i, j]) for j in range(n)] for i in range(n)]
    for _ in range(60):
        off = 0.0
        for i in range(n - 1):
            row = a[i]
            for j in range(i + 1, n):
                off += row[j] * row[j]
        if off < 1e-30:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                aij = a[i][j]
                if aij == 0.0:
                    continue
                # classic stable rotation angle
                tau = (a[j][j] - a[i][i]) / (2.0 * aij)
                if abs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(tau * tau + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                a[i][i] -= t * aij
                a[j][j] += t * aij
                a[i][j] = 0.0
                a[j][i] = 0.0
                for k in range(n):
                    if k != i and k != j:
                        aki = a[k][i]
                        akj = a[k][j]
                        a[k][i] = c * aki - s * akj
                        a[i][k] = a[k][i]
                        a[k][j] = s * aki + c * akj
                        a[j][k] = a[k][j]
    return np.array([a[i][i] for i in range(n)])


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Four real eigenvalues of a 4x4 Hermitian matrix, descending.

    Raises ValueError for non-Hermitian input (tolerance 1e-10).  The complex
    problem is lifted to its 8x8 real symmetric embedding whose spectrum is
    the wanted one doubled; every second value of the sorted result is kept.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    a = m.real
    b = m.imag
    embed = np.block([[a, -b], [b, a]])
    embed = 0.5 * (embed + embed.T)
    vals = _jacobi_eigenvalues_symmetric(embed)
    vals = np.sort(vals)[::-1]
    return vals[::2].copy()


def oracle_post_entropy(p: StateParams, theta: float, phi: float) -> float:
    """Post-measurement entropy in bits via the dense-matrix route."""
    rho = post_measured_state(build_density(p), theta, phi)
    vals = hermitian_eigenvalues(rho)
    if np.min(vals) < -EIGENVALUE_CLAMP:
        raise ValueError(f"negative eigenvalue {np.min(vals)} beyond clamp")
    vals = np.clip(vals, 0.0, 1.0)
    return quaternary_entropy(*vals)

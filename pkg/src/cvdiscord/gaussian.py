"""Covariance-matrix representation of multimode Gaussian states.

Quadratures are stacked in the fixed order (X1, Y1, X2, Y2, ...) and
normalized to shot-noise units: a vacuum mode has unit variance in both
quadratures.  Only second moments are tracked; every state here is
zero-mean, so a covariance matrix is a complete description.

All types are immutable values and all operations are pure functions, so
everything in this module is safe to use from concurrent workers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericDomainError

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form Omega in the (X1, Y1, ...) ordering."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def _as_symmetric(matrix, dim, what):
    m = np.asarray(matrix, dtype=float)
    if m.shape != (dim, dim):
        raise ValueError(f"{what} must have shape ({dim}, {dim}), got {m.shape}")
    gap = np.abs(m - m.T).max()
    if gap > SYMMETRY_TOL * max(1.0, np.abs(m).max()):
        raise ValueError(f"{what} is not symmetric (max asymmetry {gap})")
    sym = 0.5 * (m + m.T)
    sym.setflags(write=False)
    return sym


def _det2(m) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _parity(perm) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


_LEIBNIZ4 = [
    ((perm[0], 4 + perm[1], 8 + perm[2], 12 + perm[3]), _parity(perm))
    for perm in itertools.permutations(range(4))
]


def _det4(m) -> float:
    """Exact-cancellation 4x4 determinant (Leibniz sum with exact summation).

    LU-based determinants carry enough roundoff to split the exactly
    degenerate symplectic spectra of the correlated-noise family; the
    24-term sum with math.fsum keeps integer-valued matrices exact.
    """
    v = m.ravel().tolist()
    return math.fsum(
        sign * v[i] * v[j] * v[k] * v[l] for (i, j, k, l), sign in _LEIBNIZ4
    )


@dataclass(frozen=True)
class MultimodeGaussianState:
    """An n-mode zero-mean Gaussian state held as its 2n x 2n covariance."""

    n_modes: int
    cov: np.ndarray

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be a positive integer")
        sym = _as_symmetric(self.cov, 2 * self.n_modes, "covariance matrix")
        object.__setattr__(self, "cov", sym)

    def symplectic_eigenvalues(self) -> np.ndarray:
        """All n symplectic eigenvalues, ascending, from the spectrum of i*Omega*cov."""
        omega = symplectic_form(self.n_modes)
        moduli = np.sort(np.abs(np.linalg.eigvals(1j * omega @ self.cov)))
        # the spectrum comes in +/- pairs; average each pair
        return 0.5 * (moduli[0::2] + moduli[1::2])

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        return bool(self.symplectic_eigenvalues()[0] >= 1.0 - tol)


def vacuum_state(n_modes: int) -> MultimodeGaussianState:
    """n independent vacuum modes: the 2n x 2n identity covariance."""
    if n_modes < 1:
        raise ValueError("n_modes must be a positive integer")
    return MultimodeGaussianState(n_modes, np.eye(2 * n_modes))


@dataclass(frozen=True)
class QuadratureLinearMap:
    """A real 2m x 2n matrix acting on stacked quadrature vectors.

    Covers everything the simulation needs: beam splitters, loss mixing and
    feedforward displacement are all linear in the quadratures.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] % 2 or m.shape[1] % 2:
            raise ValueError(f"map matrix must be 2m x 2n, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_inputs(self) -> int:
        return self.matrix.shape[1] // 2

    @property
    def n_outputs(self) -> int:
        return self.matrix.shape[0] // 2

    @classmethod
    def identity(cls, n_modes: int) -> "QuadratureLinearMap":
        return cls(np.eye(2 * n_modes))

    def compose(self, inner: "QuadratureLinearMap") -> "QuadratureLinearMap":
        """Map equivalent to applying `inner` first and then this map."""
        if inner.n_outputs != self.n_inputs:
            raise ValueError("mode-count mismatch in map composition")
        return QuadratureLinearMap(self.matrix @ inner.matrix)


def _beam_splitter_matrix(t: float, mode_i: int, mode_j: int, n_modes: int) -> np.ndarray:
    c = math.sqrt(t)
    s = math.sqrt(1.0 - t)
    mat = np.eye(2 * n_modes)
    for off in (0, 1):
        ii = 2 * mode_i + off
        jj = 2 * mode_j + off
        mat[ii, ii] = c
        mat[ii, jj] = s
        mat[jj, jj] = c
        mat[jj, ii] = -s
    return mat


def beam_splitter_map(t: float, mode_i: int, mode_j: int, n_modes: int) -> QuadratureLinearMap:
    """Two-mode beam splitter with transmission t on modes (mode_i, mode_j).

    Convention (identical for X and Y):

        X_i' =  sqrt(t) X_i + sqrt(1-t) X_j
        X_j' = -sqrt(1-t) X_i + sqrt(t) X_j

    i.e. the plus sign sits on mode_i's output.  The matrix is orthogonal,
    acts as the identity on all other modes, and is symplectic.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {t}")
    if mode_i == mode_j:
        raise ValueError("beam splitter requires two distinct modes")
    for m in (mode_i, mode_j):
        if not 0 <= m < n_modes:
            raise ValueError(f"mode index {m} out of range for {n_modes} modes")
    return QuadratureLinearMap(_beam_splitter_matrix(t, mode_i, mode_j, n_modes))


def apply_map(state: MultimodeGaussianState, qmap: QuadratureLinearMap) -> MultimodeGaussianState:
    """Congruence transform of the covariance: cov -> M cov M^T."""
    if qmap.n_inputs != state.n_modes:
        raise ValueError(
            f"map expects {qmap.n_inputs} modes, state has {state.n_modes}"
        )
    cov = qmap.matrix @ state.cov @ qmap.matrix.T
    return MultimodeGaussianState(qmap.n_outputs, 0.5 * (cov + cov.T))


def loss_channel(state: MultimodeGaussianState, mode: int, eta: float) -> MultimodeGaussianState:
    """Mix one mode with vacuum on a beam splitter of transmission eta.

    Realized by appending a vacuum ancilla, interfering, and discarding the
    ancilla.  Equivalent closed form: the mode's own 2x2 block V becomes
    eta*V + (1-eta)*I and every cross block with other modes scales by
    sqrt(eta).
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency must lie in [0, 1], got {eta}")
    n = state.n_modes
    if not 0 <= mode < n:
        raise ValueError(f"mode index {mode} out of range for {n} modes")
    grown = np.eye(2 * (n + 1))
    grown[: 2 * n, : 2 * n] = state.cov
    splitter = _beam_splitter_matrix(eta, mode, n, n + 1)
    mixed = splitter @ grown @ splitter.T
    return MultimodeGaussianState(n, mixed[: 2 * n, : 2 * n])


def feedforward_map(measured, target_mode: int, gain: float, n_modes: int) -> QuadratureLinearMap:
    """Displace one mode by a gain-scaled sum of measured quadratures.

    measured is an iterable of (mode, quadrature, sign) with quadrature "x"
    or "y".  The target's X picks up gain * sum(sign * X_mode) over the "x"
    entries and its Y the analogue over the "y" entries.  Displacement by a
    measured photocurrent is linear in the quadratures, so any classical
    feedforward used here is expressible this way.
    """
    if not 0 <= target_mode < n_modes:
        raise ValueError(f"target mode {target_mode} out of range for {n_modes} modes")
    mat = np.eye(2 * n_modes)
    for mode, quad, sign in measured:
        if mode == target_mode:
            raise ValueError("target mode cannot appear in the measured list")
        if not 0 <= mode < n_modes:
            raise ValueError(f"measured mode {mode} out of range for {n_modes} modes")
        if quad not in ("x", "y"):
            raise ValueError(f"quadrature must be 'x' or 'y', got {quad!r}")
        off = 0 if quad == "x" else 1
        mat[2 * target_mode + off, 2 * mode + off] += gain * sign
    return QuadratureLinearMap(mat)


@dataclass(frozen=True)
class TwoModeCovariance:
    """4x4 covariance of a mode pair in block form [[A, C], [C^T, B]]."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _as_symmetric(self.a, 2, "block A"))
        object.__setattr__(self, "b", _as_symmetric(self.b, 2, "block B"))
        c = np.array(self.c, dtype=float)
        if c.shape != (2, 2):
            raise ValueError(f"block C must have shape (2, 2), got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_matrix(cls, matrix) -> "TwoModeCovariance":
        m = _as_symmetric(matrix, 4, "two-mode covariance")
        return cls(m[:2, :2], m[2:, 2:], m[:2, 2:])

    @property
    def matrix(self) -> np.ndarray:
        m = np.empty((4, 4))
        m[:2, :2] = self.a
        m[2:, 2:] = self.b
        m[:2, 2:] = self.c
        m[2:, :2] = self.c.T
        return m

    def swap_modes(self) -> "TwoModeCovariance":
        """The same state with the two modes exchanged.

        Discord is asymmetric (the second mode is the measured one), so
        callers that want the other direction swap explicitly.
        """
        return TwoModeCovariance(self.b, self.a, self.c.T)

    def to_state(self) -> MultimodeGaussianState:
        return MultimodeGaussianState(2, self.matrix)


def extract_two_mode(state: MultimodeGaussianState, mode_i: int, mode_j: int) -> TwoModeCovariance:
    """Reduced two-mode covariance of (mode_i, mode_j), in that order."""
    n = state.n_modes
    if mode_i == mode_j:
        raise ValueError("mode indices must be distinct")
    for m in (mode_i, mode_j):
        if not 0 <= m < n:
            raise ValueError(f"mode index {m} out of range for {n} modes")
    ii = [2 * mode_i, 2 * mode_i + 1]
    jj = [2 * mode_j, 2 * mode_j + 1]
    cov = state.cov
    return TwoModeCovariance(
        cov[np.ix_(ii, ii)], cov[np.ix_(jj, jj)], cov[np.ix_(ii, jj)]
    )


def symplectic_nu_pair(delta: float, det_sigma: float) -> tuple[float, float]:
    """Closed-form two-mode symplectic eigenvalues from Delta and det(sigma).

    nu_pm = sqrt((Delta +- sqrt(Delta^2 - 4 det sigma)) / 2).  A discriminant
    that is negative by no more than roundoff (1e-9 scaled by Delta^2) is
    clamped to zero: the symmetric noise family is exactly degenerate there.
    """
    disc = delta * delta - 4.0 * det_sigma
    if disc < -1e-9 * max(1.0, delta * delta):
        raise NumericDomainError(
            f"negative symplectic discriminant {disc} (delta={delta}, det={det_sigma})"
        )
    root = math.sqrt(max(disc, 0.0))
    nu_minus = math.sqrt(max((delta - root) / 2.0, 0.0))
    nu_plus = math.sqrt(max((delta + root) / 2.0, 0.0))
    return nu_minus, nu_plus


def min_symplectic_eigenvalue(sigma: TwoModeCovariance) -> float:
    """Smallest symplectic eigenvalue; >= 1 certifies a physical state."""
    delta = _det2(sigma.a) + _det2(sigma.b) + 2.0 * _det2(sigma.c)
    return symplectic_nu_pair(delta, _det4(sigma.matrix))[0]

"""Gaussian quantum discord and related correlation measures.

Works on two-mode covariance matrices in shot-noise units.  The measured
subsystem is always the second mode (B); use TwoModeCovariance.swap_modes()
to measure the first mode instead.  All logarithms are base 2, so every
quantity is in bits.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .exceptions import NumericDomainError
from .gaussian import TwoModeCovariance, _det2, _det4, symplectic_nu_pair

ENTROPY_ARG_TOL = 1e-9
_VACUUM_B_TOL = 1e-12
_SQRT_EPS = math.sqrt(sys.float_info.epsilon)


def entropy_f(x: float) -> float:
    """Entropy (bits) of a thermal mode with symplectic eigenvalue x.

    f(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), continuously
    extended by f(1) = 0.  Arguments within 1e-9 below 1 are clamped to 1;
    anything lower is a hard error rather than a silent clamp, so genuinely
    unphysical inputs are not masked as roundoff.
    """
    if x < 1.0 - ENTROPY_ARG_TOL:
        raise NumericDomainError(f"entropy argument {x} is below 1")
    if x <= 1.0:
        return 0.0
    up = (x + 1.0) / 2.0
    dn = (x - 1.0) / 2.0
    return up * math.log2(up) - dn * math.log2(dn)


@dataclass(frozen=True)
class SymplecticInvariants:
    """Local-symplectic invariants of a two-mode covariance matrix.

    i1 = det A, i2 = det B, i3 = det C, i4 = det sigma and
    delta = i1 + i2 + 2*i3.
    """

    i1: float
    i2: float
    i3: float
    i4: float
    delta: float


def symplectic_invariants(sigma: TwoModeCovariance) -> SymplecticInvariants:
    i1 = _det2(sigma.a)
    i2 = _det2(sigma.b)
    i3 = _det2(sigma.c)
    i4 = _det4(sigma.matrix)
    return SymplecticInvariants(i1, i2, i3, i4, i1 + i2 + 2.0 * i3)


def symplectic_eigenvalues(inv: SymplecticInvariants) -> tuple[float, float]:
    """(nu_minus, nu_plus) from the closed form on the invariants."""
    return symplectic_nu_pair(inv.delta, inv.i4)


def _clamped_sqrt(value: float, scale: float, what: str) -> float:
    if value < 0.0:
        if value < -1e-9 * max(1.0, scale):
            raise NumericDomainError(f"negative {what} {value}")
        value = 0.0
    return math.sqrt(value)


def e_min(inv: SymplecticInvariants) -> tuple[float, str]:
    """Minimum conditional determinant of mode A over Gaussian measurements of B.

    Returns (value, branch) where branch "a" applies when
    (i4 - i1*i2)^2 <= i3^2 (i2 + 1)(i1 + i4) (ties included) and "b"
    otherwise.  Branch "a" is undefined for i2 -> 1 (its denominator is
    (i2-1)^2); that case is a hard error here, and the top-level discord
    routine short-circuits it instead (an uncorrelated vacuum B forces
    zero discord).
    """
    i1, i2, i3, i4 = inv.i1, inv.i2, inv.i3, inv.i4
    lhs = (i4 - i1 * i2) ** 2
    rhs = i3 * i3 * (i2 + 1.0) * (i1 + i4)
    if lhs <= rhs:
        if i2 <= 1.0 + _VACUUM_B_TOL:
            raise NumericDomainError(
                f"degenerate denominator: det B = {i2} is too close to 1"
            )
        part = (i2 - 1.0) * (i4 - i1)
        root = _clamped_sqrt(i3 * i3 + part, abs(i3 * i3) + abs(part), "square-root argument")
        value = (2.0 * i3 * i3 + part + 2.0 * abs(i3) * root) / (i2 - 1.0) ** 2
        return value, "a"
    inner = i3 ** 4 + lhs - 2.0 * i3 * i3 * (i4 + i1 * i2)
    root = _clamped_sqrt(inner, abs(i3 ** 4) + lhs, "square-root argument")
    value = (i1 * i2 - i3 * i3 + i4 - root) / (2.0 * i2)
    return value, "b"


@dataclass(frozen=True)
class DiscordBreakdown:
    """Discord of a two-mode Gaussian state plus every intermediate quantity."""

    discord: float
    mutual_information: float
    classical_correlation: float
    nu_minus: float
    nu_plus: float
    e_min: float
    branch: str
    invariants: SymplecticInvariants


def _roundoff_gate(inv: SymplecticInvariants) -> float:
    """Tolerance below 1 that mere roundoff can produce for this state.

    Degenerate symplectic spectra (pure and symmetric-noise states) turn the
    representation rounding of the covariance entries into an sqrt(eps)
    perturbation of the eigenvalues, scaled by the invariant magnitude; a
    fixed 1e-9 gate would spuriously reject pure two-mode squeezed states of
    moderate squeezing.
    """
    scale = max(
        1.0, abs(inv.i1), abs(inv.i2), abs(inv.i3),
        abs(inv.delta), math.sqrt(abs(inv.i4)),
    )
    return max(ENTROPY_ARG_TOL, 4.0 * _SQRT_EPS * scale)


def gaussian_discord(sigma: TwoModeCovariance) -> DiscordBreakdown:
    """Gaussian quantum discord with the measurement on mode B.

    D = f(sqrt(i2)) - f(nu_minus) - f(nu_plus) + f(sqrt(e_min)); the mutual
    information is f(sqrt(i1)) + f(sqrt(i2)) - f(nu_minus) - f(nu_plus) and
    the one-way classical correlation is their difference.  Raises
    NumericDomainError when the input is unphysical, i.e. nu_minus lies
    below 1 by more than the state's roundoff allowance; values within the
    allowance are reported as exactly 1.
    """
    inv = symplectic_invariants(sigma)
    nu_minus, nu_plus = symplectic_eigenvalues(inv)
    gate = _roundoff_gate(inv)

    def entropy_arg(x: float, what: str) -> float:
        if x < 1.0 - gate:
            raise NumericDomainError(f"unphysical covariance: {what} = {x} < 1")
        return max(x, 1.0)

    nu_minus = entropy_arg(nu_minus, "nu_minus")
    nu_plus = max(entropy_arg(nu_plus, "nu_plus"), nu_minus)
    if inv.i2 <= 1.0 + _VACUUM_B_TOL:
        # mode B carries nothing beyond vacuum, so measuring it reveals
        # nothing about A: the conditional determinant stays at det A
        e_value, branch = inv.i1, "a"
    else:
        e_value, branch = e_min(inv)
    s_b = entropy_f(entropy_arg(math.sqrt(inv.i2), "sqrt(det B)"))
    s_a = entropy_f(entropy_arg(math.sqrt(inv.i1), "sqrt(det A)"))
    joint = entropy_f(nu_minus) + entropy_f(nu_plus)
    root_e = _clamped_sqrt(e_value, abs(e_value), "conditional determinant")
    conditional = entropy_f(entropy_arg(root_e, "conditional determinant"))
    discord = s_b - joint + conditional
    mutual = s_a + s_b - joint
    return DiscordBreakdown(
        discord=discord,
        mutual_information=mutual,
        classical_correlation=mutual - discord,
        nu_minus=nu_minus,
        nu_plus=nu_plus,
        e_min=e_value,
        branch=branch,
        invariants=inv,
    )


def ppt_min_eigenvalue(sigma: TwoModeCovariance) -> float:
    """Minimum symplectic eigenvalue after partial transposition.

    Partial transposition flips the sign of i3 in delta.  A value >= 1
    certifies the state positive under partial transpose, which for two-mode
    Gaussian states is equivalent to separability; < 1 certifies
    entanglement.
    """
    inv = symplectic_invariants(sigma)
    delta_tilde = inv.i1 + inv.i2 - 2.0 * inv.i3
    return symplectic_nu_pair(delta_tilde, inv.i4)[0]

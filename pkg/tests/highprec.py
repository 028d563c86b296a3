"""High-precision and brute-force oracles used to freeze expected values.

Everything here is deliberately independent of the package under test: the
discord pipeline is re-derived from scratch with 60-digit mpmath
arithmetic, and the conditional-determinant minimum is additionally checked
by direct numerical minimization over Gaussian measurements.
"""

import math

import mpmath
import numpy as np

mpmath.mp.dps = 60


def f_entropy(x):
    x = mpmath.mpf(x)
    assert x > 1 - mpmath.mpf("1e-50"), f"entropy argument {x} below 1"
    if x <= 1:  # representation dust around the vacuum point
        return mpmath.mpf(0)
    up = (x + 1) / 2
    dn = (x - 1) / 2
    return up * mpmath.log(up, 2) - dn * mpmath.log(dn, 2)


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def breakdown(sigma):
    """Full discord pipeline on a 4x4 matrix (rows of floats or mpf)."""
    m = mpmath.matrix(sigma)
    a = mpmath.matrix([[m[0, 0], m[0, 1]], [m[1, 0], m[1, 1]]])
    b = mpmath.matrix([[m[2, 2], m[2, 3]], [m[3, 2], m[3, 3]]])
    c = mpmath.matrix([[m[0, 2], m[0, 3]], [m[1, 2], m[1, 3]]])
    i1, i2, i3 = _det2(a), _det2(b), _det2(c)
    i4 = mpmath.det(m)
    delta = i1 + i2 + 2 * i3
    disc = delta ** 2 - 4 * i4
    if abs(disc) < mpmath.mpf("1e-40") * max(1, delta ** 2):
        disc = mpmath.mpf(0)
    nu_minus = mpmath.sqrt((delta - mpmath.sqrt(disc)) / 2)
    nu_plus = mpmath.sqrt((delta + mpmath.sqrt(disc)) / 2)
    lhs = (i4 - i1 * i2) ** 2
    rhs = i3 ** 2 * (i2 + 1) * (i1 + i4)
    # ties (exact for pure states) resolve to branch a; tolerate the last
    # couple of working-precision digits when comparing
    tie_slack = mpmath.mpf("1e-55") * max(1, abs(lhs), abs(rhs))
    if lhs <= rhs + tie_slack:
        branch = "a"
        part = (i2 - 1) * (i4 - i1)
        inner = i3 ** 2 + part
        if inner < 0:
            inner = mpmath.mpf(0)
        e_value = (
            2 * i3 ** 2 + part + 2 * abs(i3) * mpmath.sqrt(inner)
        ) / (i2 - 1) ** 2
    else:
        branch = "b"
        inner = i3 ** 4 + lhs - 2 * i3 ** 2 * (i4 + i1 * i2)
        if inner < 0:  # exactly zero for pure states, up to representation error
            inner = mpmath.mpf(0)
        e_value = (i1 * i2 - i3 ** 2 + i4 - mpmath.sqrt(inner)) / (2 * i2)
    joint = f_entropy(nu_minus) + f_entropy(nu_plus)
    discord = f_entropy(mpmath.sqrt(i2)) - joint + f_entropy(mpmath.sqrt(e_value))
    mutual = f_entropy(mpmath.sqrt(i1)) + f_entropy(mpmath.sqrt(i2)) - joint
    return {
        "i1": i1, "i2": i2, "i3": i3, "i4": i4, "delta": delta,
        "nu_minus": nu_minus, "nu_plus": nu_plus,
        "branch": branch, "e_min": e_value,
        "discord": discord, "mutual_information": mutual,
        "classical_correlation": mutual - discord,
    }


def discord_value(sigma) -> float:
    return float(breakdown(sigma)["discord"])


def symmetric(v):
    return [[1 + v, 0, v, 0], [0, 1 + v, 0, -v], [v, 0, 1 + v, 0], [0, -v, 0, 1 + v]]


def asymmetric(v, t):
    bv = 1 + t * t * v
    return [
        [1 + v, 0, t * v, 0],
        [0, 1 + v, 0, -t * v],
        [t * v, 0, bv, 0],
        [0, -t * v, 0, bv],
    ]


def epr(r):
    ve = mpmath.cosh(2 * mpmath.mpf(r))
    c = mpmath.sinh(2 * mpmath.mpf(r))
    return [[ve, 0, c, 0], [0, ve, 0, -c], [c, 0, ve, 0], [0, -c, 0, ve]]


def transfer_discordant(v_a, v_b, g):
    v_a, v_b, g = mpmath.mpf(v_a), mpmath.mpf(v_b), mpmath.mpf(g)
    v_out = 1 + 2 * g ** 2 + g ** 2 * v_a + (1 - g) ** 2 * v_b
    c = g * v_a
    return [
        [1 + v_a, 0, c, 0],
        [0, 1 + v_a, 0, -c],
        [c, 0, v_out, 0],
        [0, -c, 0, v_out],
    ]


def transfer_epr(v_a, r, g):
    v_a, r, g = mpmath.mpf(v_a), mpmath.mpf(r), mpmath.mpf(g)
    ve = mpmath.cosh(2 * r)
    corr = mpmath.sinh(2 * r)
    v_out = (g ** 2 + 1) * ve - 2 * g * corr + g ** 2 * (1 + v_a)
    c = g * v_a
    return [
        [1 + v_a, 0, c, 0],
        [0, 1 + v_a, 0, -c],
        [c, 0, v_out, 0],
        [0, -c, 0, v_out],
    ]


def brute_force_e_min(sigma: np.ndarray) -> float:
    """Direct minimum of det(conditional A) over pure Gaussian measurements of B.

    The measurement ansatz covariance is R(theta) diag(s, 1/s) R(theta)^T;
    the conditional covariance of mode A is A - C (B + tau)^-1 C^T.  Scans a
    dense (log s, theta) grid and polishes around the best cell.
    """
    a = sigma[:2, :2]
    b = sigma[2:, 2:]
    c = sigma[:2, 2:]

    def det_conditional(log_s, theta):
        s = math.exp(log_s)
        rot = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        tau = rot @ np.diag([s, 1.0 / s]) @ rot.T
        eps = a - c @ np.linalg.inv(b + tau) @ c.T
        return float(np.linalg.det(eps))

    best = math.inf
    best_point = (0.0, 0.0)
    for log_s in np.linspace(-12.0, 12.0, 241):
        for theta in np.linspace(0.0, math.pi / 2, 61):
            value = det_conditional(log_s, theta)
            if value < best:
                best, best_point = value, (log_s, theta)
    span_s, span_t = 0.2, math.pi / 120
    center = best_point
    for _ in range(40):
        for log_s in np.linspace(center[0] - span_s, center[0] + span_s, 9):
            for theta in np.linspace(center[1] - span_t, center[1] + span_t, 9):
                value = det_conditional(log_s, theta)
                if value < best:
                    best, center = value, (log_s, theta)
        span_s *= 0.5
        span_t *= 0.5
    return best

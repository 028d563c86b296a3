"""Deterministic maximizers: coarse grid scan plus golden-section refinement.

The objectives here are cheap, smooth and one- or two-dimensional, and the
figure numbers must reproduce exactly, so a fixed grid followed by
golden-section refinement beats any stochastic or gradient scheme.  Every
routine is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discord import gaussian_discord
from .exceptions import EvaluationError
from .protocol import make_asymmetric_discordant

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_GOLDEN_ITERATIONS = 500


@dataclass(frozen=True)
class Optimum:
    location: tuple[float, ...]
    value: float
    evaluations: int
    converged: bool


class _Tracked:
    """Wraps an objective: counts calls, rejects non-finite values."""

    def __init__(self, objective):
        self._objective = objective
        self.evaluations = 0

    def __call__(self, *point):
        value = float(self._objective(*point))
        self.evaluations += 1
        if not math.isfinite(value):
            raise EvaluationError(
                f"objective returned {value} at {point}", point=point
            )
        return value


def _golden_refine(f, lo, hi, tol):
    """Golden-section maximization of f on [lo, hi]; returns (x, f(x), converged)."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_v = (c, fc) if fc >= fd else (d, fd)
    for _ in range(_MAX_GOLDEN_ITERATIONS):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
            if fc > best_v:
                best_x, best_v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
            if fd > best_v:
                best_x, best_v = d, fd
    return best_x, best_v, (b - a) <= tol


def _scan_and_refine(f, lo, hi, tol, points, incumbent=None):
    """Grid scan of f then golden refinement around the best grid cell.

    incumbent is an optional (x, value) candidate kept if nothing beats it.
    Returns (x, value, converged).
    """
    xs = np.linspace(lo, hi, points)
    values = [f(x) for x in xs]
    best = int(np.argmax(values))
    best_x, best_v = float(xs[best]), values[best]
    a = float(xs[max(best - 1, 0)])
    b = float(xs[min(best + 1, points - 1)])
    refined_x, refined_v, converged = _golden_refine(f, a, b, tol)
    if refined_v > best_v:
        best_x, best_v = refined_x, refined_v
    if incumbent is not None and incumbent[1] > best_v:
        best_x, best_v = incumbent
    return best_x, best_v, converged


def maximize_scalar(objective, lo: float, hi: float, tol: float = 1e-5,
                    coarse_points: int = 201) -> Optimum:
    """Maximize a scalar function on [lo, hi].

    A coarse scan over coarse_points equally spaced abscissas brackets the
    best cell, then golden-section refinement shrinks the bracket below tol.
    For a unimodal objective the location is within tol of the true
    maximizer; in every case the returned value is at least the best coarse
    grid value.  Raises EvaluationError if the objective returns a
    non-finite value.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if coarse_points < 2:
        raise ValueError("coarse_points must be >= 2")
    f = _Tracked(objective)
    x, value, converged = _scan_and_refine(f, lo, hi, tol, coarse_points)
    return Optimum((x,), value, f.evaluations, converged)


def maximize_2d(objective, box, tol: float = 1e-5, coarse_points: int = 101,
                line_points: int = 51, max_sweeps: int = 60) -> Optimum:
    """Maximize a two-argument function over a rectangular box.

    Starts from the best point of a coarse_points x coarse_points grid, then
    alternates golden-section line maximizations along each coordinate until
    a full sweep moves both coordinates by less than tol.  Line searches
    keep the incumbent, so the tracked value never decreases.
    """
    (lo1, hi1), (lo2, hi2) = box
    if not (lo1 < hi1 and lo2 < hi2):
        raise ValueError(f"invalid box {box}")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    f = _Tracked(objective)

    xs = np.linspace(lo1, hi1, coarse_points)
    ys = np.linspace(lo2, hi2, coarse_points)
    best_v = -math.inf
    best_x = best_y = 0.0
    for x in xs:
        for y in ys:
            v = f(x, y)
            if v > best_v:
                best_x, best_y, best_v = float(x), float(y), v

    converged = False
    for _ in range(max_sweeps):
        new_x, best_v, _ = _scan_and_refine(
            lambda u: f(u, best_y), lo1, hi1, tol, line_points,
            incumbent=(best_x, best_v),
        )
        new_y, best_v, _ = _scan_and_refine(
            lambda u: f(new_x, u), lo2, hi2, tol, line_points,
            incumbent=(best_y, best_v),
        )
        moved = max(abs(new_x - best_x), abs(new_y - best_y))
        best_x, best_y = new_x, new_y
        if moved < tol:
            converged = True
            break
    return Optimum((best_x, best_y), best_v, f.evaluations, converged)


def optimal_attenuation(v: float, t_range=(0.0, 1.0), tol: float = 1e-5) -> Optimum:
    """Attenuation maximizing the discord of the asymmetric noise state.

    For small noise the maximum sits at t = 1 (asymmetry does not help);
    for large noise the optimum is strictly interior.
    """
    if v < 0.0:
        raise ValueError(f"noise variance must be >= 0, got {v}")
    lo, hi = t_range

    def objective(t):
        return gaussian_discord(make_asymmetric_discordant(v, t)).discord

    return maximize_scalar(objective, lo, hi, tol=tol)

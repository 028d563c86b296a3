"""Monte Carlo estimation of the protocol's output covariance.

Every state in the protocol has a Gaussian positive phase-space
distribution and every operation is linear in the quadratures, so the whole
run can be sampled classically: draw shot noise, modulation signals and
loss vacua per shot, push them through the linear relations, and average.
This gives a statistical oracle that is independent of both the closed
forms and the covariance engine.

Randomness comes from numpy's Philox generator (a counter-based algorithm)
keyed directly with the seed, and samples accumulate in fixed-size chunks,
so a given (scenario, n_samples, seed) triple reproduces bit-identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import TwoModeCovariance
from .protocol import DiscordantAncilla, EprAncilla, TransferScenario

_CHUNK = 1 << 17
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SampledCovariance:
    """Empirical (a, d') covariance with per-entry standard errors."""

    estimate: TwoModeCovariance
    standard_errors: np.ndarray
    n_samples: int
    seed: int


def _epr_cholesky(r: float):
    ve = math.cosh(2.0 * r)
    corr = math.sinh(2.0 * r)
    lx = np.linalg.cholesky(np.array([[ve, corr], [corr, ve]]))
    ly = np.linalg.cholesky(np.array([[ve, -corr], [-corr, ve]]))
    return lx, ly


def _sample_chunk(scenario: TransferScenario, rng, m: int) -> np.ndarray:
    """One chunk of m protocol shots; returns the 4 x m output quadratures."""
    eff = scenario.efficiencies
    g = scenario.gain
    std = rng.standard_normal

    # station one: two coherent modes sharing classical noise of variance v_a
    xa, ya, xb, yb = std(m), std(m), std(m), std(m)
    amp = math.sqrt(scenario.v_a) * std(m)
    ph = math.sqrt(scenario.v_a) * std(m)
    xa = xa + amp
    xb = xb + amp
    ya = ya + ph
    yb = yb - ph

    ancilla = scenario.ancilla
    if isinstance(ancilla, DiscordantAncilla):
        xc, yc, xd, yd = std(m), std(m), std(m), std(m)
        amp_b = math.sqrt(ancilla.v_b) * std(m)
        ph_b = math.sqrt(ancilla.v_b) * std(m)
        xc = xc + amp_b
        xd = xd + amp_b
        yc = yc + ph_b
        yd = yd - ph_b
    else:
        lx, ly = _epr_cholesky(ancilla.r)
        z1, z2, z3, z4 = std(m), std(m), std(m), std(m)
        xc = lx[0, 0] * z1
        xd = lx[1, 0] * z1 + lx[1, 1] * z2
        yc = ly[0, 0] * z3
        yd = ly[1, 0] * z3 + ly[1, 1] * z4

    # detection losses always consume their vacuum draws, so the random
    # stream layout does not depend on the efficiency values
    xa = math.sqrt(eff.eta_a) * xa + math.sqrt(1.0 - eff.eta_a) * std(m)
    ya = math.sqrt(eff.eta_a) * ya + math.sqrt(1.0 - eff.eta_a) * std(m)

    xf = (xb - xc) / _SQRT2
    ye = (yb + yc) / _SQRT2
    xf = math.sqrt(eff.eta_f) * xf + math.sqrt(1.0 - eff.eta_f) * std(m)
    ye = math.sqrt(eff.eta_e) * ye + math.sqrt(1.0 - eff.eta_e) * std(m)

    xd = xd + _SQRT2 * g * xf
    yd = yd + _SQRT2 * g * ye
    xd = math.sqrt(eff.eta_d) * xd + math.sqrt(1.0 - eff.eta_d) * std(m)
    yd = math.sqrt(eff.eta_d) * yd + math.sqrt(1.0 - eff.eta_d) * std(m)

    return np.stack([xa, ya, xd, yd])


def sample_transfer(scenario: TransferScenario, n_samples: int, seed: int) -> SampledCovariance:
    """Estimate the output covariance from n_samples protocol shots.

    All states are zero-mean, so the estimator is the plain average of
    quadrature products; its standard error per entry is the sample
    standard deviation of those products over sqrt(n_samples).
    """
    if n_samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {n_samples}")
    rng = np.random.Generator(np.random.Philox(key=seed))
    prod_sum = np.zeros((4, 4))
    prod_sq_sum = np.zeros((4, 4))
    remaining = n_samples
    while remaining > 0:
        m = min(_CHUNK, remaining)
        v = _sample_chunk(scenario, rng, m)
        products = v[:, None, :] * v[None, :, :]
        prod_sum += products.sum(axis=2)
        prod_sq_sum += (products * products).sum(axis=2)
        remaining -= m
    # symmetric by construction: average the accumulated matrix with its
    # transpose to make the floating-point result exactly symmetric
    mean = 0.5 * (prod_sum + prod_sum.T) / n_samples
    variance = np.maximum(prod_sq_sum / n_samples - (prod_sum / n_samples) ** 2, 0.0)
    errors = 0.5 * (np.sqrt(variance) + np.sqrt(variance).T) / math.sqrt(n_samples)
    errors.setflags(write=False)
    return SampledCovariance(
        estimate=TwoModeCovariance.from_matrix(mean),
        standard_errors=errors,
        n_samples=n_samples,
        seed=seed,
    )


def deviation_in_standard_errors(sampled: SampledCovariance,
                                 reference: TwoModeCovariance) -> float:
    """Largest entrywise |estimate - reference| in units of the standard error.

    Entries whose standard error is zero count as zero deviation when they
    match the reference exactly and as infinite otherwise.
    """
    dev = np.abs(sampled.estimate.matrix - reference.matrix)
    se = sampled.standard_errors
    with np.errstate(divide="ignore", invalid="ignore"):
        units = np.where(se > 0.0, dev / se, np.where(dev == 0.0, 0.0, np.inf))
    return float(units.max())

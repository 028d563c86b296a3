"""Input-state factories and the measure-and-displace transfer protocol.

The protocol couples two remote stations that never interact directly.
Station one holds a correlated pair (a, b) with noise variance v_a; station
two holds an ancilla pair (c, d), either another correlated-noise pair or a
two-mode squeezed (EPR) pair.  Modes b and c interfere on a balanced beam
splitter, the X quadrature of the difference output and the Y quadrature of
the sum output are homodyne-detected, and the scaled photocurrents displace
mode d.  The result is returned as the reduced covariance of (a, d').

Closed forms exist for perfect detection; the four-mode engine built from
the gaussian primitives is the normative implementation when any detection
efficiency is below one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .discord import gaussian_discord
from .gaussian import (
    MultimodeGaussianState,
    TwoModeCovariance,
    apply_map,
    beam_splitter_map,
    extract_two_mode,
    feedforward_map,
    loss_channel,
)

_SQRT2 = math.sqrt(2.0)


def _diag(x: float, y: float) -> np.ndarray:
    return np.array([[x, 0.0], [0.0, y]])


def make_symmetric_discordant(v: float) -> TwoModeCovariance:
    """Two coherent modes carrying the same correlated classical noise.

    X quadratures share noise of variance v, Y quadratures anti-share it:
    A = B = diag(1+v, 1+v), C = diag(v, -v).  Separable for every v >= 0.
    """
    if v < 0.0:
        raise ValueError(f"noise variance must be >= 0, got {v}")
    return TwoModeCovariance(_diag(1.0 + v, 1.0 + v), _diag(1.0 + v, 1.0 + v), _diag(v, -v))


def make_asymmetric_discordant(v: float, t: float) -> TwoModeCovariance:
    """Correlated-noise pair with the second mode's modulation attenuated by t.

    A = diag(1+v, 1+v), B = diag(1+t^2 v, 1+t^2 v), C = diag(t v, -t v).
    t = 1 reproduces the symmetric state, t = 0 a product state.
    """
    if v < 0.0:
        raise ValueError(f"noise variance must be >= 0, got {v}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"attenuation must lie in [0, 1], got {t}")
    tv = t * v
    return TwoModeCovariance(
        _diag(1.0 + v, 1.0 + v),
        _diag(1.0 + t * tv, 1.0 + t * tv),
        _diag(tv, -tv),
    )


def make_epr(r: float) -> TwoModeCovariance:
    """Two-mode squeezed vacuum with squeezing parameter r.

    A = B = diag(ve, ve) with ve = cosh(2r) and C = diag(+c, -c) with
    c = sqrt(ve^2 - 1) = sinh(2r).  Pure for every r; entangled for r > 0.
    """
    if r < 0.0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    ve = math.cosh(2.0 * r)
    corr = math.sinh(2.0 * r)
    return TwoModeCovariance(_diag(ve, ve), _diag(ve, ve), _diag(corr, -corr))


def attenuate_both_modes(sigma: TwoModeCovariance, t1: float, t2: float) -> TwoModeCovariance:
    """Beam-splitter loss with transmissions t1, t2 on the two modes."""
    for t in (t1, t2):
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"transmission must lie in [0, 1], got {t}")
    eye = np.eye(2)
    return TwoModeCovariance(
        t1 * sigma.a + (1.0 - t1) * eye,
        t2 * sigma.b + (1.0 - t2) * eye,
        math.sqrt(t1 * t2) * sigma.c,
    )


@dataclass(frozen=True)
class DiscordantAncilla:
    """Ancilla pair prepared as a correlated-noise state with variance v_b."""

    v_b: float

    def __post_init__(self):
        if self.v_b < 0.0:
            raise ValueError(f"ancilla noise variance must be >= 0, got {self.v_b}")

    def covariance(self) -> TwoModeCovariance:
        return make_symmetric_discordant(self.v_b)


@dataclass(frozen=True)
class EprAncilla:
    """Ancilla pair prepared as a two-mode squeezed vacuum with parameter r."""

    r: float

    def __post_init__(self):
        if self.r < 0.0:
            raise ValueError(f"squeezing parameter must be >= 0, got {self.r}")

    def covariance(self) -> TwoModeCovariance:
        return make_epr(self.r)


Ancilla = DiscordantAncilla | EprAncilla


@dataclass(frozen=True)
class Efficiencies:
    """Detection efficiencies on modes a, e (sum), f (difference) and d'."""

    eta_a: float = 1.0
    eta_e: float = 1.0
    eta_f: float = 1.0
    eta_d: float = 1.0

    def __post_init__(self):
        for name in ("eta_a", "eta_e", "eta_f", "eta_d"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")

    @classmethod
    def uniform(cls, eta: float) -> "Efficiencies":
        return cls(eta, eta, eta, eta)

    @property
    def all_unit(self) -> bool:
        return self.eta_a == self.eta_e == self.eta_f == self.eta_d == 1.0


@dataclass(frozen=True)
class TransferScenario:
    """Complete parameter record for one protocol run."""

    v_a: float
    ancilla: Ancilla
    gain: float
    efficiencies: Efficiencies = field(default_factory=Efficiencies)

    def __post_init__(self):
        if self.v_a < 0.0:
            raise ValueError(f"v_a must be >= 0, got {self.v_a}")


def transfer_with_discordant_closed_form(v_a: float, v_b: float, g: float) -> TwoModeCovariance:
    """Output covariance for a correlated-noise ancilla and perfect detection.

    A' = diag(1+v_a), C' = diag(g v_a, -g v_a) and B' = diag(v_out) with
    v_out = 1 + 2g^2 + g^2 v_a + (1-g)^2 v_b.  At g = 1 the ancilla noise
    cancels exactly and v_out = 3 + v_a.
    """
    if v_a < 0.0 or v_b < 0.0:
        raise ValueError("noise variances must be >= 0")
    v_out = 1.0 + 2.0 * g * g + g * g * v_a + (1.0 - g) ** 2 * v_b
    return TwoModeCovariance(
        _diag(1.0 + v_a, 1.0 + v_a), _diag(v_out, v_out), _diag(g * v_a, -g * v_a)
    )


def transfer_with_epr_closed_form(v_a: float, r: float, g: float) -> TwoModeCovariance:
    """Output covariance for an EPR ancilla and perfect detection.

    Same A' and C' as the correlated-noise case; B' = diag(v_out) with
    v_out = (g^2+1) ve - 2 g sqrt(ve^2-1) + g^2 (1 + v_a), ve = cosh(2r).
    """
    if v_a < 0.0 or r < 0.0:
        raise ValueError("v_a and r must be >= 0")
    ve = math.cosh(2.0 * r)
    corr = math.sinh(2.0 * r)
    v_out = (g * g + 1.0) * ve - 2.0 * g * corr + g * g * (1.0 + v_a)
    return TwoModeCovariance(
        _diag(1.0 + v_a, 1.0 + v_a), _diag(v_out, v_out), _diag(g * v_a, -g * v_a)
    )


def transfer_closed_form(scenario: TransferScenario) -> TwoModeCovariance:
    """Closed-form output; only valid for unit detection efficiencies."""
    if not scenario.efficiencies.all_unit:
        raise ValueError("no closed form with detection losses; use the engine")
    if isinstance(scenario.ancilla, DiscordantAncilla):
        return transfer_with_discordant_closed_form(
            scenario.v_a, scenario.ancilla.v_b, scenario.gain
        )
    return transfer_with_epr_closed_form(scenario.v_a, scenario.ancilla.r, scenario.gain)


def transfer_via_engine(scenario: TransferScenario) -> TwoModeCovariance:
    """Run the protocol step by step on the four-mode covariance.

    Modes are ordered (a, b, c, d).  Steps: loss eta_a on a; balanced beam
    splitter putting the difference mode (b-c)/sqrt(2) at slot 1 and the sum
    mode at slot 2; losses eta_f, eta_e on those detected modes; feedforward
    X_d += sqrt(2) g X_f and Y_d += sqrt(2) g Y_e; loss eta_d on d'; extract
    the (a, d') pair.  With all efficiencies 1 this equals the closed form.
    """
    eff = scenario.efficiencies
    g = scenario.gain
    alice = make_symmetric_discordant(scenario.v_a)
    bob = scenario.ancilla.covariance()
    cov = np.zeros((8, 8))
    cov[:4, :4] = alice.matrix
    cov[4:, 4:] = bob.matrix
    state = MultimodeGaussianState(4, cov)

    state = loss_channel(state, 0, eff.eta_a)
    # plus port on mode 2 puts (b+c)/sqrt(2) there and (b-c)/sqrt(2) on mode 1
    state = apply_map(state, beam_splitter_map(0.5, 2, 1, 4))
    state = loss_channel(state, 1, eff.eta_f)
    state = loss_channel(state, 2, eff.eta_e)
    feedforward = feedforward_map(
        [(1, "x", 1.0), (2, "y", 1.0)], target_mode=3, gain=_SQRT2 * g, n_modes=4
    )
    state = apply_map(state, feedforward)
    state = loss_channel(state, 3, eff.eta_d)
    return extract_two_mode(state, 0, 3)


def transfer_output(scenario: TransferScenario, engine: bool = False) -> TwoModeCovariance:
    """Output covariance; closed form when possible unless engine is forced."""
    if engine or not scenario.efficiencies.all_unit:
        return transfer_via_engine(scenario)
    return transfer_closed_form(scenario)


def transfer_discord(scenario: TransferScenario, engine: bool = False) -> float:
    """Discord of the (a, d') output pair."""
    return gaussian_discord(transfer_output(scenario, engine=engine)).discord

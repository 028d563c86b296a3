import math

import numpy as np
import pytest

from cvdiscord.gaussian import TwoModeCovariance, symplectic_form
from cvdiscord.protocol import (
    DiscordantAncilla,
    EprAncilla,
    TransferScenario,
    attenuate_both_modes,
    make_asymmetric_discordant,
    make_epr,
    make_symmetric_discordant,
    transfer_output,
)


def random_physical_two_mode(rng) -> TwoModeCovariance:
    """A generic physical two-mode covariance with nu_minus >= 1."""
    m = rng.normal(size=(4, 4))
    sigma = m @ m.T + 1e-3 * np.eye(4)
    omega = symplectic_form(2)
    nu_min = np.abs(np.linalg.eigvals(1j * omega @ sigma)).min()
    sigma = sigma / nu_min * rng.uniform(1.0, 2.5)
    return TwoModeCovariance.from_matrix(0.5 * (sigma + sigma.T))


def random_protocol_state(rng) -> TwoModeCovariance:
    """A state drawn from the families the package actually produces."""
    kind = rng.integers(0, 5)
    if kind == 0:
        return make_symmetric_discordant(rng.uniform(0.0, 100.0))
    if kind == 1:
        return make_asymmetric_discordant(rng.uniform(0.0, 100.0), rng.uniform(0.0, 1.0))
    if kind == 2:
        # mildly attenuated so the state is mixed: exactly pure states sit on
        # the degenerate symplectic spectrum where double precision leaves
        # only ~1e-7 of discord accuracy
        t = rng.uniform(0.55, 0.95)
        return attenuate_both_modes(make_epr(rng.uniform(0.0, 2.0)), t, t)
    if kind == 3:
        base = make_symmetric_discordant(rng.uniform(0.0, 100.0))
        return attenuate_both_modes(base, rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
    ancilla = (
        DiscordantAncilla(rng.uniform(0.0, 100.0))
        if rng.integers(0, 2)
        else EprAncilla(rng.uniform(0.0, 2.0))
    )
    scenario = TransferScenario(rng.uniform(0.0, 100.0), ancilla, rng.uniform(0.0, 1.5))
    return transfer_output(scenario)


def local_symplectic(rng) -> np.ndarray:
    """Random product of single-mode rotations and mild squeezers."""
    blocks = []
    for _ in range(2):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        s = math.exp(rng.uniform(-0.5, 0.5))
        rot = np.array(
            [[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]]
        )
        blocks.append(rot @ np.diag([s, 1.0 / s]))
    out = np.zeros((4, 4))
    out[:2, :2] = blocks[0]
    out[2:, 2:] = blocks[1]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)

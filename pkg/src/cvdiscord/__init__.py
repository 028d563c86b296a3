"""Gaussian quantum discord of two-mode optical states and its remote
transfer by homodyne measurement and classical feedforward."""

from .discord import (
    DiscordBreakdown,
    SymplecticInvariants,
    e_min,
    entropy_f,
    gaussian_discord,
    ppt_min_eigenvalue,
    symplectic_eigenvalues,
    symplectic_invariants,
)
from .exceptions import EvaluationError, NumericDomainError
from .gaussian import (
    MultimodeGaussianState,
    QuadratureLinearMap,
    TwoModeCovariance,
    apply_map,
    beam_splitter_map,
    extract_two_mode,
    feedforward_map,
    loss_channel,
    min_symplectic_eigenvalue,
    vacuum_state,
)
from .montecarlo import SampledCovariance, deviation_in_standard_errors, sample_transfer
from .optimize import Optimum, maximize_2d, maximize_scalar, optimal_attenuation
from .protocol import (
    DiscordantAncilla,
    Efficiencies,
    EprAncilla,
    TransferScenario,
    attenuate_both_modes,
    make_asymmetric_discordant,
    make_epr,
    make_symmetric_discordant,
    transfer_closed_form,
    transfer_discord,
    transfer_output,
    transfer_via_engine,
    transfer_with_discordant_closed_form,
    transfer_with_epr_closed_form,
)

__version__ = "0.1.0"

"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v` (add -s to see the lines
as they print).  Tolerances are fixed here, not configurable.
"""

import time

import numpy as np
import pytest

from cvdiscord.discord import gaussian_discord, ppt_min_eigenvalue
from cvdiscord.figures import FIGURE_NAMES, figure_tables
from cvdiscord.gaussian import min_symplectic_eigenvalue, symplectic_form
from cvdiscord.montecarlo import deviation_in_standard_errors, sample_transfer
from cvdiscord.optimize import maximize_2d, maximize_scalar
from cvdiscord.protocol import (
    DiscordantAncilla,
    Efficiencies,
    EprAncilla,
    TransferScenario,
    make_asymmetric_discordant,
    make_symmetric_discordant,
    transfer_via_engine,
    transfer_with_discordant_closed_form,
    transfer_with_epr_closed_form,
)

from conftest import random_physical_two_mode

V_GRID = np.linspace(0.0, 100.0, 401)


def D(sigma) -> float:
    return gaussian_discord(sigma).discord


def report(number, description, ok, detail):
    line = f"[criterion {number:02d}] {description}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    assert ok, line


def first_crossover(curve, baseline):
    above = np.asarray(curve) > np.asarray(baseline)
    return float(V_GRID[np.argmax(above)]) if above.any() else float("inf")


@pytest.fixture(scope="module")
def figure_bundle():
    return {name: figure_tables(name) for name in FIGURE_NAMES}


def test_criterion_01_peak_output_discord():
    start = time.perf_counter()
    opt = maximize_2d(
        lambda g, r: D(transfer_with_epr_closed_form(50.0, r, g)),
        ((0.0, 1.5), (0.0, 2.0)),
    )
    elapsed = time.perf_counter() - start
    g_star, r_star = opt.location
    ok = (
        abs(opt.value - 0.92) <= 0.02
        and abs(r_star - 0.33) <= 0.05
        and abs(g_star - 0.32) <= 0.05
        and elapsed < 5.0
    )
    report(1, "peak output discord 0.92 at (g,r)=(0.32,0.33)", ok,
           f"D*={opt.value:.4f} g*={g_star:.4f} r*={r_star:.4f} in {elapsed:.2f}s")


def test_criterion_02_crossover_coherent_ancilla():
    start = time.perf_counter()
    initial = [D(make_symmetric_discordant(v)) for v in V_GRID]
    output = [D(transfer_with_discordant_closed_form(v, 0.0, 0.26)) for v in V_GRID]
    crossover = first_crossover(output, initial)
    elapsed = time.perf_counter() - start
    ok = 16.0 <= crossover <= 20.0 and elapsed < 1.0
    report(2, "coherent-ancilla crossover in [16, 20]", ok,
           f"crossover={crossover:.2f} in {elapsed:.2f}s")


def test_criterion_03_crossover_epr_ancilla():
    start = time.perf_counter()
    initial = [D(make_symmetric_discordant(v)) for v in V_GRID]
    output = [D(transfer_with_epr_closed_form(v, 0.33, 0.32)) for v in V_GRID]
    crossover = first_crossover(output, initial)
    elapsed = time.perf_counter() - start
    ok = 6.6 <= crossover <= 8.6 and elapsed < 1.0
    report(3, "EPR-ancilla crossover in [6.6, 8.6]", ok,
           f"crossover={crossover:.2f} in {elapsed:.2f}s")


def test_criterion_04_asymmetric_state_crossover():
    start = time.perf_counter()
    symmetric = np.array([D(make_symmetric_discordant(v)) for v in V_GRID])
    asymmetric = np.array([D(make_asymmetric_discordant(v, 0.5)) for v in V_GRID])
    above = asymmetric > symmetric
    crossover = first_crossover(asymmetric, symmetric)
    elapsed = time.perf_counter() - start
    ok = (
        bool(np.all(above[V_GRID > 5.0]))
        and not np.any(above[V_GRID <= 3.0])
        and 3.0 <= crossover <= 5.0
        and elapsed < 1.0
    )
    report(4, "attenuated-modulation crossover in [3, 5]", ok,
           f"crossover={crossover:.2f} in {elapsed:.2f}s")


def test_criterion_05_optimal_ancilla_noise_at_boundary():
    opt = maximize_2d(
        lambda g, v_b: D(transfer_with_discordant_closed_form(50.0, v_b, g)),
        ((0.0, 1.5), (0.0, 100.0)),
    )
    resolution = 100.0 / 100
    ok = opt.location[1] <= resolution
    report(5, "optimal ancilla noise V_B* = 0", ok,
           f"V_B*={opt.location[1]:.6f} (grid resolution {resolution})")


def test_criterion_06_unit_gain_independence():
    discords = [
        D(transfer_with_discordant_closed_form(50.0, v_b, 1.0))
        for v_b in (0.0, 20.0, 50.0, 100.0)
    ]
    spread = max(discords) - min(discords)
    ok = spread <= 1e-12
    report(6, "unit-gain output independent of V_B to 1e-12", ok,
           f"spread={spread:.3e}")


def test_criterion_07_engine_equals_closed_forms():
    worst = 0.0
    for v_a in np.linspace(0.0, 100.0, 10):
        for g in np.linspace(0.0, 1.5, 10):
            for v_b in np.linspace(0.0, 100.0, 10):
                scenario = TransferScenario(v_a, DiscordantAncilla(v_b), g)
                dev = np.abs(
                    transfer_via_engine(scenario).matrix
                    - transfer_with_discordant_closed_form(v_a, v_b, g).matrix
                ).max()
                worst = max(worst, dev)
            for r in np.linspace(0.0, 2.0, 10):
                scenario = TransferScenario(v_a, EprAncilla(r), g)
                dev = np.abs(
                    transfer_via_engine(scenario).matrix
                    - transfer_with_epr_closed_form(v_a, r, g).matrix
                ).max()
                worst = max(worst, dev)
    ok = worst <= 1e-10
    report(7, "engine equals closed forms on 10x10x10 grids", ok,
           f"max deviation={worst:.3e}")


def test_criterion_08_monte_carlo_validation():
    start = time.perf_counter()
    lossless = TransferScenario(50.0, DiscordantAncilla(0.0), 0.26)
    lossy = TransferScenario(
        50.0, DiscordantAncilla(0.0), 0.26, Efficiencies.uniform(0.9)
    )
    dev_lossless = deviation_in_standard_errors(
        sample_transfer(lossless, 1_000_000, seed=42),
        transfer_with_discordant_closed_form(50.0, 0.0, 0.26),
    )
    dev_lossy = deviation_in_standard_errors(
        sample_transfer(lossy, 1_000_000, seed=42),
        transfer_via_engine(lossy),
    )
    corrupted = TransferScenario(50.0, DiscordantAncilla(0.0), 0.31)
    dev_control = deviation_in_standard_errors(
        sample_transfer(lossless, 1_000_000, seed=42),
        transfer_via_engine(corrupted),
    )
    elapsed = time.perf_counter() - start
    ok = dev_lossless <= 5.0 and dev_lossy <= 5.0 and dev_control > 5.0 and elapsed < 20.0
    report(8, "Monte Carlo within 5 SE; corrupted control fails", ok,
           f"lossless={dev_lossless:.2f} lossy={dev_lossy:.2f} "
           f"control={dev_control:.1f} in {elapsed:.1f}s")


def test_criterion_09_loss_degrades_optimal_discord():
    details = []
    ok = True
    for v_a in (20.0, 50.0, 100.0):
        for ancilla in (DiscordantAncilla(0.0), EprAncilla(0.33)):
            ideal = maximize_scalar(
                lambda g: D(transfer_via_engine(TransferScenario(v_a, ancilla, g))),
                0.0, 1.5, coarse_points=61,
            )
            lossy = maximize_scalar(
                lambda g: D(transfer_via_engine(
                    TransferScenario(v_a, ancilla, g, Efficiencies.uniform(0.9))
                )),
                0.0, 1.5, coarse_points=61,
            )
            ok = ok and lossy.value < ideal.value
            details.append(f"{ideal.value - lossy.value:+.4f}")
    report(9, "efficiency 0.9 strictly lowers optimal discord", ok,
           "drops " + " ".join(details))


def test_criterion_10_figure_grids_physical_and_separable(figure_bundle):
    worst_nu = np.inf
    worst_ppt = np.inf
    worst_discord = -np.inf
    rows_checked = 0
    for name, tables in figure_bundle.items():
        for table in tables:
            r_column = "r" in table.header
            d_col = table.header.index("discord")
            for row in table.rows:
                sigma = table.model(table.params_from_row(row))
                worst_nu = min(worst_nu, min_symplectic_eigenvalue(sigma))
                separable_input = not r_column or row[table.header.index("r")] == 0.0
                if separable_input:
                    worst_ppt = min(worst_ppt, ppt_min_eigenvalue(sigma))
                    worst_discord = max(worst_discord, row[d_col])
                rows_checked += 1
    ok = (
        worst_nu >= 1.0 - 1e-9
        and worst_ppt >= 1.0 - 1e-9
        and worst_discord < 1.0
    )
    report(10, "figure grids physical; separable inputs stay separable, D < 1", ok,
           f"{rows_checked} rows, min nu={worst_nu:.12f}, "
           f"min ppt={worst_ppt:.12f}, max separable D={worst_discord:.4f}")


def test_criterion_11_eigenvalue_cross_implementation():
    rng = np.random.default_rng(11)
    omega = symplectic_form(2)
    worst = 0.0
    for _ in range(1000):
        sigma = random_physical_two_mode(rng)
        closed = min_symplectic_eigenvalue(sigma)
        generic = np.abs(np.linalg.eigvals(1j * omega @ sigma.matrix)).min()
        worst = max(worst, abs(closed - generic) / max(1.0, generic))
    ok = worst <= 1e-10
    report(11, "closed form matches generic eigensolver on 1000 states", ok,
           f"max relative deviation={worst:.3e}")


def test_criterion_12_degenerate_family_identity():
    worst = 0.0
    for v in (0.0, 1.0, 20.0, 50.0, 100.0):
        inv = gaussian_discord(make_symmetric_discordant(v))
        expected = np.sqrt(1.0 + 2.0 * v)
        worst = max(worst, abs(inv.nu_minus - expected), abs(inv.nu_plus - expected))
    ok = worst <= 1e-10
    report(12, "shared-noise family has nu- = nu+ = sqrt(1+2V)", ok,
           f"max deviation={worst:.3e}")

"""Parameter sweeps over protocol and state-family models, written as CSV.

A sweep evaluates a model (a function from a parameter dict to a two-mode
covariance) over one or two gridded parameters and records correlation
measures per grid point.  CSV output is fully deterministic: comma
separated, '.' decimal point, 12 significant digits, LF line endings, one
header row, rows in lexicographic order of the swept parameters.  Every
parameter the model consumed appears as a column, so a file can be
re-evaluated from its own contents.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .discord import gaussian_discord, ppt_min_eigenvalue
from .gaussian import TwoModeCovariance
from .protocol import (
    DiscordantAncilla,
    Efficiencies,
    EprAncilla,
    TransferScenario,
    attenuate_both_modes,
    make_asymmetric_discordant,
    make_symmetric_discordant,
    transfer_output,
)

OUTPUT_FIELDS = (
    "discord",
    "mutual_information",
    "classical_correlation",
    "nu_minus",
    "ppt_witness",
)


def evaluate_outputs(sigma: TwoModeCovariance, outputs=OUTPUT_FIELDS) -> list[float]:
    breakdown = gaussian_discord(sigma)
    values = {
        "discord": breakdown.discord,
        "mutual_information": breakdown.mutual_information,
        "classical_correlation": breakdown.classical_correlation,
        "nu_minus": breakdown.nu_minus,
    }
    if "ppt_witness" in outputs:
        values["ppt_witness"] = ppt_min_eigenvalue(sigma)
    return [values[name] for name in outputs]


def _efficiencies_from(params: dict) -> Efficiencies:
    if "eta" in params:
        return Efficiencies.uniform(params["eta"])
    return Efficiencies(
        params.get("eta_a", 1.0),
        params.get("eta_e", 1.0),
        params.get("eta_f", 1.0),
        params.get("eta_d", 1.0),
    )


def transfer_model(params: dict) -> TwoModeCovariance:
    """Protocol output from a parameter dict carrying v_a, g and v_b or r."""
    if "v_b" in params and "r" in params:
        raise ValueError("give either v_b (noise ancilla) or r (EPR ancilla), not both")
    if "v_b" in params:
        ancilla = DiscordantAncilla(params["v_b"])
    elif "r" in params:
        ancilla = EprAncilla(params["r"])
    else:
        raise ValueError("transfer model needs v_b or r for the ancilla")
    scenario = TransferScenario(
        params["v_a"], ancilla, params["g"], _efficiencies_from(params)
    )
    return transfer_output(scenario, engine=bool(params.get("engine", False)))


def symmetric_model(params: dict) -> TwoModeCovariance:
    return make_symmetric_discordant(params["v_a"])


def asymmetric_model(params: dict) -> TwoModeCovariance:
    return make_asymmetric_discordant(params["v_a"], params.get("t", 1.0))


def attenuated_model(params: dict) -> TwoModeCovariance:
    base = make_symmetric_discordant(params["v_a"])
    return attenuate_both_modes(base, params.get("t1", 1.0), params.get("t2", 1.0))


@dataclass(frozen=True)
class SweepSpec:
    """One or two gridded parameters applied on top of fixed ones.

    axes: ((name, grid), ...) with 1 or 2 entries, each grid having at
    least 2 finite points; fixed: ((name, value), ...) completing the model
    parameters; outputs: subset of OUTPUT_FIELDS.
    """

    axes: tuple
    model: Callable[[dict], TwoModeCovariance]
    fixed: tuple = ()
    outputs: tuple = OUTPUT_FIELDS

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a sweep takes one or two axes")
        for name, grid in self.axes:
            grid = np.asarray(grid, dtype=float)
            if grid.size < 2:
                raise ValueError(f"axis {name!r} needs at least 2 points")
            if not np.all(np.isfinite(grid)):
                raise ValueError(f"axis {name!r} contains non-finite values")
        axis_names = {name for name, _ in self.axes}
        if len(axis_names) != len(self.axes):
            raise ValueError("swept parameter names must be distinct")
        for name in self.outputs:
            if name not in OUTPUT_FIELDS:
                raise ValueError(
                    f"unknown output {name!r}; valid outputs: {', '.join(OUTPUT_FIELDS)}"
                )

    def header(self) -> list[str]:
        names = [name for name, _ in self.axes]
        names += [name for name, _ in self.fixed if name not in names]
        return names + list(self.outputs)

    def points(self) -> list[dict]:
        """Grid points in lexicographic order of the swept parameters."""
        fixed = dict(self.fixed)
        if len(self.axes) == 1:
            name, grid = self.axes[0]
            return [{**fixed, name: float(v)} for v in np.asarray(grid, dtype=float)]
        (n1, g1), (n2, g2) = self.axes
        return [
            {**fixed, n1: float(v1), n2: float(v2)}
            for v1 in np.asarray(g1, dtype=float)
            for v2 in np.asarray(g2, dtype=float)
        ]


def run_sweep(spec: SweepSpec, threads: int = 1):
    """Evaluate the sweep; returns (header, rows of floats).

    Rows may be computed concurrently; the output order and values do not
    depend on the thread count.
    """
    points = spec.points()
    param_names = spec.header()[: -len(spec.outputs)]

    def row(params):
        sigma = spec.model(params)
        return [params[name] for name in param_names] + evaluate_outputs(
            sigma, spec.outputs
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, points))
    else:
        rows = [row(p) for p in points]
    return spec.header(), rows


def format_value(x: float) -> str:
    return f"{x:.12g}"


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(x) for x in row) + "\n")


def read_csv(path):
    """Read a sweep CSV back; returns (header, 2-D float array)."""
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    header = lines[0].split(",")
    data = np.array([[float(tok) for tok in line.split(",")] for line in lines[1:]])
    return header, data

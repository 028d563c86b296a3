"""Command-line front end.

Subcommands: discord, transfer, sweep, figure, optimize, validate.  Exit
codes: 0 success, 2 usage error, 3 numeric-domain error, 4 I/O error,
5 validation failure.  Flags override an optional key=value config file,
which overrides built-in defaults.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from .discord import gaussian_discord, ppt_min_eigenvalue
from .exceptions import EvaluationError, NumericDomainError
from .figures import (
    DEFAULT_CURVE_POINTS,
    DEFAULT_SURFACE_POINTS,
    FIGURE_NAMES,
    write_figure,
)
from .gaussian import TwoModeCovariance
from .montecarlo import deviation_in_standard_errors, sample_transfer
from .optimize import maximize_2d, maximize_scalar, optimal_attenuation
from .protocol import (
    DiscordantAncilla,
    Efficiencies,
    EprAncilla,
    TransferScenario,
    make_asymmetric_discordant,
    make_epr,
    make_symmetric_discordant,
    transfer_closed_form,
    transfer_output,
    transfer_via_engine,
)
from .sweeps import OUTPUT_FIELDS, SweepSpec, run_sweep, write_csv
from .sweeps import asymmetric_model, attenuated_model, symmetric_model, transfer_model

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC_DOMAIN = 3
EXIT_IO = 4
EXIT_VALIDATION = 5

SWEEPABLE = ("v_a", "v_b", "r", "g", "t", "t1", "t2", "eta")

_RANGE_DEFAULTS = {"g": (0.0, 1.5), "r": (0.0, 2.0), "vb": (0.0, 100.0), "t": (0.0, 1.0)}


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def load_covariance_file(path) -> TwoModeCovariance:
    """Read a 4x4 covariance: four rows of four numbers, '#' starts a comment."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            rows.append([float(tok) for tok in line.split()])
    if len(rows) != 4 or any(len(row) != 4 for row in rows):
        raise ValueError(f"{path}: expected 4 rows of 4 numbers")
    return TwoModeCovariance.from_matrix(np.array(rows))


def write_covariance_file(path, sigma: TwoModeCovariance) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("# two-mode covariance, quadrature order (X1, Y1, X2, Y2)\n")
        for row in sigma.matrix:
            fh.write(" ".join(_fmt(v) for v in row) + "\n")


def load_config(path) -> dict:
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}: expected key=value, got {line!r}")
            values[key.strip()] = value.strip()
    return values


def _common_flags(parser) -> None:
    parser.add_argument("--out", help="output path (file or directory, command dependent)")
    parser.add_argument("--config", help="key=value config file (threads, points, surface_points, out)")
    parser.add_argument("--threads", type=int, help="worker threads for sweeps (default: available parallelism)")
    parser.add_argument("--plot", action="store_true", help="also render PNG plots where supported")


def _scenario_flags(parser, need_gain=True) -> None:
    parser.add_argument("--va", type=float, help="noise variance of the transferred pair")
    parser.add_argument("--ancilla", choices=("discordant", "epr"), help="ancilla pair kind")
    parser.add_argument("--vb", type=float, default=0.0, help="ancilla noise variance (discordant, default 0)")
    parser.add_argument("--r", type=float, default=0.0, help="ancilla squeezing parameter (epr, default 0)")
    if need_gain:
        parser.add_argument("--g", type=float, help="feedforward gain")
    parser.add_argument("--eta", type=float, help="detection efficiency applied to all four modes")
    parser.add_argument("--eta-a", type=float, help="efficiency on the kept mode a")
    parser.add_argument("--eta-e", type=float, help="efficiency on the detected sum mode")
    parser.add_argument("--eta-f", type=float, help="efficiency on the detected difference mode")
    parser.add_argument("--eta-d", type=float, help="efficiency on the displaced output mode")


def _efficiencies_from_args(args) -> Efficiencies:
    base = args.eta if args.eta is not None else 1.0
    pick = lambda v: base if v is None else v
    return Efficiencies(pick(args.eta_a), pick(args.eta_e), pick(args.eta_f), pick(args.eta_d))


def _ancilla_from_args(args):
    if args.ancilla is None:
        raise ValueError("--ancilla {discordant,epr} is required")
    if args.ancilla == "discordant":
        return DiscordantAncilla(args.vb)
    return EprAncilla(args.r)


def _scenario_from_args(args, gain=None) -> TransferScenario:
    if args.va is None:
        raise ValueError("--va is required")
    if gain is None:
        gain = args.g
    if gain is None:
        raise ValueError("--g is required")
    return TransferScenario(args.va, _ancilla_from_args(args), gain, _efficiencies_from_args(args))


def _print_breakdown(breakdown) -> None:
    inv = breakdown.invariants
    pairs = [
        ("discord", breakdown.discord),
        ("mutual_information", breakdown.mutual_information),
        ("classical_correlation", breakdown.classical_correlation),
        ("nu_minus", breakdown.nu_minus),
        ("nu_plus", breakdown.nu_plus),
        ("e_min", breakdown.e_min),
    ]
    for name, value in pairs:
        print(f"{name} = {_fmt(value)}")
    print(f"branch = {breakdown.branch}")
    for name, value in (("I1", inv.i1), ("I2", inv.i2), ("I3", inv.i3),
                        ("I4", inv.i4), ("delta", inv.delta)):
        print(f"{name} = {_fmt(value)}")


def cmd_discord(args) -> int:
    sources = {
        "--symmetric-v": args.symmetric_v,
        "--asymmetric-v": args.asymmetric_v,
        "--epr-r": args.epr_r,
        "--cov-file": args.cov_file,
    }
    given = [flag for flag, value in sources.items() if value is not None]
    if len(given) != 1:
        raise ValueError(f"give exactly one of {', '.join(sources)}")
    if args.symmetric_v is not None:
        sigma = make_symmetric_discordant(args.symmetric_v)
    elif args.asymmetric_v is not None:
        sigma = make_asymmetric_discordant(args.asymmetric_v, args.asymmetric_t)
    elif args.epr_r is not None:
        sigma = make_epr(args.epr_r)
    else:
        sigma = load_covariance_file(args.cov_file)
    _print_breakdown(gaussian_discord(sigma))
    print(f"ppt_witness = {_fmt(ppt_min_eigenvalue(sigma))}")
    return EXIT_OK


def cmd_transfer(args) -> int:
    scenario = _scenario_from_args(args)
    input_discord = gaussian_discord(make_symmetric_discordant(scenario.v_a)).discord
    use_engine = args.engine or not scenario.efficiencies.all_unit
    sigma = transfer_output(scenario, engine=use_engine)
    print(f"input_discord = {_fmt(input_discord)}")
    print("output_covariance:")
    for row in sigma.matrix:
        print("  " + " ".join(_fmt(v) for v in row))
    if scenario.efficiencies.all_unit:
        deviation = np.abs(
            transfer_via_engine(scenario).matrix - transfer_closed_form(scenario).matrix
        ).max()
        print(f"engine_vs_closed_form_max_dev = {_fmt(deviation)}")
    breakdown = gaussian_discord(sigma)
    print(f"output_discord = {_fmt(breakdown.discord)}")
    print(f"output_mutual_information = {_fmt(breakdown.mutual_information)}")
    print(f"ppt_witness = {_fmt(ppt_min_eigenvalue(sigma))}")
    if args.out:
        write_covariance_file(args.out, sigma)
        print(f"wrote {args.out}")
    return EXIT_OK


def _parse_axis(token):
    name, sep, rng = token.partition("=")
    parts = rng.split(":")
    if not sep or len(parts) != 3:
        raise ValueError(f"expected NAME=LO:HI:N, got {token!r}")
    if name not in SWEEPABLE:
        raise ValueError(f"cannot sweep {name!r}; sweepable: {', '.join(SWEEPABLE)}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2:
        raise ValueError(f"axis {name!r} needs at least 2 points")
    return name, np.linspace(lo, hi, n)


def _sweep_spec(args) -> SweepSpec:
    axes = [_parse_axis(token) for token in args.sweep]
    if not 1 <= len(axes) <= 2:
        raise ValueError("give one or two --sweep axes")
    axis_names = {name for name, _ in axes}

    models = {
        "transfer": args.ancilla is not None,
        "asymmetric": args.asymmetric,
        "attenuated": args.attenuated,
        "symmetric": args.symmetric,
    }
    chosen = [name for name, active in models.items() if active]
    if len(chosen) != 1:
        raise ValueError(
            "choose exactly one model: --ancilla {discordant,epr}, "
            "--symmetric, --asymmetric or --attenuated"
        )
    kind = chosen[0]

    fixed = {"v_a": args.va}
    if kind == "transfer":
        model = transfer_model
        fixed["g"] = args.g
        if args.ancilla == "discordant":
            fixed["v_b"] = args.vb
        else:
            fixed["r"] = args.r
        etas = (args.eta_a, args.eta_e, args.eta_f, args.eta_d)
        if any(v is not None for v in etas):
            base = args.eta if args.eta is not None else 1.0
            for name, value in zip(("eta_a", "eta_e", "eta_f", "eta_d"), etas):
                fixed[name] = base if value is None else value
        elif args.eta is not None:
            fixed["eta"] = args.eta
        if args.engine:
            model = lambda params: transfer_model({**params, "engine": True})
        allowed = {"v_a", "v_b", "r", "g", "eta"}
    elif kind == "asymmetric":
        model = asymmetric_model
        fixed["t"] = args.t
        allowed = {"v_a", "t"}
    elif kind == "attenuated":
        model = attenuated_model
        fixed["t1"] = args.t1
        fixed["t2"] = args.t2
        allowed = {"v_a", "t1", "t2"}
    else:
        model = symmetric_model
        allowed = {"v_a"}

    bad = axis_names - allowed
    if bad:
        raise ValueError(f"cannot sweep {sorted(bad)} with the {kind} model")
    fixed = {k: v for k, v in fixed.items() if k not in axis_names and v is not None}
    missing = {"v_a"} - axis_names - set(fixed)
    if kind == "transfer":
        missing |= {"g"} - axis_names - set(fixed)
    if missing:
        raise ValueError(f"missing values for {sorted(missing)} (flag or sweep axis)")

    outputs = tuple(args.outputs.split(",")) if args.outputs else OUTPUT_FIELDS
    return SweepSpec(axes=tuple(axes), model=model, fixed=tuple(fixed.items()), outputs=outputs)


def cmd_sweep(args) -> int:
    if not args.out:
        raise ValueError("--out CSV path is required for sweep")
    spec = _sweep_spec(args)
    header, rows = run_sweep(spec, threads=args.threads)
    write_csv(args.out, header, rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def cmd_figure(args) -> int:
    out_dir = args.out or "figures"
    paths = write_figure(
        args.name,
        out_dir,
        curve_points=args.points,
        surface_points=args.surface_points,
        plot=args.plot,
        threads=args.threads,
    )
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def _parse_override(token):
    name, sep, rng = token.partition("=")
    parts = rng.split(":")
    if not sep or len(parts) != 2:
        raise ValueError(f"expected NAME=LO:HI, got {token!r}")
    return name, (float(parts[0]), float(parts[1]))


def cmd_optimize(args) -> int:
    targets = [t.strip() for t in args.over.split(",") if t.strip()]
    if not 1 <= len(targets) <= 2:
        raise ValueError("--over takes one or two of g, r, vb, t")
    for t in targets:
        if t not in ("g", "r", "vb", "t"):
            raise ValueError(f"cannot optimize {t!r}; valid targets: g, r, vb, t")
    ranges = dict(_RANGE_DEFAULTS)
    for token in args.range or ():
        name, bounds = _parse_override(token)
        if name not in ranges:
            raise ValueError(f"no such range parameter {name!r}")
        ranges[name] = bounds

    if "t" in targets:
        if len(targets) != 1:
            raise ValueError("t can only be optimized on its own")
        if args.asymmetric_v is None:
            raise ValueError("--asymmetric-v is required when optimizing t")
        optimum = optimal_attenuation(args.asymmetric_v, ranges["t"], tol=args.tol)
    else:
        if args.va is None:
            raise ValueError("--va is required")
        if args.ancilla is None:
            raise ValueError("--ancilla {discordant,epr} is required")
        if "vb" in targets and args.ancilla != "discordant":
            raise ValueError("optimizing vb requires --ancilla discordant")
        if "r" in targets and args.ancilla != "epr":
            raise ValueError("optimizing r requires --ancilla epr")
        if "g" not in targets and args.g is None:
            raise ValueError("--g is required when g is not optimized")
        efficiencies = _efficiencies_from_args(args)

        def scenario_for(values: dict) -> TransferScenario:
            g = values.get("g", args.g)
            if args.ancilla == "discordant":
                ancilla = DiscordantAncilla(values.get("vb", args.vb))
            else:
                ancilla = EprAncilla(values.get("r", args.r))
            return TransferScenario(args.va, ancilla, g, efficiencies)

        def objective(*point):
            values = dict(zip(targets, point))
            return gaussian_discord(transfer_output(scenario_for(values))).discord

        if len(targets) == 1:
            lo, hi = ranges[targets[0]]
            optimum = maximize_scalar(objective, lo, hi, tol=args.tol)
        else:
            box = (ranges[targets[0]], ranges[targets[1]])
            optimum = maximize_2d(objective, box, tol=args.tol)

    for name, value in zip(targets, optimum.location):
        print(f"{name} = {_fmt(value)}")
    print(f"value = {_fmt(optimum.value)}")
    print(f"evaluations = {optimum.evaluations}")
    print(f"converged = {str(optimum.converged).lower()}")
    return EXIT_OK


def cmd_validate(args) -> int:
    defaults = dict(va=50.0, ancilla="discordant")
    for name, value in defaults.items():
        if getattr(args, name) is None:
            setattr(args, name, value)
    if args.g is None:
        args.g = 0.26
    scenario = _scenario_from_args(args)
    sampled = sample_transfer(scenario, args.samples, args.seed)
    reference_scenario = scenario
    if args.inject_error:
        # negative control: the reference deliberately uses a wrong gain
        reference_scenario = replace(scenario, gain=scenario.gain + 0.05)
        print(f"injected_reference_gain = {_fmt(reference_scenario.gain)}")
    reference = transfer_output(reference_scenario, engine=True)
    units = deviation_in_standard_errors(sampled, reference)
    print(f"n_samples = {sampled.n_samples}")
    print(f"seed = {sampled.seed}")
    print(f"max_deviation_standard_errors = {_fmt(units)}")
    ok = units <= 5.0
    print(f"result = {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvdiscord",
        description="Gaussian quantum discord of two-mode states and its remote transfer",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discord", help="discord of a state given inline or as a covariance file")
    p.add_argument("--symmetric-v", type=float, help="symmetric correlated-noise state with this variance")
    p.add_argument("--asymmetric-v", type=float, help="asymmetric correlated-noise state with this variance")
    p.add_argument("--asymmetric-t", type=float, default=1.0, help="attenuation of the asymmetric state (default 1)")
    p.add_argument("--epr-r", type=float, help="two-mode squeezed state with this squeezing parameter")
    p.add_argument("--cov-file", help="file with a 4x4 covariance matrix")
    _common_flags(p)
    p.set_defaults(func=cmd_discord)

    p = sub.add_parser("transfer", help="run one protocol scenario")
    _scenario_flags(p)
    p.add_argument("--engine", action="store_true", help="use the four-mode engine instead of the closed form")
    _common_flags(p)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("sweep", help="sweep 1-2 parameters to CSV")
    _scenario_flags(p)
    p.add_argument("--engine", action="store_true", help="force the engine for every point")
    p.add_argument("--symmetric", action="store_true", help="sweep the symmetric noise-state family")
    p.add_argument("--asymmetric", action="store_true", help="sweep the asymmetric noise-state family")
    p.add_argument("--attenuated", action="store_true", help="sweep both-mode attenuation of the symmetric state")
    p.add_argument("--t", type=float, default=1.0, help="modulation attenuation (asymmetric model)")
    p.add_argument("--t1", type=float, default=1.0, help="transmission on mode one (attenuated model)")
    p.add_argument("--t2", type=float, default=1.0, help="transmission on mode two (attenuated model)")
    p.add_argument("--sweep", action="append", required=True, metavar="NAME=LO:HI:N",
                   help="swept parameter and grid; repeat for a second axis")
    p.add_argument("--outputs", help=f"comma list from: {', '.join(OUTPUT_FIELDS)}")
    _common_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="reproduce a reference figure as CSV (+ optional PNG)")
    p.add_argument("name", choices=FIGURE_NAMES)
    p.add_argument("--points", type=int, help=f"points per curve (default {DEFAULT_CURVE_POINTS})")
    p.add_argument("--surface-points", type=int, help=f"points per surface axis (default {DEFAULT_SURFACE_POINTS})")
    _common_flags(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("optimize", help="maximize output discord over 1-2 parameters")
    _scenario_flags(p)
    p.add_argument("--over", required=True, help="comma list of targets among g, r, vb, t")
    p.add_argument("--asymmetric-v", type=float, help="noise variance when optimizing t")
    p.add_argument("--range", action="append", metavar="NAME=LO:HI", help="override a search range")
    p.add_argument("--tol", type=float, default=1e-5, help="parameter tolerance (default 1e-5)")
    _common_flags(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("validate", help="Monte Carlo check of the engine output")
    _scenario_flags(p)
    p.add_argument("--samples", type=int, default=1_000_000, help="number of samples (default 1e6)")
    p.add_argument("--seed", type=int, default=42, help="generator seed (default 42)")
    p.add_argument("--inject-error", action="store_true",
                   help="negative control: corrupt the reference gain so validation must fail")
    _common_flags(p)
    p.set_defaults(func=cmd_validate)

    return parser


def _apply_config(args) -> None:
    config = load_config(args.config) if args.config else {}
    if args.threads is None:
        args.threads = int(config["threads"]) if "threads" in config else (os.cpu_count() or 1)
    if args.out is None and "out" in config:
        args.out = config["out"]
    if hasattr(args, "points") and args.points is None:
        args.points = int(config.get("points", DEFAULT_CURVE_POINTS))
    if hasattr(args, "surface_points") and args.surface_points is None:
        args.surface_points = int(config.get("surface_points", DEFAULT_SURFACE_POINTS))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except NumericDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_DOMAIN
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

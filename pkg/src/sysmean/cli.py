"""Command-line front end: parameter reports, efficiency tables, simulations.

Every command emits its report to stdout (or --out) and a run manifest
holding the resolved parameters, input checksum, seed, and tool version.
Reports are deterministic byte-for-byte given the same inputs and seed; the
manifest carries the only timestamp.  `rerun` replays a manifest's argv to
reproduce its outputs.

Exit status: 0 = success and all checks pass, 1 = a simulation check failed,
2 = usage or input error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .datasets import file_sha256, synthetic_linear_population, write_population_csv
from .design import NonResponseModel, StratumMode, SystematicDesign
from .errors import ConfigurationError, EstimationError
from .estimators import FamilyParams
from .montecarlo import (
    EstimatorSpec,
    SimulationConfig,
    compare_to_theory,
    design_rng,
    run_simulation,
)
from .population import (
    FinitePopulation,
    PopulationMoments,
    compute_moments,
    load_population,
    sorted_by_auxiliary,
)
from .theory import (
    classical_mse,
    derived_constants,
    family_mse,
    family_mse_min,
    optimum_alpha,
    pre_optimum,
    var_mean_y,
)

DEFAULT_W2_GRID = (0.1, 0.2, 0.3, 0.4)
DEFAULT_ELL_GRID = (2.0, 2.5, 3.0, 3.5)


def _float_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("table", "csv", "json"), default="table",
        help="report format (default: table)",
    )
    parser.add_argument("--out", help="write the report to this file instead of stdout")
    parser.add_argument(
        "--manifest",
        help="write the run manifest to this file ('-' for stdout; default: "
        "next to --out, or stderr when reporting to stdout)",
    )


def _add_ingestion_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "input", nargs=None if required else "?",
        help="delimiter-separated text file with a header row (comma or tab)",
    )
    parser.add_argument("--y-col", default="y", help="study-variable column (default: y)")
    parser.add_argument("--x-col", default="x", help="auxiliary-variable column (default: x)")
    parser.add_argument(
        "--sort-by", choices=("x", "y"), default=None,
        help="re-arrange units in ascending order of this variable before sampling",
    )
    parser.add_argument(
        "--expect-sha256", default=None,
        help="fail unless the input file has this sha256 digest",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sysmean",
        description="Population-mean estimation from systematic samples under "
        "non-response: parameter reports, efficiency tables, and Monte Carlo checks.",
    )
    parser.add_argument("--version", action="version", version=f"sysmean {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_params = sub.add_parser(
        "params", help="ingest a dataset and report every population parameter"
    )
    _add_ingestion_options(p_params)
    p_params.add_argument("--n", type=int, required=True, help="systematic sample size")
    p_params.add_argument(
        "--s2y2-factor", type=float, default=None,
        help="set the non-response stratum mean square to FACTOR * S2_y",
    )
    _add_output_options(p_params)

    p_table = sub.add_parser(
        "theory-table",
        help="tabulate variance, minimum family MSE, and PRE over a (w2, L) grid",
    )
    _add_ingestion_options(p_table, required=False)
    p_table.add_argument("--n", type=int, required=True, help="systematic sample size")
    p_table.add_argument(
        "--s2y2-factor", type=float, default=None,
        help="stratum mean square as FACTOR * S2_y (default 0.75 when ingesting a file)",
    )
    group = p_table.add_argument_group("explicit moments (instead of an input file)")
    group.add_argument("--pop-size", type=int, help="population size N")
    group.add_argument("--mean-y", type=float)
    group.add_argument("--mean-x", type=float)
    group.add_argument("--s2-y", type=float)
    group.add_argument("--s2-x", type=float)
    group.add_argument("--rho", type=float)
    group.add_argument("--rho-w", type=float, help="sets both intraclass correlations")
    group.add_argument("--rho-y", type=float)
    group.add_argument("--rho-x", type=float)
    group.add_argument("--s2-y2", type=float, help="stratum mean square, direct value")
    p_table.add_argument("--w2-grid", type=_float_list, default=list(DEFAULT_W2_GRID))
    p_table.add_argument("--ell-grid", type=_float_list, default=list(DEFAULT_ELL_GRID))
    p_table.add_argument("--a", type=float, default=1.0, help="family parameter a")
    p_table.add_argument("--b", type=float, default=0.0, help="family parameter b")
    p_table.add_argument("--g", type=float, default=1.0, help="family exponent g")
    _add_output_options(p_table)

    p_sim = sub.add_parser(
        "simulate",
        help="Monte Carlo replication of the design with theory comparison",
    )
    _add_ingestion_options(p_sim)
    p_sim.add_argument("--n", type=int, required=True, help="systematic sample size")
    p_sim.add_argument("--replicates", type=int, default=2000)
    p_sim.add_argument("--seed", type=int, default=20250811, help="master seed")
    p_sim.add_argument("--w2", type=float, default=0.0, help="non-response rate")
    p_sim.add_argument("--ell", type=float, default=1.0, help="sub-sampling ratio L")
    p_sim.add_argument(
        "--stratum-mode", choices=("fixed", "bernoulli"), default="fixed",
        help="fixed stratum (theory-faithful, default) or per-replicate Bernoulli",
    )
    p_sim.add_argument(
        "--estimators", default="hh,ratio,family",
        help="comma list from hh, ratio, product, family (default: hh,ratio,family)",
    )
    p_sim.add_argument(
        "--alpha-policy", choices=("optimum", "explicit"), default="optimum",
        help="family alpha: population optimum (default) or --alpha value",
    )
    p_sim.add_argument("--alpha", type=float, default=None)
    p_sim.add_argument("--a", type=float, default=1.0, help="family parameter a")
    p_sim.add_argument("--b", type=float, default=0.0, help="family parameter b")
    p_sim.add_argument("--g", type=float, default=1.0, help="family exponent g")
    p_sim.add_argument(
        "--exhaustive", action="store_true",
        help="cycle deterministically through all k start indices",
    )
    p_sim.add_argument("--tolerance-sigma", type=float, default=3.0)
    p_sim.add_argument(
        "--s2y2-factor", type=float, default=None,
        help="override the stratum mean square with FACTOR * S2_y",
    )
    _add_output_options(p_sim)

    p_synth = sub.add_parser(
        "synthesize", help="write a synthetic linear population as CSV"
    )
    p_synth.add_argument("--units", type=int, required=True)
    p_synth.add_argument("--rho", type=float, default=0.9, help="target correlation")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--x-low", type=float, default=20.0)
    p_synth.add_argument("--x-high", type=float, default=60.0)
    p_synth.add_argument("--slope", type=float, default=3.0)
    p_synth.add_argument("--intercept", type=float, default=10.0)
    p_synth.add_argument("--sort", action="store_true", help="arrange ascending by x")
    p_synth.add_argument("--out", required=True, help="output CSV path")
    p_synth.add_argument("--manifest", help="manifest path (default: OUT.manifest.json)")

    p_rerun = sub.add_parser("rerun", help="replay a run manifest")
    p_rerun.add_argument("manifest_file", help="path to a *.manifest.json file")

    return parser


def _manifest(
    command: str,
    argv: list[str],
    parameters: dict,
    input_path: str | None = None,
    input_sha256: str | None = None,
    seed: int | None = None,
) -> dict:
    return {
        "tool": "sysmean",
        "version": __version__,
        "command": command,
        "argv": list(argv),
        "input": (
            {"path": input_path, "sha256": input_sha256} if input_path is not None else None
        ),
        "parameters": parameters,
        "seed": seed,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _emit(args: argparse.Namespace, report: str, manifest: dict) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    manifest_text = json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    target = getattr(args, "manifest", None)
    if target == "-":
        sys.stdout.write(manifest_text)
    elif target:
        Path(target).write_text(manifest_text, encoding="utf-8")
    elif getattr(args, "out", None):
        Path(str(args.out) + ".manifest.json").write_text(manifest_text, encoding="utf-8")
    else:
        sys.stderr.write(manifest_text)


def _ingest(args: argparse.Namespace) -> tuple[FinitePopulation, str]:
    sha = file_sha256(args.input)
    if args.expect_sha256 and sha != args.expect_sha256.lower():
        raise ConfigurationError(
            f"input checksum mismatch: file has sha256 {sha}, expected {args.expect_sha256}"
        )
    pop = load_population(args.input, y_column=args.y_col, x_column=args.x_col)
    if args.sort_by:
        pop = sorted_by_auxiliary(pop, by=args.sort_by)
    return pop, sha


def _kv_lines(pairs: list[tuple[str, object]]) -> str:
    width = max(len(key) for key, _ in pairs)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in pairs) + "\n"


def _csv_lines(header: list[str], rows: list[list[object]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(str(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_params(args: argparse.Namespace, argv: list[str]) -> int:
    pop, sha = _ingest(args)
    design = SystematicDesign.from_population_size(pop.N, args.n)
    moments = compute_moments(pop, design)
    if args.s2y2_factor is not None:
        moments = dataclasses.replace(moments, s2_y2=args.s2y2_factor * moments.s2_y)

    fields = [
        ("N", pop.N),
        ("n", design.n),
        ("k", design.k),
        ("arrangement", f"sorted by {args.sort_by}" if args.sort_by else "file order"),
        ("mean_y", moments.mean_y),
        ("mean_x", moments.mean_x),
        ("s2_y", moments.s2_y),
        ("s2_x", moments.s2_x),
        ("cv_y", moments.cv_y),
        ("cv_x", moments.cv_x),
        ("rho", moments.rho),
        ("rho_y", moments.rho_y),
        ("rho_x", moments.rho_x),
        ("s2_y2", moments.s2_y2 if moments.s2_y2 is not None else "unset"),
    ]
    if args.format == "json":
        report = json.dumps({key: value for key, value in fields}, indent=2) + "\n"
    elif args.format == "csv":
        report = _csv_lines(["parameter", "value"], [[k, v] for k, v in fields])
    else:
        report = _kv_lines(fields)

    manifest = _manifest(
        "params",
        argv,
        {
            "n": args.n,
            "y_col": args.y_col,
            "x_col": args.x_col,
            "sort_by": args.sort_by,
            "s2y2_factor": args.s2y2_factor,
            "format": args.format,
        },
        input_path=args.input,
        input_sha256=sha,
    )
    _emit(args, report, manifest)
    return 0


def _moments_from_args(args: argparse.Namespace) -> tuple[PopulationMoments, int, str | None]:
    """Resolve (moments, N, input sha) from a file or explicit scalars."""
    explicit = [args.pop_size, args.mean_y, args.mean_x, args.s2_y, args.s2_x, args.rho]
    if args.input is not None:
        if any(v is not None for v in explicit):
            raise ConfigurationError("give an input file or explicit moments, not both")
        pop, sha = _ingest(args)
        design = SystematicDesign.from_population_size(pop.N, args.n)
        factor = 0.75 if args.s2y2_factor is None else args.s2y2_factor
        moments = compute_moments(pop, design)
        moments = dataclasses.replace(moments, s2_y2=factor * moments.s2_y)
        return moments, pop.N, sha

    if any(v is None for v in explicit):
        raise ConfigurationError(
            "without an input file, all of --pop-size --mean-y --mean-x --s2-y "
            "--s2-x --rho are required"
        )
    if args.rho_w is not None:
        if args.rho_y is not None or args.rho_x is not None:
            raise ConfigurationError("--rho-w conflicts with --rho-y/--rho-x")
        rho_y = rho_x = args.rho_w
    elif args.rho_y is not None and args.rho_x is not None:
        rho_y, rho_x = args.rho_y, args.rho_x
    else:
        raise ConfigurationError("provide --rho-w, or both --rho-y and --rho-x")
    if args.s2_y2 is not None and args.s2y2_factor is not None:
        raise ConfigurationError("--s2-y2 conflicts with --s2y2-factor")
    if args.s2_y2 is not None:
        s2_y2 = args.s2_y2
    elif args.s2y2_factor is not None:
        s2_y2 = args.s2y2_factor * args.s2_y
    else:
        s2_y2 = None
    moments = PopulationMoments.from_parameters(
        mean_y=args.mean_y,
        mean_x=args.mean_x,
        s2_y=args.s2_y,
        s2_x=args.s2_x,
        rho=args.rho,
        rho_y=rho_y,
        rho_x=rho_x,
        s2_y2=s2_y2,
    )
    return moments, args.pop_size, None


def cmd_theory_table(args: argparse.Namespace, argv: list[str]) -> int:
    moments, N, sha = _moments_from_args(args)
    n = args.n
    if N % n != 0:
        raise ConfigurationError(f"n={n} does not divide N={N}")
    params = FamilyParams(alpha=0.0, g=args.g, a=args.a, b=args.b)
    constants = derived_constants(moments, n, N, params)
    alpha_opt = optimum_alpha(constants, args.g)

    rows = []
    for w2 in args.w2_grid:
        for ell in args.ell_grid:
            variance = var_mean_y(moments, n, N, w2, ell)
            mse_min = family_mse_min(moments, n, N, w2, ell, constants)
            pre = pre_optimum(moments, n, N, w2, ell, constants)
            rows.append((w2, ell, variance, mse_min, pre))

    if args.format == "json":
        payload = {
            "N": N,
            "n": n,
            "alpha_opt": alpha_opt,
            "rho_star": constants.rho_star,
            "big_k": constants.big_k,
            "lambda": constants.lam,
            "rows": [
                {
                    "w2": w2,
                    "ell": ell,
                    "var_hh_mean": variance,
                    "mse_family_min": mse_min,
                    "pre": pre,
                }
                for w2, ell, variance, mse_min, pre in rows
            ],
        }
        report = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        report = _csv_lines(
            ["w2", "ell", "var_hh_mean", "mse_family_min", "pre"],
            [list(row) for row in rows],
        )
    else:
        lines = [
            f"N={N} n={n} k={N // n}  alpha_opt={alpha_opt:.6f}  "
            f"K={constants.big_k:.6f}  rho_star={constants.rho_star:.6f}",
            f"{'w2':>5} {'L':>5} {'var(hh mean)':>16} {'min MSE(family)':>16} {'PRE':>9}",
        ]
        lines.extend(
            f"{w2:>5.2f} {ell:>5.2f} {variance:>16.4f} {mse_min:>16.4f} {pre:>9.2f}"
            for w2, ell, variance, mse_min, pre in rows
        )
        report = "\n".join(lines) + "\n"

    manifest = _manifest(
        "theory-table",
        argv,
        {
            "N": N,
            "n": n,
            "w2_grid": list(args.w2_grid),
            "ell_grid": list(args.ell_grid),
            "a": args.a,
            "b": args.b,
            "g": args.g,
            "moments": dataclasses.asdict(moments),
            "format": args.format,
        },
        input_path=args.input,
        input_sha256=sha,
    )
    _emit(args, report, manifest)
    return 0


def _build_estimators(
    args: argparse.Namespace, alpha: float
) -> tuple[EstimatorSpec, ...]:
    specs = []
    for token in args.estimators.split(","):
        kind = token.strip()
        if not kind:
            continue
        if kind == "family":
            params = FamilyParams(alpha=alpha, g=args.g, a=args.a, b=args.b)
            specs.append(EstimatorSpec(label=kind, kind=kind, params=params))
        else:
            specs.append(EstimatorSpec(label=kind, kind=kind))
    if not specs:
        raise ConfigurationError("no estimators requested")
    return tuple(specs)


def cmd_simulate(args: argparse.Namespace, argv: list[str]) -> int:
    pop, sha = _ingest(args)
    design = SystematicDesign.from_population_size(pop.N, args.n)

    if args.stratum_mode == "fixed":
        size = round(args.w2 * pop.N)
        if size > 0:
            chooser = design_rng(args.seed)
            chosen = chooser.choice(pop.N, size=size, replace=False)
            stratum = frozenset(int(u) + 1 for u in chosen)
        else:
            stratum = frozenset()
        nr = NonResponseModel(
            w2=args.w2, ell=args.ell, mode=StratumMode.FIXED_STRATUM, stratum=stratum
        )
        w2_theory = len(stratum) / pop.N
    else:
        nr = NonResponseModel(
            w2=args.w2, ell=args.ell, mode=StratumMode.BERNOULLI_PER_REPLICATE
        )
        w2_theory = args.w2

    needs_s2y2 = w2_theory > 0 and args.ell > 1
    moments = compute_moments(pop, design)
    if args.s2y2_factor is not None:
        moments = dataclasses.replace(moments, s2_y2=args.s2y2_factor * moments.s2_y)
    elif needs_s2y2:
        if args.stratum_mode == "fixed":
            moments = compute_moments(pop, design, nr_stratum=nr.stratum)
        else:
            # Bernoulli non-response draws uniformly from the whole population,
            # so the stratum mean square defaults to the overall mean square.
            moments = dataclasses.replace(moments, s2_y2=moments.s2_y)

    family_requested = "family" in args.estimators
    params_probe = (
        FamilyParams(alpha=0.0, g=args.g, a=args.a, b=args.b) if family_requested else None
    )
    constants = derived_constants(moments, design.n, design.N, params_probe)
    if args.alpha_policy == "explicit":
        if args.alpha is None:
            raise ConfigurationError("--alpha-policy explicit requires --alpha")
        alpha = args.alpha
    else:
        alpha = optimum_alpha(constants, args.g) if family_requested else 0.0

    specs = _build_estimators(args, alpha)
    cfg = SimulationConfig(
        replicates=args.replicates,
        master_seed=args.seed,
        estimators=specs,
        nr=nr,
        exhaustive_start=args.exhaustive,
    )
    report = run_simulation(pop, design, cfg)

    targets = []
    target_names = {}
    for spec in specs:
        if spec.kind == "hh":
            value = var_mean_y(moments, design.n, design.N, w2_theory, args.ell)
            name = "var(hh mean)"
        elif spec.kind in ("ratio", "product"):
            value = classical_mse(
                spec.kind, moments, design.n, design.N, w2_theory, args.ell, constants
            )
            name = f"first-order MSE({spec.kind})"
        else:
            assert spec.params is not None
            if args.alpha_policy == "optimum":
                value = family_mse_min(
                    moments, design.n, design.N, w2_theory, args.ell, constants
                )
                name = "min MSE(family)"
            else:
                value = family_mse(
                    spec.params, moments, design.n, design.N, w2_theory, args.ell, constants
                )
                name = "first-order MSE(family)"
        targets.append((spec.label, value))
        target_names[spec.label] = name
    comparisons = compare_to_theory(report, targets, tolerance_sigma=args.tolerance_sigma)
    all_pass = all(c.verdict == "PASS" for c in comparisons) and all(
        r.valid for r in report.results
    )

    if args.format == "json":
        payload = {
            "population_sha256": report.population_sha256,
            "true_mean_y": report.true_mean_y,
            "replicates": report.replicates,
            "seed": report.master_seed,
            "exhaustive_start": args.exhaustive,
            "w2_theory": w2_theory,
            "alpha": alpha if family_requested else None,
            "results": [dataclasses.asdict(r) for r in report.results],
            "comparisons": [
                dict(dataclasses.asdict(c), target=target_names[c.label])
                for c in comparisons
            ],
            "all_pass": all_pass,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = []
        for c in comparisons:
            r = report.by_label(c.label)
            rows.append(
                [
                    c.label,
                    r.n_used,
                    r.n_failed,
                    r.empirical_mean,
                    r.empirical_bias,
                    r.empirical_mse,
                    r.mc_se_mse,
                    c.theory_value,
                    c.z_score,
                    c.rel_gap,
                    c.verdict,
                ]
            )
        text = _csv_lines(
            [
                "label",
                "n_used",
                "n_failed",
                "mean",
                "bias",
                "mse",
                "mc_se_mse",
                "theory",
                "z",
                "rel_gap",
                "verdict",
            ],
            rows,
        )
    else:
        lines = [
            f"population sha256={report.population_sha256[:16]}...  "
            f"N={pop.N} n={design.n} k={design.k}",
            f"true mean_y={report.true_mean_y:.6f}  replicates={report.replicates}  "
            f"seed={report.master_seed}  exhaustive={args.exhaustive}",
            f"non-response: mode={args.stratum_mode} w2={args.w2} L={args.ell}"
            + (f"  alpha={alpha:.6f}" if family_requested else ""),
            "",
            f"{'label':<10}{'mean':>14}{'bias':>13}{'MSE':>15}{'MC-SE':>12}"
            f"{'fail':>6}",
        ]
        for r in report.results:
            lines.append(
                f"{r.label:<10}{r.empirical_mean:>14.6f}{r.empirical_bias:>13.6f}"
                f"{r.empirical_mse:>15.6f}{r.mc_se_mse:>12.6f}{r.n_failed:>6d}"
                + ("" if r.valid else "  INVALID")
            )
        lines.append("")
        lines.append(
            f"theory comparison (tolerance {args.tolerance_sigma:g} sigma)"
        )
        lines.append(
            f"{'label':<10}{'target':<26}{'theory':>15}{'z':>9}{'rel-gap':>10}  verdict"
        )
        for c in comparisons:
            lines.append(
                f"{c.label:<10}{target_names[c.label]:<26}{c.theory_value:>15.6f}"
                f"{c.z_score:>9.3f}{c.rel_gap:>10.4f}  {c.verdict}"
            )
        lines.append("")
        lines.append("overall: " + ("PASS" if all_pass else "FAIL"))
        text = "\n".join(lines) + "\n"

    manifest = _manifest(
        "simulate",
        argv,
        {
            "n": args.n,
            "replicates": args.replicates,
            "w2": args.w2,
            "ell": args.ell,
            "stratum_mode": args.stratum_mode,
            "estimators": args.estimators,
            "alpha_policy": args.alpha_policy,
            "alpha": alpha if family_requested else None,
            "a": args.a,
            "b": args.b,
            "g": args.g,
            "exhaustive": args.exhaustive,
            "tolerance_sigma": args.tolerance_sigma,
            "s2y2_factor": args.s2y2_factor,
            "sort_by": args.sort_by,
            "format": args.format,
        },
        input_path=args.input,
        input_sha256=sha,
        seed=args.seed,
    )
    _emit(args, text, manifest)
    return 0 if all_pass else 1


def cmd_synthesize(args: argparse.Namespace, argv: list[str]) -> int:
    pop = synthetic_linear_population(
        args.units,
        rho_target=args.rho,
        seed=args.seed,
        x_low=args.x_low,
        x_high=args.x_high,
        slope=args.slope,
        intercept=args.intercept,
        sort_by_x=args.sort,
    )
    write_population_csv(pop, args.out)
    manifest = _manifest(
        "synthesize",
        argv,
        {
            "units": args.units,
            "rho": args.rho,
            "x_low": args.x_low,
            "x_high": args.x_high,
            "slope": args.slope,
            "intercept": args.intercept,
            "sort": args.sort,
            "out": args.out,
            "output_sha256": file_sha256(args.out),
        },
        seed=args.seed,
    )
    manifest_path = args.manifest or str(args.out) + ".manifest.json"
    Path(manifest_path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return 0


def cmd_rerun(args: argparse.Namespace) -> int:
    with open(args.manifest_file, "r", encoding="utf-8") as handle:
        manifest = json.load(handle)
    argv = manifest.get("argv")
    if not isinstance(argv, list) or not argv:
        raise ConfigurationError(f"manifest {args.manifest_file!r} has no argv to replay")
    return main([str(token) for token in argv])


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        if args.command == "params":
            return cmd_params(args, argv)
        if args.command == "theory-table":
            return cmd_theory_table(args, argv)
        if args.command == "simulate":
            return cmd_simulate(args, argv)
        if args.command == "synthesize":
            return cmd_synthesize(args, argv)
        if args.command == "rerun":
            return cmd_rerun(args)
        raise ConfigurationError(f"unknown command {args.command!r}")
    except EstimationError as exc:
        print(f"sysmean: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"sysmean: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: tabulate operating points and run validation campaigns.

Subcommands
    table1      distance ratio, visibility distance and optimal loss per pass count
    curve       no-object transmission versus per-pass loss
    scaling     invisibility probability and error bound versus trial count
    montecarlo  seeded interrogation campaigns with a bound-comparison block

Angles are given as fractions of pi (``--theta-total 0.5`` means pi/2).
Results go to CSV or JSON files; ``--plot`` renders a PNG next to the data
file.  Every command is deterministic given its arguments and seed.
Exit codes: 0 success, 2 invalid arguments, 3 I/O failure, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .evolution import Hypothesis, PassConfig
from .montecarlo import NoiseModel, empirical_visibility, run_campaign_batch
from .optimizer import distance_report, find_crossover, optimize_loss, sweep, transmission_curve
from .stats import TrialScaling, invisibility_probability, max_error_bound

OUTPUT_DIR_ENV = "QTRIPWIRE_OUTDIR"
TABLE_N_DEFAULT = [5, 10, 11, 12, 13, 20, 50]
CURVE_N_DEFAULT = [5, 20, 100]
SCALING_N_DEFAULT = [20, 50]
SCALING_M_DEFAULT = list(range(0, 101, 10))

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


@dataclass
class RunConfig:
    """Echoable record of one CLI invocation."""

    command: str
    theta_total_pi: list[float]
    n_values: list[int]
    lambda_grid_size: int = 0
    m_values: list[int] = field(default_factory=list)
    seed: int = 0
    output_path: str = ""
    format: str = "csv"
    campaigns: int = 0
    truth: str = ""
    feedback: bool = False
    extra_loss: float = 0.0
    phase_sigma: float = 0.0
    transcript_path: str | None = None
    plot: bool = False


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def write_csv(path: str, columns: list[str], rows: list[dict], comments: list[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[col]) for col in columns) + "\n")
        for line in comments:
            fh.write(f"# {line}\n")


def write_json(path: str, cfg: RunConfig, rows: list[dict], extra: dict) -> None:
    def clean(value):
        if isinstance(value, float) and math.isnan(value):
            return None
        return value

    payload = {
        "meta": {"artifact": "qtripwire", "version": __version__, **asdict(cfg)},
        "rows": [{k: clean(v) for k, v in row.items()} for row in rows],
        **extra,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit(cfg: RunConfig, columns: list[str], rows: list[dict], extra: dict | None = None) -> None:
    extra = extra or {}
    if cfg.format == "csv":
        comments = [f"{key}: {json.dumps(value, sort_keys=True)}" for key, value in extra.items()]
        write_csv(cfg.output_path, columns, rows, comments)
    else:
        write_json(cfg.output_path, cfg, rows, extra)


def _plot_path(output_path: str) -> str:
    stem, _ = os.path.splitext(output_path)
    return stem + ".png"


def cmd_table1(cfg: RunConfig) -> None:
    rows = []
    crossover = {}
    for theta_pi in cfg.theta_total_pi:
        reports = sweep(cfg.n_values, theta_pi * math.pi)
        crossover[str(theta_pi)] = find_crossover(reports)
        for rep in reports:
            rows.append(
                {
                    "theta_total_pi": theta_pi,
                    "n": rep.point.n_passes,
                    "ratio": rep.ratio,
                    "c_vis": rep.c_vis,
                    "lambda": rep.point.lambda_opt,
                    "c2": rep.c2,
                    "q_min": rep.point.q_min,
                    "p": rep.point.p,
                    "boundary": rep.point.at_boundary,
                }
            )
    columns = ["theta_total_pi", "n", "ratio", "c_vis", "lambda", "c2", "q_min", "p", "boundary"]
    emit(cfg, columns, rows, {"crossover": crossover})
    if cfg.plot:
        from .plotting import distance_figure

        distance_figure(rows, _plot_path(cfg.output_path))


def cmd_curve(cfg: RunConfig) -> None:
    if cfg.lambda_grid_size < 2:
        raise ValueError(f"--grid must be >= 2, got {cfg.lambda_grid_size}")
    theta_pi = cfg.theta_total_pi[0]
    grid = [i / (cfg.lambda_grid_size - 1) for i in range(cfg.lambda_grid_size)]
    rows = []
    series = {}
    for n in cfg.n_values:
        pairs = transmission_curve(n, theta_pi * math.pi, grid)
        series[n] = pairs
        rows.extend(
            {"theta_total_pi": theta_pi, "n": n, "lambda": lam, "p_tr": q} for lam, q in pairs
        )
    emit(cfg, ["theta_total_pi", "n", "lambda", "p_tr"], rows)
    if cfg.plot:
        from .plotting import transmission_figure

        transmission_figure(series, _plot_path(cfg.output_path))


def cmd_scaling(cfg: RunConfig) -> None:
    if not cfg.m_values:
        raise ValueError("--m must list at least one trial count")
    if any(m < 0 for m in cfg.m_values):
        raise ValueError("trial counts must be >= 0")
    theta_pi = cfg.theta_total_pi[0]
    rows = []
    for n in cfg.n_values:
        rep = distance_report(optimize_loss(n, theta_pi * math.pi / n))
        for m in sorted(cfg.m_values):
            scaling = TrialScaling(m, rep.c2, rep.c_vis)
            rows.append(
                {
                    "theta_total_pi": theta_pi,
                    "n": n,
                    "m": m,
                    "p_vis": invisibility_probability(scaling),
                    "p_e_max": max_error_bound(scaling),
                }
            )
    emit(cfg, ["theta_total_pi", "n", "m", "p_vis", "p_e_max"], rows)
    if cfg.plot:
        from .plotting import scaling_figure

        scaling_figure(rows, _plot_path(cfg.output_path))


def cmd_montecarlo(cfg: RunConfig) -> None:
    if cfg.campaigns < 1:
        raise ValueError(f"--campaigns must be >= 1, got {cfg.campaigns}")
    theta_pi = cfg.theta_total_pi[0]
    n = cfg.n_values[0]
    m = cfg.m_values[0]
    point = optimize_loss(n, theta_pi * math.pi / n)
    rep = distance_report(point)
    pass_cfg = PassConfig(n, point.theta_per_pass, point.lambda_opt)
    noise = NoiseModel(extra_loss=cfg.extra_loss, phase_sigma=cfg.phase_sigma, drift_seed=cfg.seed)
    truths = {
        "absent": [Hypothesis.OBJECT_ABSENT],
        "present": [Hypothesis.OBJECT_PRESENT],
        "both": [Hypothesis.OBJECT_ABSENT, Hypothesis.OBJECT_PRESENT],
    }[cfg.truth]

    scaling = TrialScaling(m, rep.c2, rep.c_vis)
    bound = max_error_bound(scaling)
    expected_vis = invisibility_probability(scaling)
    rows = []
    comparison = {}
    transcript_lines = []
    for truth in truths:
        results = run_campaign_batch(
            pass_cfg, truth, noise, m, cfg.campaigns, cfg.feedback, cfg.seed
        )
        rows.extend(
            {"record_type": "campaign", "campaign_index": i, **result.to_record()}
            for i, result in enumerate(results)
        )
        transcript_lines.extend(result.to_json_line() for result in results)
        summary = {
            "campaigns": cfg.campaigns,
            "empirical_error": sum(r.decision_error for r in results) / cfg.campaigns,
            "error_bound_p_e_max": bound,
        }
        if truth is Hypothesis.OBJECT_PRESENT:
            summary["empirical_invisibility"] = empirical_visibility(results)
            summary["expected_invisibility"] = expected_vis
        comparison[truth.name] = summary

    columns = [
        "record_type",
        "campaign_index",
        "truth",
        "m_trials",
        "transmitted_frequency",
        "decision",
        "decision_error",
        "strikes",
        "stayed_invisible",
    ]
    emit(cfg, columns, rows, {"comparison": comparison, "operating_point": {
        "n": n, "theta_total_pi": theta_pi, "lambda": point.lambda_opt,
        "p": point.p, "q_min": point.q_min, "c2": rep.c2, "c_vis": rep.c_vis}})
    if cfg.transcript_path:
        with open(cfg.transcript_path, "w", encoding="utf-8") as fh:
            fh.writelines(line + "\n" for line in transcript_lines)
    for truth_name, summary in comparison.items():
        print(f"{truth_name}: {json.dumps(summary, sort_keys=True)}")
    if cfg.plot:
        from .plotting import montecarlo_figure

        montecarlo_figure(rows, _plot_path(cfg.output_path))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtripwire",
        description="Partial-Zeno tripwire operating points, testing distances and campaigns.",
    )
    parser.add_argument("--version", action="version", version=f"qtripwire {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_theta, multi_theta=False):
        p.add_argument(
            "--theta-total",
            type=float,
            nargs="+" if multi_theta else None,
            default=default_theta,
            help="total rotation as a fraction of pi (0.5 means pi/2)",
        )
        p.add_argument("--seed", type=int, default=None, help="random seed")
        p.add_argument("--out", type=str, default=None, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--plot", action="store_true", help="also render a PNG figure")

    p_table = sub.add_parser("table1", help="operating-point table over pass counts")
    add_common(p_table, default_theta=[0.5, 0.25], multi_theta=True)
    p_table.add_argument("--n", type=int, nargs="+", default=TABLE_N_DEFAULT)

    p_curve = sub.add_parser("curve", help="transmission versus per-pass loss")
    add_common(p_curve, default_theta=0.5)
    p_curve.add_argument("--n", type=int, nargs="+", default=CURVE_N_DEFAULT)
    p_curve.add_argument("--grid", type=int, default=101, help="number of loss grid points")

    p_scaling = sub.add_parser("scaling", help="invisibility and error bound versus trials")
    add_common(p_scaling, default_theta=0.5)
    p_scaling.add_argument("--n", type=int, nargs="+", default=SCALING_N_DEFAULT)
    p_scaling.add_argument("--m", type=int, nargs="+", default=SCALING_M_DEFAULT)

    p_mc = sub.add_parser("montecarlo", help="seeded interrogation campaigns")
    add_common(p_mc, default_theta=0.5)
    p_mc.add_argument("--n", type=int, default=20)
    p_mc.add_argument("--m", type=int, default=50, help="trials per campaign")
    p_mc.add_argument("--campaigns", type=int, default=200)
    p_mc.add_argument("--truth", choices=("absent", "present", "both"), default="both")
    p_mc.add_argument("--feedback", action="store_true")
    p_mc.add_argument("--extra-loss", type=float, default=0.0)
    p_mc.add_argument("--phase-sigma", type=float, default=0.0)
    p_mc.add_argument(
        "--transcript", type=str, default=None,
        help="also write one JSON record per campaign to this path",
    )
    return parser


def _to_run_config(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        seed = 0
        if args.command == "montecarlo":
            print("warning: no --seed given, defaulting to 0", file=sys.stderr)

    theta = args.theta_total if isinstance(args.theta_total, list) else [args.theta_total]
    if any(not 0.0 < t <= 0.5 for t in theta):
        raise ValueError("--theta-total fractions must lie in (0, 0.5]")

    out = args.out
    if out is None:
        out = os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), f"{args.command}.{args.format}")

    n_values = args.n if isinstance(args.n, list) else [args.n]
    if any(n < 1 for n in n_values):
        raise ValueError("pass counts must be >= 1")

    cfg = RunConfig(
        command=args.command,
        theta_total_pi=theta,
        n_values=n_values,
        seed=seed,
        output_path=out,
        format=args.format,
        plot=args.plot,
    )
    if args.command == "curve":
        cfg.lambda_grid_size = args.grid
    if args.command == "scaling":
        cfg.m_values = list(args.m)
    if args.command == "montecarlo":
        cfg.m_values = [args.m]
        cfg.campaigns = args.campaigns
        cfg.truth = args.truth
        cfg.feedback = args.feedback
        cfg.extra_loss = args.extra_loss
        cfg.phase_sigma = args.phase_sigma
        cfg.transcript_path = args.transcript
        if args.m < 1:
            raise ValueError("--m must be >= 1 for montecarlo")
    return cfg


COMMANDS = {
    "table1": cmd_table1,
    "curve": cmd_curve,
    "scaling": cmd_scaling,
    "montecarlo": cmd_montecarlo,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _to_run_config(args)
        COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

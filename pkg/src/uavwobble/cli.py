"""Command-line front end.

Subcommands
-----------
sigma-d            displacement variance vs time separation
acf                closed-form + Monte Carlo temporal ACF
psd                Doppler PSD from the closed-form ACF
bep                average bit error probability vs time since estimation
reproduce-figure   run one of the registered figure ids
run                execute a scenario file

Each command writes delimited data (CSV by default), a rendered PNG and
a plot script into --out, plus a JSON manifest.  Identical parameters
and seed give byte-identical data files for any --workers value.

Conventions: angular frequencies are rad/s, the symbol SNR is the
average Es/N0 of a unit-energy constellation, and Monte Carlo ensembles
draw one independent stream per realization from the master seed.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, reproduce_figure
from .scenario import PRODUCTS, ScenarioError, load_scenario, run_scenario, scenario_from_mapping


def _add_common(parser: argparse.ArgumentParser, product: str) -> None:
    parser.add_argument("--sigma-v", type=float, required=True,
                        help="velocity envelope standard deviation (m/s)")
    parser.add_argument("--mu", type=float, default=0.0,
                        help="envelope decorrelation rate (1/s); 0 switches drift correlation off")
    parser.add_argument("--omega-v", type=float, default=0.0,
                        help="mechanical vibration angular frequency (rad/s); 0 switches vibration off")
    parser.add_argument("--fc-hz", type=float, default=28e9, help="carrier frequency (Hz)")
    parser.add_argument("--dt", type=float, default=None,
                        help="simulation step (s); default: >=200 samples per fastest time scale")
    parser.add_argument("--t-max", type=float, default=None,
                        help="horizon (s); product-specific default")
    parser.add_argument("--realizations", type=int, default=10_000,
                        help="Monte Carlo ensemble size")
    parser.add_argument("--seed", type=int, default=1, help="master seed")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="delimited output format")
    parser.add_argument("--workers", type=int, default=1,
                        help="process count for the ensemble (does not change results)")
    if product == "psd":
        parser.add_argument("--window", choices=("rect", "hann"), default="rect",
                            help="lag window applied before the transform")
        parser.add_argument("--pad-factor", type=int, default=4,
                            help="zero-padding factor (frequency grid refinement)")
    if product == "abep":
        parser.add_argument("--scheme", choices=("psk", "qam"), default="psk")
        parser.add_argument("--order", type=int, default=4, help="constellation order M")
        parser.add_argument("--snr-db", type=float, default=20.0,
                            help="average symbol SNR (dB)")


def _scenario_values(args: argparse.Namespace, product: str) -> dict[str, object]:
    values: dict[str, object] = {
        "sigma_v": args.sigma_v,
        "mu": args.mu,
        "omega_v": args.omega_v,
        "f_c_hz": args.fc_hz,
        "n_realizations": args.realizations,
        "seed": args.seed,
        "products": (product,),
    }
    if args.dt is not None:
        values["dt"] = args.dt
    if args.t_max is not None:
        values["t_max"] = args.t_max
    if product == "psd":
        values["window"] = args.window
        values["pad_factor"] = args.pad_factor
    if product == "abep":
        values["scheme"] = args.scheme
        values["m_order"] = args.order
        values["snr_db"] = args.snr_db
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavwobble",
        description="Doppler analysis of a wobbling hovering-UAV mmWave ground link",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for command, product in (
        ("sigma-d", "sigma_d2"),
        ("acf", "acf"),
        ("psd", "psd"),
        ("bep", "abep"),
    ):
        p = sub.add_parser(command, help=f"compute the {product} product")
        _add_common(p, product)
        p.set_defaults(product=product)

    p = sub.add_parser("reproduce-figure", help="run a registered figure id")
    p.add_argument("figure", choices=sorted(FIGURES), metavar="FIGURE",
                   help="figure id, e.g. fig3b (see --list)")
    p.add_argument("--realizations", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="out")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("run", help="execute a scenario file")
    p.add_argument("scenario", help="path to a key=value scenario file")
    p.add_argument("--out", default="out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce-figure":
            report = reproduce_figure(
                args.figure,
                args.out,
                n_realizations=args.realizations,
                seed=args.seed,
                workers=args.workers,
            )
        elif args.command == "run":
            scenario = load_scenario(args.scenario)
            report = run_scenario(scenario, args.out, workers=args.workers, fmt=args.format)
        else:
            scenario = scenario_from_mapping(
                _scenario_values(args, args.product), origin="<cli>"
            )
            report = run_scenario(
                scenario, args.out, workers=args.workers, fmt=args.format,
                stem=args.command.replace("-", "_"),
            )
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for name in report.files:
        print(f"wrote {report.out_dir / name}")
    print(f"wrote {report.manifest_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

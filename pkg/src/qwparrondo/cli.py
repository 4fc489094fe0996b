"""Command-line entry point.

Usage::

    qwparrondo presets
    qwparrondo run --preset fig3c --out fig3c.csv --emit-distribution
    qwparrondo run --scenario my.json --steps 100
    qwparrondo validate-coin --kind qutrit --params pi,pi/2,pi,pi --convention as-printed
    qwparrondo oracle-check --preset fig3c --steps 6
    qwparrondo sweep --grid grid.json --out table.csv

Exit codes: 0 success, 1 validation/unitarity error, 2 runtime error,
3 oracle-check failure.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from .coins import KTermConvention, build_qutrit, build_su2, unitarity_defect
from .errors import UnitarityError, WalkError
from .payoff import classify, payoff_csv
from .scenarios import (
    PRESETS,
    get_preset,
    load_grid,
    load_scenario,
    oracle_check,
    run_scenario,
    sweep,
    sweep_csv,
)
from .state import distribution_json

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME, EXIT_ORACLE = 0, 1, 2, 3

_PI_TERM = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?$")


def parse_angle(text: str) -> float:
    """Float, or a multiple of pi such as ``pi``, ``3pi/2``, ``-pi/8``, ``2*pi``."""
    s = text.strip().replace(" ", "").lower()
    m = _PI_TERM.match(s)
    if m:
        coef = m.group(1)
        coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / den
    return float(s)


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _load_config(args):
    if args.scenario:
        return load_scenario(Path(args.scenario).read_text(encoding="utf-8"))
    return get_preset(args.preset).config


def cmd_run(args) -> int:
    config = _load_config(args)
    result = run_scenario(config, steps=args.steps)
    _write(payoff_csv(result.points), args.out)
    if args.emit_distribution is not None:
        target = args.emit_distribution
        if not target:
            if not args.out:
                raise WalkError("--emit-distribution needs a path when --out is not given")
            target = str(Path(args.out).with_suffix(".distribution.json"))
        Path(target).write_text(distribution_json(result.final_state) + "\n", encoding="utf-8")
    final = result.points[-1]
    print(
        f"{config.name or 'scenario'}: t={final.t} payoff={final.payoff:+.6f} "
        f"({classify(final.payoff).value})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_validate_coin(args) -> int:
    params = [parse_angle(p) for p in args.params.split(",")]
    if args.unit == "deg":
        params = [math.radians(p) for p in params]
    expected = 3 if args.kind == "qubit" else 4
    if len(params) != expected:
        raise WalkError(f"{args.kind} coin takes {expected} parameters, got {len(params)}")
    try:
        if args.kind == "qubit":
            coin = build_su2(params)
        else:
            coin = build_qutrit(params, KTermConvention.parse(args.convention))
    except UnitarityError as exc:
        print(f"NOT UNITARY: defect {exc.defect:.6g}", file=sys.stderr)
        return EXIT_INVALID
    with np.printoptions(precision=6, suppress=True):
        print(coin.matrix)
    print(f"unitary: defect {unitarity_defect(coin.matrix):.3g}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    config = _load_config(args)
    report = oracle_check(config, args.steps)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: N={report.steps} max |engine - oracle| = {report.max_diff:.3g} "
          f"(tolerance {report.tolerance:.0e})")
    return EXIT_OK if report.passed else EXIT_ORACLE


def cmd_sweep(args) -> int:
    grid = load_grid(Path(args.grid).read_text(encoding="utf-8"))
    if args.workers is not None:
        from dataclasses import replace

        grid = replace(grid, workers=args.workers)
    _write(sweep_csv(sweep(grid)), args.out)
    return EXIT_OK


def cmd_presets(args) -> int:
    for name, preset in PRESETS.items():
        expected = preset.expected.value if preset.expected else "-"
        print(f"{name:<12} steps={preset.config.steps:<4} expected={expected:<5} {preset.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwparrondo", description="Qubit/qutrit quantum-walk Parrondo games."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario and emit the payoff series as CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", help="path to a JSON scenario file")
    src.add_argument("--preset", help="figure preset name (see 'presets')")
    p.add_argument("--steps", type=int, help="override the number of steps")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--emit-distribution", nargs="?", const="", metavar="PATH",
                   help="also write the final position distribution as JSON")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate-coin", help="build a coin and report its unitarity defect")
    p.add_argument("--kind", choices=("qubit", "qutrit"), required=True)
    p.add_argument("--params", required=True, help="comma-separated angles, e.g. pi,pi/2,pi,pi")
    p.add_argument("--convention", default="corrected", choices=("corrected", "as-printed", "as_printed"))
    p.add_argument("--unit", default="rad", choices=("rad", "deg"))
    p.set_defaults(func=cmd_validate_coin)

    p = sub.add_parser("oracle-check", help="compare the engine with path enumeration")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario")
    src.add_argument("--preset")
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("sweep", help="classify a grid of qutrit coin parameters")
    p.add_argument("--grid", required=True)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("presets", help="list figure presets and expected outcomes")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WalkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

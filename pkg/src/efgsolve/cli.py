"""Command-line entry point.

Subcommands:

* ``solve`` -- run a solver, write a metrics CSV and a strategy JSON.
* ``exact`` -- print the analytic reference solution for a game.
* ``eval``  -- score a stored strategy JSON against its game.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 validation
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from efgsolve import _kernels
from efgsolve.analysis import exploitability, utility_gap_report
from efgsolve.evaluate import expected_value
from efgsolve.games import GameParams, UnsupportedParameters, asymmetric_reference, bet_raise_reference
from efgsolve.solvers import ALGORITHMS, SCHEDULES, RunConfig, build_game, run
from efgsolve.tree import BehaviorProfile, validate_game

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VALIDATION = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _add_game_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--game", choices=("asym", "betraise"), required=True)
    p.add_argument("--hands", type=int, default=100, help="hands per player (N)")
    p.add_argument("--pot", type=float, default=1.0, help="initial pot P = 2*ante")
    p.add_argument("--bet", type=float, default=1.0)
    p.add_argument("--raise", dest="raise_size", type=float, default=None,
                   help="raise size (betraise only; defaults to the bet size)")
    p.add_argument("--eps", "--epsilon", dest="epsilon", type=float, default=0.0,
                   help="minimum action probability of the perturbed game")


def _game_params(args) -> GameParams:
    raise_size = args.raise_size
    if args.game == "betraise" and raise_size is None:
        raise_size = args.bet
    try:
        return GameParams.from_pot(args.hands, args.pot, args.bet,
                                   raise_size=raise_size, epsilon=args.epsilon)
    except ValueError as e:
        raise CliError(str(e), EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="efgsolve", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a solver and write metrics + strategy files")
    _add_game_flags(p)
    p.add_argument("--alg", choices=ALGORITHMS, required=True)
    p.add_argument("--schedule", choices=SCHEDULES, default="alternating")
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--snapshot-interval", type=int, default=10_000)
    p.add_argument("--init", choices=("uniform", "random"), default="uniform")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--seeds", metavar="A..B",
                   help="run one config per seed in the inclusive range, concurrently; "
                        "output paths get a _seed<k> suffix")
    p.add_argument("--metrics", type=Path, default=Path("metrics.csv"))
    p.add_argument("--strategy", type=Path, default=Path("strategy.json"))

    p = sub.add_parser("exact", help="print the analytic reference solution")
    _add_game_flags(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("eval", help="evaluate a stored strategy JSON")
    _add_game_flags(p)
    p.add_argument("strategy", type=Path)
    p.add_argument("--gaps", action="store_true",
                   help="per-information-set option utility gap table")
    p.add_argument("--constrained", action="store_true",
                   help="measure exploitability against best responses that "
                        "respect the --eps probability floor")
    return parser


# -- solve --------------------------------------------------------------------


def _fmt(x: float) -> str:
    # fixed 13 significant digits; %g would trim trailing zeros
    return format(x, ".12e")


def _suffixed(path: Path, seed: int) -> Path:
    return path.with_name(f"{path.stem}_seed{seed}{path.suffix}")


def _write_outputs(config: RunConfig, metrics_path: Path, strategy_path: Path) -> None:
    series, profile = run(config)
    try:
        with open(metrics_path, "w") as f:
            f.write("iteration,value,exploitability\n")
            for rec in series:
                f.write(f"{rec.iteration},{_fmt(rec.value)},{_fmt(rec.exploitability)}\n")
        payload = {
            "metadata": {
                "game": config.game,
                "hands": config.params.n_hands,
                "pot": config.params.pot,
                "bet": config.params.bet,
                "raise": config.params.raise_size,
                "epsilon": config.params.epsilon,
                "algorithm": config.algorithm,
                "schedule": config.schedule,
                "iterations": config.iterations,
                "snapshot_interval": config.snapshot_interval,
                "init": config.init,
                "seed": config.seed,
                "backend": _kernels.BACKEND,
            },
            "strategy": profile.to_mapping(),
        }
        with open(strategy_path, "w") as f:
            json.dump(payload, f, indent=1, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise CliError(f"cannot write output: {e}", EXIT_IO)
    print(f"wrote {metrics_path} ({len(series)} rows) and {strategy_path}")


def cmd_solve(args) -> int:
    params = _game_params(args)
    try:
        base = RunConfig(game=args.game, params=params, algorithm=args.alg,
                         iterations=args.iters, schedule=args.schedule,
                         snapshot_interval=args.snapshot_interval,
                         init=args.init, seed=args.seed)
    except ValueError as e:
        raise CliError(str(e), EXIT_CONFIG)

    if args.seeds is None:
        _write_outputs(base, args.metrics, args.strategy)
        return EXIT_OK

    try:
        lo, hi = (int(s) for s in args.seeds.split("..", 1))
    except ValueError:
        raise CliError(f"--seeds wants A..B, got {args.seeds!r}", EXIT_CONFIG)
    if hi < lo:
        raise CliError(f"empty seed range {args.seeds!r}", EXIT_CONFIG)
    configs = [RunConfig(game=base.game, params=base.params, algorithm=base.algorithm,
                         iterations=base.iterations, schedule=base.schedule,
                         snapshot_interval=base.snapshot_interval,
                         init=base.init, seed=k)
               for k in range(lo, hi + 1)]
    with ThreadPoolExecutor(max_workers=min(8, len(configs))) as ex:
        futures = [ex.submit(_write_outputs, c,
                             _suffixed(args.metrics, c.seed),
                             _suffixed(args.strategy, c.seed))
                   for c in configs]
        for f in futures:
            f.result()
    return EXIT_OK


# -- exact --------------------------------------------------------------------


def _nice(x: float) -> str:
    frac = Fraction(x).limit_denominator(10**6)
    if abs(float(frac) - x) < 1e-12 and frac.denominator <= 10_000:
        return f"{frac.numerator}/{frac.denominator} = {x:.6f}"
    return f"{x:.6f}"


def cmd_exact(args) -> int:
    params = _game_params(args)
    try:
        if args.game == "asym":
            ref = asymmetric_reference(params.ante, params.bet)
        else:
            ref = bet_raise_reference(params.ante, params.bet, params.raise_size)
    except UnsupportedParameters as e:
        raise CliError(str(e), EXIT_CONFIG)

    if args.json:
        json.dump({
            "game": args.game,
            "p1_thresholds": ref.p1_thresholds,
            "p2_thresholds": ref.p2_thresholds,
            "p1_intervals": ref.p1_intervals,
            "p2_intervals": ref.p2_intervals,
            "free_thresholds": list(ref.free_thresholds),
            "game_value": ref.game_value,
        }, sys.stdout, indent=1, sort_keys=True)
        print()
        return EXIT_OK

    print(f"game: {args.game}  (pot={params.pot}, bet={params.bet}"
          + (f", raise={params.raise_size}" if args.game == "betraise" else "") + ")")
    print("player 1 thresholds:")
    for name, x in ref.p1_thresholds.items():
        print(f"  {name} = {_nice(x)}")
    if ref.tied_thresholds:
        for name, (anchor, off) in ref.tied_thresholds.items():
            print(f"  {name} = {anchor} {'-' if off < 0 else '+'} {_nice(abs(off)).split(' = ')[0]}")
    if ref.free_thresholds:
        print(f"  {', '.join(ref.free_thresholds)}: free")
    print(f"player 1 intervals: {' | '.join(ref.p1_intervals)}")
    for context, thresholds in ref.p2_thresholds.items():
        print(f"player 2 thresholds ({context}):")
        for name, y in thresholds.items():
            print(f"  {name} = {_nice(y)}")
        print(f"player 2 intervals ({context}): {' | '.join(ref.p2_intervals[context])}")
    if ref.game_value is not None:
        print(f"game value (player 1): {_nice(ref.game_value)}")
    return EXIT_OK


# -- eval ---------------------------------------------------------------------


def _load_strategy(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", EXIT_IO)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}",
                       EXIT_IO)
    if not isinstance(doc, dict) or "strategy" not in doc:
        raise CliError(f"{path}: expected an object with a 'strategy' block", EXIT_VALIDATION)
    return doc


def cmd_eval(args) -> int:
    doc = _load_strategy(args.strategy)
    params = _game_params(args)
    config = RunConfig(game=args.game, params=params, algorithm="gxfp", iterations=0)
    tree = build_game(config)
    report = validate_game(tree)
    if not report.ok:
        raise CliError("game failed validation: " + "; ".join(report.violations), EXIT_VALIDATION)
    try:
        profile = BehaviorProfile.from_mapping(tree, doc["strategy"])
    except (KeyError, ValueError, TypeError) as e:
        raise CliError(f"{args.strategy}: strategy does not match the game: {e}",
                       EXIT_VALIDATION)
    problems = profile.check()
    if problems:
        raise CliError(f"{args.strategy}: " + "; ".join(problems[:5]), EXIT_VALIDATION)

    br_eps = params.epsilon if args.constrained else 0.0
    print(f"value (player 1):   {_fmt(expected_value(tree, profile))}")
    print(f"exploitability:     {_fmt(exploitability(tree, profile, epsilon=br_eps))}")
    if args.gaps:
        pairs = {s.key: (s.action_labels[1], s.action_labels[0]) for s in tree.infosets}
        rep = utility_gap_report(tree, profile, pairs)
        print(f"{'infoset':<18} {'gap (second-first)':>20}")
        for row in rep.rows:
            gap = "unreachable" if not row.reachable else _fmt(row.gap)
            print(f"{row.infoset_key:<18} {gap:>20}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"solve": cmd_solve, "exact": cmd_exact, "eval": cmd_eval}[args.command]
    try:
        return handler(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())

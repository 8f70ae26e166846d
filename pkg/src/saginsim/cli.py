"""Command-line entry point.

Subcommands: run (sweep to CSV), validate (config check), angle (coverage
geometry report).  Exit codes: 0 success, 2 configuration or usage error,
1 runtime failure.
"""

import argparse
import math
import sys

from .amud import CoverageDesign, SchemeId
from .config import ConfigError, SimConfig, load_config, validate_config
from .experiments import ALL_SCHEMES, AXIS_PRESETS, Axis, SweepSpec, run_sweep, write_csv

SWEEP_NAMES = {
    "excess-users": Axis.EXCESS_USERS,
    "leo-power": Axis.LEO_TX_POWER,
    "leo-altitude": Axis.LEO_ALTITUDE,
    "fairness": Axis.FAIRNESS_USERS,
}

_SCHEME_BY_NAME = {s.value: s for s in ALL_SCHEMES}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits 2 on usage errors already; keep message on stderr
        self.exit(2, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="sagin-sim", description="Satellite/UAV-relay downlink sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a sweep and write a CSV")
    run.add_argument("--sweep", required=True, choices=sorted(SWEEP_NAMES))
    run.add_argument("--schemes", default="amud,egc,leo-gbs,gbs-only",
                     help="comma-separated scheme names")
    run.add_argument("--trials", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--config", default=None)
    run.add_argument("--out", required=True)

    val = sub.add_parser("validate", help="check a config file")
    val.add_argument("--config", required=True)

    ang = sub.add_parser("angle", help="print the optimal elevation geometry")
    ang.add_argument("--env", default="urban", choices=["urban"])
    ang.add_argument("--config", default=None)
    return p


def _load(path):
    return load_config(path) if path else SimConfig()


def _parse_schemes(text: str):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ConfigError("no schemes given")
    try:
        return [_SCHEME_BY_NAME[n] for n in names]
    except KeyError as exc:
        known = ", ".join(sorted(_SCHEME_BY_NAME))
        raise ConfigError(f"unknown scheme {exc.args[0]!r} (known: {known})") from exc


def cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg = _load(args.config)
        validate_config(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        print(f"config OK: {args.config}")
        return 0

    if args.command == "angle":
        try:
            design = CoverageDesign.from_env(cfg.a2g_params(), cfg.uav_altitude_m,
                                             cfg.pl_max_db)
        except Exception as exc:
            print(f"runtime error: {exc}", file=sys.stderr)
            return 1
        print(f"optimal elevation angle: {math.degrees(design.theta_opt):.2f} deg "
              f"({design.theta_opt:.4f} rad)")
        print(f"coverage radius: {design.radius:.2f} m")
        print(f"max link distance: {design.d_max:.2f} m")
        return 0

    # run
    try:
        schemes = _parse_schemes(args.schemes)
        trials = args.trials if args.trials is not None else cfg.trials
        seed = args.seed if args.seed is not None else cfg.base_seed
        axis = SWEEP_NAMES[args.sweep]
        spec = SweepSpec(axis=axis, values=list(AXIS_PRESETS[axis]), schemes=schemes,
                         trials=trials, base_seed=seed)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        rows = run_sweep(spec, cfg)
        write_csv(rows, args.out)
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()

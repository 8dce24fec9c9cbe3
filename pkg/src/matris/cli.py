"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numerical failure
(singular geometry).
"""

import argparse
import json
import sys
from pathlib import Path

from .channel import SingularGeometryError
from .experiments import ConfigError, ExperimentConfig, run_single, write_outputs


def _load_config(path: str, scenario: str | None = None, seed: int | None = None):
    config = ExperimentConfig.from_file(path)
    if scenario is not None and scenario != config.scenario:
        config.scenario = scenario
        config.validate()
    if seed is not None:
        config.seed = seed
        config.validate()
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matris",
        description="Movable-antenna + transmissive-surface SNR experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and write CSV/meta outputs")
    run.add_argument("scenario", help="scenario id (overrides the config's scenario)")
    run.add_argument("--config", required=True, help="path to a JSON config file")
    run.add_argument("--out", default=None, help="output directory (default: config out_dir)")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument("--workers", type=int, default=1, help="bounded worker pool size")

    val = sub.add_parser("validate", help="validate a config file")
    val.add_argument("--config", required=True)

    trace = sub.add_parser("trace", help="run one AO instance and dump the trace JSON")
    trace.add_argument("--config", required=True)
    trace.add_argument("--out", required=True, help="output trace file (.json)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            _load_config(args.config)
            print("config OK")
            return 0
        if args.command == "run":
            config = _load_config(args.config, scenario=args.scenario, seed=args.seed)
            out_dir = args.out if args.out is not None else config.out_dir
            paths = write_outputs(config, out_dir, workers=max(1, args.workers))
            for kind, path in paths.items():
                print(f"{kind}: {path}")
            return 0
        if args.command == "trace":
            config = _load_config(args.config)
            config.scenario = "single_run"
            _, extra = run_single(config)
            out = Path(args.out)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(json.dumps(extra["trace"], indent=2) + "\n")
            print(f"trace: {out}")
            return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SingularGeometryError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

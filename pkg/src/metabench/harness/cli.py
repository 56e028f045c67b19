"""Command-line entry point: ``metabench {run,compare,bias,list}``.

Exit codes: 0 success, 2 configuration error, 3 I/O error. Diagnostics go to
stderr; paths of written artifacts go to stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from metabench.core import ConfigError
from metabench.harness.config import ExperimentConfig, load_config, parse_shift
from metabench.harness.experiment import compare_origin_bias, list_algorithms, run_experiment

EXIT_CONFIG = 2
EXIT_IO = 3

log = logging.getLogger("metabench")

_SHORTHAND = ("algo", "function", "dim", "pop", "gens", "seed", "repeats", "out", "shift")


def _param_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_params(items) -> dict:
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--param expects key=value, got {item!r}")
        params[key.strip()] = _param_value(value.strip())
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metabench",
        description="Benchmark GA, PSO, GWO, DE and SA on the peaks and Rastrigin functions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a config file or from flags")
    p_run.add_argument("--config", type=Path, help="JSON experiment configuration")
    p_run.add_argument("--algo", help="algorithm id (ga, pso, gwo, de, sa)")
    p_run.add_argument("--function", choices=("peaks", "rastrigin"))
    p_run.add_argument("--dim", type=int)
    p_run.add_argument("--pop", type=int)
    p_run.add_argument("--gens", type=int)
    p_run.add_argument("--seed", type=int, help="base seed of the repeats")
    p_run.add_argument("--repeats", type=int)
    p_run.add_argument("--out", type=Path)
    p_run.add_argument("--shift", help="comma-separated shift vector, or one value for all dimensions")
    p_run.add_argument("--param", action="append", metavar="KEY=VALUE", help="algorithm parameter override")
    p_run.add_argument("--workers", type=int, default=1)

    p_cmp = sub.add_parser("compare", help="all five algorithms under one shared budget")
    p_cmp.add_argument("--config", type=Path, required=True)
    p_cmp.add_argument("--workers", type=int, default=1)

    p_bias = sub.add_parser("bias", help="paired shifted/unshifted origin-bias experiment")
    p_bias.add_argument("--config", type=Path, required=True)
    p_bias.add_argument("--shift", required=True)
    p_bias.add_argument("--workers", type=int, default=1)

    sub.add_parser("list", help="list algorithms, parameters and defaults")
    return parser


def _shorthand_config(args) -> ExperimentConfig:
    missing = [f"--{k}" for k in ("algo", "function", "pop", "gens", "out") if getattr(args, k) is None]
    if missing:
        raise ConfigError(f"run without --config needs {', '.join(missing)}")
    objective = {"name": args.function, "dim": args.dim}
    if args.shift is not None:
        objective["shift"] = parse_shift(args.shift)
    return ExperimentConfig.from_dict(
        {
            "objective": objective,
            "algorithms": [{"id": args.algo, "params": parse_params(args.param)}],
            "pop_size": args.pop,
            "generations": args.gens,
            "repeats": 10 if args.repeats is None else args.repeats,
            "base_seed": 0 if args.seed is None else args.seed,
            "output_dir": str(args.out),
        }
    )


def _print_files(files) -> None:
    for path in files:
        print(path)


def _dispatch(args) -> None:
    if args.command == "list":
        for algo, entry in list_algorithms().items():
            print(f"{algo}\t{entry['name']}")
            for name, default in entry["params"].items():
                print(f"  {name} = {default}")
        return

    if args.workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {args.workers}")

    if args.command == "run":
        if args.config is not None:
            used = [f"--{k}" for k in _SHORTHAND if getattr(args, k) is not None]
            if used or args.param:
                raise ConfigError(f"--config cannot be combined with {', '.join(used or ['--param'])}")
            config = load_config(args.config)
        else:
            config = _shorthand_config(args)
        report = run_experiment(config, args.workers)
        _print_files(report.files)
    elif args.command == "compare":
        config = load_config(args.config).with_all_algorithms()
        report = run_experiment(config, args.workers)
        _print_files(report.files)
    elif args.command == "bias":
        config = load_config(args.config)
        report = compare_origin_bias(config, parse_shift(args.shift), args.workers)
        for algo, ratio in report.ratios.items():
            print(f"{algo}: shifted/unshifted median ratio {ratio:.6g}", file=sys.stderr)
        _print_files(report.files)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        _dispatch(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())

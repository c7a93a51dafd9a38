"""Command-line entry point, ``exocap <verb> ...``.

Every failure prints one line ``error: <Category>: <message>`` to stderr and
exits with status 1; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from exocap.exceptions import BaseError, ParseError, TooFewPairs
from exocap.replay import (
    DEFAULT_CHUNK_LEN,
    ReplayPolicy,
    make_sink,
    read_envelope,
    run_policy,
)
from exocap.retarget import get_hand_model
from exocap.se3 import CalibrationEstimator, pairs_to_arrays, read_pose_pairs
from exocap.sim import (
    DEPLOYMENT_TASKS,
    REFERENCE_TASKS,
    PipelineConfig,
    make_synthetic_dataset,
    read_pipeline_config,
    read_scenario,
    run_scenario,
)
from exocap.store import (
    MANIFEST_NAME,
    DatasetIndex,
    compare_methods,
    load_episode,
    stats_table,
    task_stats,
    validate_episode,
)
from exocap.version import VERSION

logger = logging.getLogger(__name__)


def _format_error(exc: Exception) -> str:
    category = getattr(exc, "category", type(exc).__name__)
    message = " ".join(str(exc).split())
    return f"error: {category}: {message}"


def _simulate(args) -> int:
    scenario = read_scenario(args.scenario)
    path = run_scenario(
        scenario, PipelineConfig(), args.out, args.name, args.concurrent
    )
    print(path)
    return 0


def _record(args) -> int:
    config = read_pipeline_config(args.config)
    if config.scenario is None:
        raise ParseError(line=0, reason="pipeline config names no 'scenario'")
    scenario = read_scenario(config.scenario)
    path = run_scenario(scenario, config, args.out, args.name, args.concurrent)
    print(path)
    return 0


def _calibrate(args) -> int:
    pairs = read_pose_pairs(args.pairs)
    X, y = pairs_to_arrays(pairs)
    estimator = CalibrationEstimator(
        min_pairs=args.min_pairs, max_spread=np.deg2rad(args.max_spread)
    )
    if len(pairs) < max(args.min_pairs, 1):
        raise TooFewPairs(min_pairs=args.min_pairs, n_pairs=len(pairs))
    estimator.fit(X, y)
    translation, rotation = estimator.residuals(X, y)
    values = " ".join(f"{v:.9g}" for v in estimator.calib_.as_array())
    print(f"calibration: {values}")
    print(
        f"residual: {np.sqrt(np.mean(translation**2)):.6g} m rms,"
        f" {np.rad2deg(np.sqrt(np.mean(rotation**2))):.6g} deg rms"
        f" ({estimator.n_pairs_} pairs)"
    )
    return 0


def _episode_dirs(path: str) -> list[str]:
    if os.path.isfile(os.path.join(path, MANIFEST_NAME)):
        return [path]
    if not os.path.isdir(path):
        return [path]
    return [
        os.path.join(path, name)
        for name in sorted(os.listdir(path))
        if os.path.isfile(os.path.join(path, name, MANIFEST_NAME))
    ]


def _validate(args) -> int:
    status = 0
    for path in _episode_dirs(args.path) or [args.path]:
        report = validate_episode(path)
        if report.ok:
            print(f"ok: {path}: {report.record_count} records")
        else:
            print(_format_error(report.error), file=sys.stderr)
            status = 1
    return status


def _stats(args) -> int:
    index = DatasetIndex.scan(args.path, verify=args.verify)
    phase = None if args.phase == "all" else args.phase
    if args.task is not None:
        stats = task_stats(index, args.task, phase)
        print(f"{stats.task_name}  {stats.format()}")
        return 0
    table = stats_table(index, phase)
    for row in table.itertuples(index=False):
        print(
            f"{row.task_name}  {row.mean_duration:.1f}"
            f" ± {row.std_duration:.1f}  {row.successes}/{row.trials}"
        )
    return 0


def _compare(args) -> int:
    table = compare_methods(DatasetIndex.scan(args.path), args.task)
    print(table.to_string(float_format=lambda v: f"{v:.1f}"))
    return 0


def _replay(args) -> int:
    envelope = read_envelope(args.envelope)
    meta, records = load_episode(args.path)
    model = get_hand_model(meta.hand_model) if meta.hand_model else None
    chunk_len = args.chunk_len
    if chunk_len is None:
        chunk_len = DEFAULT_CHUNK_LEN
        if args.config is not None:
            chunk_len = read_pipeline_config(args.config).chunk_len
    policy = ReplayPolicy(
        records,
        dt=1.0 / meta.tick_rate,
        chunk_len=chunk_len,
        pose_stream=args.pose_stream,
        hand_stream=args.hand_stream,
        model=model,
    )
    sink = make_sink(args.sink)
    report = run_policy(policy, envelope, sink, output_rate=args.output_rate)
    print(
        f"emitted_steps: {report.emitted_steps}"
        f"  emitted_samples: {report.emitted_samples}"
        f"  rejected_samples: {report.rejected_samples}"
    )
    report.raise_for_abort()
    return 0


def _synth(args) -> int:
    tasks = list(REFERENCE_TASKS)
    if args.deployment:
        tasks += DEPLOYMENT_TASKS
    paths = make_synthetic_dataset(args.out, tasks, random_state=args.seed)
    print(f"{len(paths)} episodes written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exocap",
        description="Exoskeleton demonstration capture, storage and replay.",
    )
    parser.add_argument("--version", action="version", version=VERSION)
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="-v for INFO, -vv for DEBUG logging",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("simulate", help="record a simulated scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--name", default=None)
    p.add_argument("--concurrent", action="store_true")
    p.set_defaults(func=_simulate)

    p = verbs.add_parser("record", help="record through a pipeline config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--name", default=None)
    p.add_argument("--concurrent", action="store_true")
    p.set_defaults(func=_record)

    p = verbs.add_parser("calibrate", help="solve SLAM-to-robot calibration")
    p.add_argument("--pairs", required=True)
    p.add_argument("--min-pairs", type=int, default=3)
    p.add_argument("--max-spread", type=float, default=10.0, help="degrees")
    p.set_defaults(func=_calibrate)

    p = verbs.add_parser("validate", help="audit episodes")
    p.add_argument("path")
    p.set_defaults(func=_validate)

    p = verbs.add_parser("stats", help="per-task duration and success")
    p.add_argument("path")
    p.add_argument("--task", default=None)
    p.add_argument(
        "--phase",
        choices=["collection", "deployment", "all"],
        default="collection",
        help="episodes to count (default: collection)",
    )
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_stats)

    p = verbs.add_parser("compare", help="durations per collection method")
    p.add_argument("path")
    p.add_argument("--task", required=True)
    p.set_defaults(func=_compare)

    p = verbs.add_parser("replay", help="stream an episode into a sink")
    p.add_argument("path")
    p.add_argument("--envelope", required=True)
    p.add_argument(
        "--chunk-len",
        type=int,
        default=None,
        help="steps per chunk (default: from --config, else"
        f" {DEFAULT_CHUNK_LEN})",
    )
    p.add_argument("--config", default=None, help="pipeline config")
    p.add_argument("--sink", choices=["recording", "log"], default="recording")
    p.add_argument("--output-rate", type=float, default=None)
    p.add_argument("--pose-stream", default="ee_pose")
    p.add_argument("--hand-stream", default="hand")
    p.set_defaults(func=_replay)

    p = verbs.add_parser("synth", help="write the reference synthetic dataset")
    p.add_argument("out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deployment", action="store_true")
    p.set_defaults(func=_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    levels = {0: logging.WARNING, 1: logging.INFO}
    logging.basicConfig(
        level=levels.get(args.verbose, logging.DEBUG),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (BaseError, ValueError, KeyError) as exc:
        logger.debug("Command failed.", exc_info=True)
        print(_format_error(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

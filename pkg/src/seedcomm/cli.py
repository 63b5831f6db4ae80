"""Command-line front end: detect, benchmark, sample, generate.

Exit codes: 0 success, 2 usage, 3 io/parse, 4 infeasible detection.  The
data stream (stdout or --out) carries only the declared output format;
logs go to stderr.  File output is atomic (temp file + rename).
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass

from .detect import DetectParams, detect
from .evaluation import export_report, run_batch
from .graph import (GraphParseError, load_communities, load_edge_list,
                    write_communities, write_edge_list)
from .seeding import STRATEGIES, SeedSpec
from .synth import PlantedSpec, generate_planted
from .walk import sample_subgraph

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4


@dataclass
class CliConfig:
    command: str
    verbose: int = 0
    graph_path: str | None = None
    communities_path: str | None = None
    seeds: list | None = None
    params: DetectParams | None = None
    truth_size: int | None = None
    seed_spec: SeedSpec | None = None
    trials: int = 0
    rng_seed: int = 0
    out: str | None = None
    map_out: str | None = None
    graph_out: str | None = None
    comms_out: str | None = None
    format: str = "json"
    jobs: int = 1
    no_timing: bool = False
    planted: PlantedSpec | None = None
    target_size: int = 3000


def _default_jobs() -> int:
    env = os.environ.get("SEEDCOMM_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _add_detection_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--walk-steps", type=int, default=3, help="random walk steps (default 3)")
    p.add_argument("--dim", type=int, default=3, help="walk span dimension (default 3)")
    p.add_argument("--expand-step", type=int, default=6,
                   help="seed expansion step per iteration (default 6)")
    p.add_argument("--alpha", type=float, default=10.0,
                   help="sampling multiplier on the average community size (default 10)")
    p.add_argument("--size-min", type=int, default=10, help="sweep lower bound (default 10)")
    p.add_argument("--size-max", type=int, default=100, help="sweep upper bound (default 100)")
    p.add_argument("--max-iters", type=int, default=20,
                   help="reseeding iteration cap (default 20)")
    p.add_argument("--init", choices=["uniform", "degree"], default="uniform",
                   help="initial probability: uniform or degree-weighted over seeds")
    p.add_argument("--sample-target", type=int, default=None,
                   help="sampled subgraph target size (default 3000, or alpha * avg "
                        "community size when ground truth is loaded)")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, metavar="FILE",
                   help="key=value file supplying flag defaults (flags win)")
    p.add_argument("-v", "--verbose", action="count", default=0)


def _build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(prog="seedcomm",
                                     description="Local community detection from seed sets")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    p = sub.add_parser("detect", help="expand a seed set into a community")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--seeds", required=True, help="comma-separated seed labels")
    _add_detection_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--auto", action="store_true",
                       help="pick the community size from the conductance sweep (default)")
    group.add_argument("--truth-size", type=int, default=None,
                       help="truncate at this known community size")
    p.add_argument("--output", choices=["json"], default="json", help="output format")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--no-timing", action="store_true", help="omit runtime fields")
    _add_common_flags(p)
    subparsers["detect"] = p

    p = sub.add_parser("benchmark", help="batch detection trials scored against ground truth")
    p.add_argument("--graph", required=True)
    p.add_argument("--communities", required=True, help="ground-truth community file")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed-strategy", choices=list(STRATEGIES), default="random")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--seed-count", type=int, default=None, help="seeds per trial (default 3)")
    group.add_argument("--seed-ratio", type=float, default=None,
                       help="seeds as a fraction of the community size")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--auto", action="store_true",
                   help="use the automatic stop criteria instead of the ground-truth size")
    _add_detection_flags(p)
    p.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="worker threads (default: SEEDCOMM_JOBS or cpu count)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--no-timing", action="store_true")
    _add_common_flags(p)
    subparsers["benchmark"] = p

    p = sub.add_parser("sample", help="emit the walk-sampled subgraph around a seed set")
    p.add_argument("--graph", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--target-size", type=int, default=3000)
    p.add_argument("--out", required=True, help="subgraph edge list (internal ids)")
    p.add_argument("--map-out", default=None,
                   help="relabeling file 'internal external' (default <out>.map)")
    _add_common_flags(p)
    subparsers["sample"] = p

    p = sub.add_parser("generate", help="emit a planted-partition graph and its communities")
    p.add_argument("--num-communities", type=int, required=True)
    p.add_argument("--community-size", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--graph-out", required=True)
    p.add_argument("--comms-out", required=True)
    _add_common_flags(p)
    subparsers["generate"] = p

    return parser, subparsers


def _scan_config(argv: list) -> tuple[str | None, str | None]:
    """Pre-scan for the subcommand name and a --config value."""
    command = None
    config = None
    i = 0
    while i < len(argv):
        tok = argv[i]
        if command is None and not tok.startswith("-"):
            command = tok
        if tok == "--config" and i + 1 < len(argv):
            config = argv[i + 1]
            i += 1
        elif tok.startswith("--config="):
            config = tok.split("=", 1)[1]
        i += 1
    return command, config


def _apply_config(path: str, subparser: argparse.ArgumentParser) -> None:
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    with open(path, "rt", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            if "=" not in s:
                subparser.error(f"config {path}:{lineno}: expected key=value, got {s!r}")
            key, val = (part.strip() for part in s.split("=", 1))
            dest = key.replace("-", "_")
            if dest not in actions or dest in ("help", "config"):
                subparser.error(f"config {path}:{lineno}: unknown key {key!r}")
            action = actions[dest]
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                defaults[dest] = val.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                try:
                    defaults[dest] = action.type(val)
                except ValueError:
                    subparser.error(f"config {path}:{lineno}: bad value for {key!r}")
            else:
                defaults[dest] = val
    subparser.set_defaults(**defaults)


def _parse_seed_labels(text: str, parser: argparse.ArgumentParser) -> list:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        parser.error(f"--seeds must be comma-separated integers, got {text!r}")


def parse_args(argv: list) -> CliConfig:
    """Validate argv into a CliConfig; usage problems exit with code 2."""
    parser, subparsers = _build_parser()
    command, config_path = _scan_config(argv)
    if config_path is not None and command in subparsers:
        try:
            _apply_config(config_path, subparsers[command])
        except OSError as exc:
            print(f"seedcomm: cannot read config: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_IO) from None
    ns = parser.parse_args(argv)
    sp = subparsers[ns.command]

    cfg = CliConfig(command=ns.command, verbose=ns.verbose)
    if ns.command in ("detect", "benchmark"):
        mode = "auto"
        truth_size = None
        if ns.command == "detect" and ns.truth_size is not None:
            mode = "ground_truth"
            truth_size = ns.truth_size
            if truth_size < 1:
                sp.error("--truth-size must be >= 1")
        if ns.command == "benchmark" and not ns.auto:
            mode = "ground_truth"
        try:
            cfg.params = DetectParams(walk_steps=ns.walk_steps, span_dim=ns.dim,
                                      expand_step=ns.expand_step, alpha=ns.alpha,
                                      size_min=ns.size_min, size_max=ns.size_max,
                                      max_iters=ns.max_iters, init_mode=ns.init,
                                      truncation_mode=mode,
                                      sample_target=ns.sample_target)
        except ValueError as exc:
            sp.error(str(exc))
        cfg.graph_path = ns.graph
        cfg.truth_size = truth_size
        cfg.out = ns.out
        cfg.no_timing = ns.no_timing

    if ns.command == "detect":
        cfg.seeds = _parse_seed_labels(ns.seeds, sp)
        if not cfg.seeds:
            sp.error("--seeds must name at least one vertex")
        cfg.format = ns.output
    elif ns.command == "benchmark":
        if ns.trials < 1:
            sp.error("--trials must be >= 1")
        count, ratio = ns.seed_count, ns.seed_ratio
        if count is None and ratio is None:
            count = 3
        try:
            cfg.seed_spec = SeedSpec(strategy=ns.seed_strategy, count=count,
                                     ratio=ratio, rng_seed=0)
        except ValueError as exc:
            sp.error(str(exc))
        cfg.communities_path = ns.communities
        cfg.trials = ns.trials
        cfg.rng_seed = ns.rng_seed
        cfg.jobs = max(1, ns.jobs)
        cfg.format = ns.format
    elif ns.command == "sample":
        cfg.graph_path = ns.graph
        cfg.seeds = _parse_seed_labels(ns.seeds, sp)
        if not cfg.seeds:
            sp.error("--seeds must name at least one vertex")
        if ns.target_size < 1:
            sp.error("--target-size must be >= 1")
        cfg.target_size = ns.target_size
        cfg.out = ns.out
        cfg.map_out = ns.map_out if ns.map_out is not None else ns.out + ".map"
    elif ns.command == "generate":
        try:
            cfg.planted = PlantedSpec(ns.num_communities, ns.community_size,
                                      ns.p_in, ns.p_out, ns.rng_seed)
        except ValueError as exc:
            sp.error(str(exc))
        cfg.graph_out = ns.graph_out
        cfg.comms_out = ns.comms_out
    return cfg


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".seedcomm-")
    try:
        with os.fdopen(fd, "wt", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _run_detect(cfg: CliConfig) -> int:
    g = load_edge_list(cfg.graph_path)
    seeds = g.to_ids(cfg.seeds)
    t0 = time.perf_counter()
    result = detect(g, seeds, cfg.params, truth_size=cfg.truth_size)
    ms = (time.perf_counter() - t0) * 1000.0
    if result.members.size == 0:
        logger.error("detection infeasible: no iteration produced a community")
        return EXIT_INFEASIBLE
    phi = result.phi_at_chosen
    payload = {
        "members": [int(x) for x in result.members],
        "conductance": None if math.isnan(phi) else phi,
        "size": int(result.chosen_size),
        "iterations": int(result.iterations),
    }
    if not cfg.no_timing:
        payload["runtime_ms"] = ms
    _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    return EXIT_OK


def _run_benchmark(cfg: CliConfig) -> int:
    g = load_edge_list(cfg.graph_path)
    catalog = load_communities(cfg.communities_path, g)
    stats = run_batch(g, catalog, cfg.seed_spec, cfg.params, cfg.trials,
                      cfg.rng_seed, jobs=cfg.jobs)
    _emit(export_report(stats, cfg.format, timing=not cfg.no_timing), cfg.out)
    return EXIT_OK


def _run_sample(cfg: CliConfig) -> int:
    g = load_edge_list(cfg.graph_path)
    seeds = g.to_ids(cfg.seeds)
    target = max(cfg.target_size, seeds.size)
    result = sample_subgraph(g, seeds, target)
    sub = result.subgraph
    buf = io.StringIO()
    write_edge_list(sub, buf, external=False)
    _emit(buf.getvalue(), cfg.out)
    lines = "".join(f"{i} {sub.labels[i]}\n" for i in range(sub.n))
    _emit(lines, cfg.map_out)
    return EXIT_OK


def _run_generate(cfg: CliConfig) -> int:
    g, catalog = generate_planted(cfg.planted)
    buf = io.StringIO()
    write_edge_list(g, buf)
    _emit(buf.getvalue(), cfg.graph_out)
    buf = io.StringIO()
    write_communities(catalog, g, buf)
    _emit(buf.getvalue(), cfg.comms_out)
    return EXIT_OK


_RUNNERS = {
    "detect": _run_detect,
    "benchmark": _run_benchmark,
    "sample": _run_sample,
    "generate": _run_generate,
}


def run(cfg: CliConfig) -> int:
    """Execute a parsed config; all errors land on stderr, never stdout."""
    level = logging.WARNING
    if cfg.verbose == 1:
        level = logging.INFO
    elif cfg.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _RUNNERS[cfg.command](cfg)
    except (GraphParseError, OSError, ValueError) as exc:
        logger.error("%s", exc)
        return EXIT_IO
    except KeyError as exc:
        logger.error("unknown vertex label: %s", exc)
        return EXIT_IO


def main(argv: list | None = None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

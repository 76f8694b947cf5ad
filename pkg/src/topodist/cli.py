"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 resource-limit error.
Errors go to stderr prefixed with ``error:``.
"""

from __future__ import annotations

import argparse
import json
import os
import shutil
import sys
import tempfile
from pathlib import Path

from .config import AngleSet, DistanceConfig, make_angle_set, random_angle_set
from .distances import compute_distance
from .errors import DiagramValidationError, InvalidArgumentError, ParseError, ResourceLimitError
from .harness import (
    KnnConfig,
    SyntheticClassSpec,
    bench_metrics,
    distance_matrix,
    generate_synthetic_dataset,
    randomized_search,
    topological_curves,
)
from .io import (
    read_diagram,
    read_labels,
    read_matrix,
    write_bench,
    write_curves,
    write_diagram,
    write_labels,
    write_matrix,
)

METRICS = {
    "etd": "etd",
    "basic-etd": "basic_etd",
    "swd": "swd",
    "wd": "exact_wd",
    "ps": "ps",
    "cosine-etd": "cosine_etd",
}
LABELS_FILE = "labels.csv"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().strip()}")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _angles_from_args(args):
    if args.angle_list is not None:
        groups = [g for g in args.angle_list.split(";") if g.strip()]
        sets = [AngleSet(_floats(g)) for g in groups]
        return sets[0] if len(sets) == 1 else tuple(sets)
    if args.random_angles is not None:
        return random_angle_set(args.random_angles, args.seed)
    return make_angle_set(args.angles)


def _config(args, metric: str, count: int | None = None) -> DistanceConfig:
    if metric not in METRICS:
        raise UsageError(f"unknown metric {metric!r}; choose from {', '.join(METRICS)}")
    variant = METRICS[metric]
    angles = make_angle_set(count) if count is not None else _angles_from_args(args)
    slices = count if (count is not None and variant == "swd") else args.slices
    return DistanceConfig(
        p=args.p,
        angles=angles,
        weights=tuple(_floats(args.weights)) if args.weights else None,
        zero_birth_dim0=args.d0_zero_birth,
        variant=variant,
        d0_normalization=args.d0_normalization,
        n_slices=slices,
        max_points=args.max_points,
    )


def _metric_list(args, text: str) -> dict[str, DistanceConfig]:
    """Parse ``name[:N],...`` where N is the number of angles (etd) or slices (swd)."""
    out = {}
    for item in (x.strip() for x in text.split(",")):
        if not item:
            continue
        name, _, count = item.partition(":")
        try:
            n = int(count) if count else None
        except ValueError:
            raise UsageError(f"bad metric spec {item!r}") from None
        out[item] = _config(args, name, n)
    if not out:
        raise UsageError("no metrics given")
    return out


def _diagram_files(directory) -> list[Path]:
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"{d} is not a directory")
    files = sorted(p for p in d.iterdir() if p.suffix == ".csv" and p.name != LABELS_FILE)
    if not files:
        raise ParseError(f"{d}: no diagram .csv files")
    return files


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_dist(args) -> None:
    config = _config(args, args.metric)
    d1 = read_diagram(args.a)
    d2 = read_diagram(args.b)
    res = compute_distance(d1, d2, config)
    _emit({"metric": args.metric, "config": config.tag(), "value": res.value, "per_dimension": list(res.per_dimension)})


def cmd_matrix(args) -> None:
    config = _config(args, args.metric)
    files = _diagram_files(args.directory)
    diagrams = [read_diagram(f) for f in files]
    mat = distance_matrix(diagrams, config, [f.stem for f in files], n_jobs=args.jobs)
    write_matrix(mat, args.out)


def cmd_knn(args) -> None:
    mat = read_matrix(args.matrix)
    by_id = read_labels(args.labels)
    missing = [x for x in mat.labels if x not in by_id]
    if missing:
        raise ParseError(f"{args.labels}: no label for {missing[0]!r}")
    cfg = KnnConfig(k_candidates=tuple(range(1, args.k_max + 1)), n_search_trials=args.trials, seed=args.seed)
    res = randomized_search(mat, [by_id[x] for x in mat.labels], cfg)
    _emit({"k": res.k, "weighting": res.weighting, "accuracy": res.accuracy})


def cmd_curves(args) -> None:
    metrics = _metric_list(args, args.metrics)
    files = _diagram_files(args.directory)
    curves = topological_curves([read_diagram(f) for f in files], metrics, p=args.p, max_points=args.max_points)
    write_curves(curves, args.out)


def cmd_bench(args) -> None:
    metrics = _metric_list(args, args.metrics)
    rows = bench_metrics(_ints(args.sizes), metrics, repetitions=args.reps, seed=args.seed, k=args.k)
    write_bench(rows, args.out)


def _load_specs(path) -> list[SyntheticClassSpec]:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno) from None
    classes = raw.get("classes") if isinstance(raw, dict) else raw
    if not isinstance(classes, list):
        raise ParseError(f"{path}: expected a list of classes or {{'classes': [...]}}")
    try:
        return [SyntheticClassSpec(**c) for c in classes]
    except TypeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def cmd_gen(args) -> None:
    specs = _load_specs(args.spec)
    diagrams, labels = generate_synthetic_dataset(specs)
    counters: dict = {}
    names = []
    for y in labels:
        counters[y] = counters.get(y, 0) + 1
        names.append(f"{y}_{counters[y] - 1:04d}")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=f".{out.name}.", dir=out.parent))
    try:
        for name, dgm in zip(names, diagrams):
            write_diagram(dgm, staging / f"{name}.csv")
        write_labels(dict(zip(names, labels)), staging / LABELS_FILE)
        if not out.exists():
            os.replace(staging, out)
        else:
            for f in staging.iterdir():
                os.replace(f, out / f.name)
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def _add_metric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, default=2.0, help="Wasserstein exponent (>= 1)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--angles", type=int, default=1, help="use N equally spaced angles")
    g.add_argument("--angle-list", help="explicit angles in radians; ';' separates per-dimension sets")
    g.add_argument("--random-angles", type=int, help="use N uniformly random angles (see --seed)")
    p.add_argument("--weights", help="comma-separated per-dimension weights")
    p.add_argument("--d0-zero-birth", action="store_true", help="dimension 0 compares deaths only")
    p.add_argument("--d0-normalization", choices=("count", "root"), default="count")
    p.add_argument("--slices", type=int, default=50, help="number of slices for swd")
    p.add_argument("--max-points", type=int, default=2000, help="size guard for exact Wasserstein")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topodist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dist", help="distance between two diagram files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--metric", default="etd", choices=list(METRICS))
    p.add_argument("--seed", type=int, default=0)
    _add_metric_flags(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("matrix", help="pairwise distance matrix over a directory of diagrams")
    p.add_argument("directory")
    p.add_argument("--metric", default="etd", choices=list(METRICS))
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    _add_metric_flags(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("knn", help="randomized kNN hyperparameter search on a distance matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--k-max", type=int, default=9)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_knn)

    p = sub.add_parser("curves", help="topological curves over a lexicographic file sequence")
    p.add_argument("directory")
    p.add_argument("--metrics", required=True, help="e.g. etd:1,etd:4,swd:50,ps,wd")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_metric_flags(p)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("bench", help="timing table on random diagrams")
    p.add_argument("--sizes", required=True)
    p.add_argument("--metrics", required=True)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=0, help="highest homology dimension of the random diagrams")
    p.add_argument("--out", required=True)
    _add_metric_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a synthetic labelled dataset")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, DiagramValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``corewalk run`` and ``corewalk sweep``."""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
import tempfile
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .datasets import load_edge_file
from .embedding import save_embedding
from .exceptions import ConfigError, CoreWalkError, EmptyGraphError, IsolatedShellError, ParseError
from .evaluation import make_method, pca_csv, pca_project, report_csv, run_experiment, sweep_csv
from .evaluation.split import make_split
from .graph import graph_stats, largest_connected_component
from .kcore import decompose, shell_histogram_csv

logger = logging.getLogger("corewalk")

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_RUNTIME = 0, 1, 2, 3


def _canonical(method: str) -> str:
    method = method.replace("_", "-")
    return "kcore-prop" if method == "kcore-propagation" else method


@dataclass
class RunSpec:
    input_path: str
    method: str = "deepwalk"
    base: str = "deepwalk"
    k0: int | None = None
    fraction: float = 0.1
    repeats: int = 5
    walks: int = 15
    walk_length: int = 30
    window: int = 4
    dim: int = 150
    epochs: int = 5
    negatives: int = 5
    max_iterations: int = 100
    tolerance: float = 1e-6
    seed: int = 42
    threads: int = 1
    allow_isolated: bool = False
    out: str = "results"
    baseline: bool = False
    pca: bool = False
    save_embedding: bool = False
    k0_sweep: list[int] = field(default_factory=list)

    def validate(self):
        method = _canonical(self.method)
        if method not in ("deepwalk", "corewalk", "kcore-prop"):
            raise ConfigError(f"unknown method {self.method!r}")
        if self.base not in ("deepwalk", "corewalk"):
            raise ConfigError(f"unknown base embedder {self.base!r}")
        if (method == "kcore-prop") != (self.k0 is not None) and not self.k0_sweep:
            raise ConfigError("--k0 is required for kcore-prop and only valid with it")
        if not 0 < self.fraction < 1:
            raise ConfigError("--fraction must lie in (0, 1)")
        for name in ("repeats", "walks", "window", "dim", "epochs", "negatives", "threads", "max_iterations"):
            if getattr(self, name) < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be >= 1")
        if self.walk_length < 2:
            raise ConfigError("--walk-length must be >= 2")
        if self.k0 is not None and self.k0 < 1:
            raise ConfigError("--k0 must be >= 1")

    def embed_params(self) -> dict:
        return dict(walks_per_node=self.walks, walk_length=self.walk_length, dim=self.dim,
                    window=self.window, negatives=self.negatives, epochs=self.epochs,
                    workers=self.threads, random_state=self.seed)

    def estimator(self, method=None, k0=None):
        method = method or self.method
        if _canonical(method) == "kcore-prop":
            return make_method("kcore-prop", k0, self.base, max_iterations=self.max_iterations,
                               tolerance=self.tolerance, allow_isolated=self.allow_isolated,
                               **self.embed_params())
        return make_method(method, **self.embed_params())


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load(spec: RunSpec):
    g = load_edge_file(spec.input_path)
    lcc = largest_connected_component(g)
    return g, lcc


def _write_inputs(spec: RunSpec, g, lcc):
    out = Path(spec.out)
    write_atomic(out / "graph_stats.json", json.dumps(graph_stats(g, lcc), indent=2) + "\n")
    write_atomic(out / "shells.csv", shell_histogram_csv(decompose(lcc)))


def _write_embedding_outputs(spec: RunSpec, report):
    out = Path(spec.out)
    emb = report.embedding
    if emb is None:
        return
    if spec.pca:
        write_atomic(out / "pca.csv", pca_csv(emb, pca_project(emb)))
    if spec.save_embedding:
        buf = io.StringIO()
        save_embedding(emb, buf)
        write_atomic(out / "embedding.txt", buf.getvalue())


def run(spec: RunSpec) -> int:
    spec.validate()
    g, lcc = _load(spec)
    _write_inputs(spec, g, lcc)
    keep = spec.pca or spec.save_embedding
    baseline = None
    reports = []
    if spec.baseline and spec.method != "deepwalk":
        baseline = run_experiment(lcc, spec.estimator("deepwalk"), spec.fraction, spec.repeats, spec.seed)
        reports.append(baseline)
    report = run_experiment(lcc, spec.estimator(k0=spec.k0), spec.fraction, spec.repeats, spec.seed,
                            baseline=baseline, keep_embedding=keep)
    reports.append(report)
    out = Path(spec.out)
    write_atomic(out / "report.csv", report_csv(reports))
    timing = asdict(report.timing)
    timing["method"] = report.method
    timing["speedup"] = report.speedup
    write_atomic(out / "timing.json", json.dumps(timing, indent=2) + "\n")
    _write_embedding_outputs(spec, report)
    print(report.summary())
    return EXIT_OK


def sweep(spec: RunSpec, k0_list: list[int]) -> int:
    """Baseline plus one k0-core propagation run per usable k0."""
    spec.validate()
    g, lcc = _load(spec)
    _write_inputs(spec, g, lcc)
    # every repeat has its own split, so a k0 must fit all of them
    degeneracy = min(decompose(make_split(lcc, spec.fraction, spec.seed + r).train_graph).degeneracy
                     for r in range(spec.repeats))
    usable = []
    for k0 in k0_list:
        if k0 < 1 or k0 > degeneracy:
            warnings.warn(f"skipping k0={k0}: outside 1..{degeneracy} for the split training graphs")
            logger.warning("skipping k0=%d (degeneracy %d)", k0, degeneracy)
        else:
            usable.append(k0)
    baseline = run_experiment(lcc, spec.estimator("deepwalk"), spec.fraction, spec.repeats, spec.seed)
    results = []
    for k0 in usable:
        rep = run_experiment(lcc, spec.estimator("kcore-prop", k0), spec.fraction, spec.repeats,
                             spec.seed, baseline=baseline)
        results.append((k0, rep))
        print(f"k0={k0}: {rep.summary()}")
    out = Path(spec.out)
    write_atomic(out / "sweep.csv", sweep_csv(baseline, results))
    write_atomic(out / "report.csv", report_csv([baseline] + [r for _, r in results]))
    print(baseline.summary())
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", dest="input_path", required=True, help="edge-list file")
    common.add_argument("--method", default="deepwalk", choices=["deepwalk", "corewalk", "kcore-prop", "kcore_propagation"])
    common.add_argument("--base", default="deepwalk", choices=["deepwalk", "corewalk"],
                        help="embedder of the k0-core for kcore-prop")
    common.add_argument("--k0", type=int, default=None)
    common.add_argument("--k0-sweep", type=_int_list, default=[], help="comma-separated k0 values")
    common.add_argument("--fraction", type=float, default=0.1, help="share of edges removed")
    common.add_argument("--repeats", type=int, default=5)
    common.add_argument("--walks", type=int, default=15, help="walks per node")
    common.add_argument("--walk-length", type=int, default=30)
    common.add_argument("--window", type=int, default=4)
    common.add_argument("--dim", type=int, default=150)
    common.add_argument("--epochs", type=int, default=5)
    common.add_argument("--negatives", type=int, default=5)
    common.add_argument("--max-iterations", type=int, default=100)
    common.add_argument("--tolerance", type=float, default=1e-6)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--allow-isolated", action="store_true")
    common.add_argument("--out", default="results")
    common.add_argument("--baseline", action="store_true", help="also run DeepWalk to report a speedup")
    common.add_argument("--pca", action="store_true", help="write pca.csv for the last repeat")
    common.add_argument("--save-embedding", action="store_true")

    parser = _Parser(prog="corewalk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="run one method")
    sub.add_parser("sweep", parents=[common], help="baseline plus a k0 sweep of kcore-prop")
    return parser


def _configure_logging():
    level = os.environ.get("COREWALK_LOG", "warn").lower()
    levels = {"error": logging.ERROR, "warn": logging.WARNING, "warning": logging.WARNING,
              "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    fields = {k: v for k, v in vars(args).items() if k != "command"}
    spec = RunSpec(**fields)
    try:
        if args.command == "sweep" or spec.k0_sweep:
            if not spec.k0_sweep:
                raise ConfigError("sweep needs --k0-sweep")
            spec.method = "kcore-prop"
            return sweep(spec, spec.k0_sweep)
        return run(spec)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, EmptyGraphError, OSError, UnicodeDecodeError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (IsolatedShellError, CoreWalkError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

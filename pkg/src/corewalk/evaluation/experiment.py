"""Repeated link-prediction runs with phase timing."""

from __future__ import annotations

import io
import logging
import time
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import clone

from ..estimators import CoreWalk, DeepWalk, KCorePropagation
from ..exceptions import ConfigError
from ..graph import Graph
from ..propagation import TimingBreakdown
from .logistic import LinkLogisticRegression, pair_feature_matrix
from .metrics import f1_score
from .split import TEST, TRAIN, make_split

logger = logging.getLogger(__name__)

METHODS = ("deepwalk", "corewalk", "kcore-prop")
REPORT_COLUMNS = ("method", "fraction", "repeat", "f1", "decomp_s", "embed_s", "prop_s", "total_s")


def make_method(method: str, k0: int | None = None, base: str = "deepwalk", *,
                max_iterations: int = 100, tolerance: float = 1e-6, allow_isolated: bool = False,
                **embed_params):
    """Build the embedder for a method name; ``embed_params`` go to DeepWalk/CoreWalk."""
    method = method.replace("_", "-")
    if method in ("kcore-prop", "kcore-propagation"):
        if k0 is None:
            raise ConfigError("method kcore-prop needs k0")
        base_est = make_method(base, **embed_params)
        return KCorePropagation(base_est, k0=k0, max_iterations=max_iterations,
                                tolerance=tolerance, allow_isolated=allow_isolated)
    if k0 is not None:
        raise ConfigError(f"k0 only applies to kcore-prop, not {method}")
    if method == "deepwalk":
        return DeepWalk(**embed_params)
    if method == "corewalk":
        return CoreWalk(**embed_params)
    raise ConfigError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


def method_label(est) -> str:
    if isinstance(est, KCorePropagation):
        base = est.base if est.base is not None else DeepWalk()
        tag = "Cw" if isinstance(base, CoreWalk) else "Dw"
        return f"{est.k0}-core ({tag})"
    return "corewalk" if isinstance(est, CoreWalk) else "deepwalk"


def _seed(est, seed):
    params = {k: seed for k in est.get_params(deep=True) if k == "random_state" or k.endswith("__random_state")}
    return est.set_params(**params)


@dataclass
class RepeatResult:
    repeat: int
    f1: float
    timing: TimingBreakdown
    corpus_size: int | None = None
    train_nodes: int = 0
    test_pairs: int = 0


@dataclass
class ExperimentReport:
    """F1 in percent; ``perf_drop_vs_baseline`` is the relative change in percent."""

    method: str
    fraction: float
    results: list[RepeatResult]
    baseline: "ExperimentReport | None" = None
    embedding: object = field(default=None, repr=False)

    @property
    def repeats(self) -> int:
        return len(self.results)

    @property
    def f1_mean(self) -> float:
        return float(np.mean([r.f1 for r in self.results]))

    @property
    def f1_std(self) -> float:
        return float(np.std([r.f1 for r in self.results]))

    @property
    def timing(self) -> TimingBreakdown:
        def mean(attr):
            return float(np.mean([getattr(r.timing, attr) for r in self.results]))
        return TimingBreakdown(mean("core_decomposition_s"), mean("embedding_s"),
                               mean("propagation_s"), mean("total_s"))

    @property
    def total_std(self) -> float:
        return float(np.std([r.timing.total_s for r in self.results]))

    @property
    def speedup(self) -> float | None:
        if self.baseline is None:
            return None
        return self.baseline.timing.total_s / self.timing.total_s

    @property
    def perf_drop_vs_baseline(self) -> float | None:
        if self.baseline is None:
            return None
        return 100.0 * (self.f1_mean - self.baseline.f1_mean) / self.baseline.f1_mean

    def summary(self) -> str:
        speed = f"x{self.speedup:.2f}" if self.speedup is not None else "-"
        return f"F1 {self.f1_mean:.2f}±{self.f1_std:.2f} total {self.timing.total_s:.2f}s speedup {speed}"


def evaluate_embedding(split, emb, seed=0, logistic=None) -> float:
    """Fit the link classifier on the TRAIN pairs and return test F1 in [0, 1]."""
    clf = clone(logistic) if logistic is not None else LinkLogisticRegression()
    clf.set_params(random_state=seed)
    train_pairs, train_labels = split.subset(TRAIN)
    test_pairs, test_labels = split.subset(TEST)
    clf.fit(pair_feature_matrix(emb, train_pairs), train_labels)
    return f1_score(clf.predict(pair_feature_matrix(emb, test_pairs)), test_labels)


def run_experiment(g: Graph, method, fraction: float = 0.1, repeats: int = 5, seed: int = 0,
                   baseline: ExperimentReport | None = None, logistic=None,
                   keep_embedding: bool = False) -> ExperimentReport:
    """Repeat split -> embed -> classify; repeat ``r`` uses seed ``seed + r`` throughout.

    ``method`` is an embedder estimator or a method name accepted by
    :func:`make_method` (with default parameters).
    """
    est_proto = make_method(method) if isinstance(method, str) else method
    if repeats < 1:
        raise ConfigError("repeats must be >= 1")
    results = []
    last_emb = None
    for r in range(repeats):
        s = seed + r
        split = make_split(g, fraction, s)
        est = _seed(clone(est_proto), s)
        t0 = time.perf_counter()
        est.fit(split.train_graph)
        wall = time.perf_counter() - t0
        timing = est.timing_
        # the estimator's own clock starts slightly later; keep the outer one
        timing.total_s = max(timing.total_s, wall)
        f1 = evaluate_embedding(split, est.embedding_, s, logistic)
        test_pairs = int(np.sum(split.assignment == TEST))
        results.append(RepeatResult(r, 100.0 * f1, timing, getattr(est, "corpus_size_", None),
                                    split.train_graph.num_nodes, test_pairs))
        logger.info("%s fraction=%.2f repeat=%d F1=%.2f total=%.2fs", method_label(est), fraction, r,
                    100 * f1, timing.total_s)
        last_emb = est.embedding_
    return ExperimentReport(method_label(est_proto), fraction, results, baseline,
                            last_emb if keep_embedding else None)


def report_csv(reports) -> str:
    buf = io.StringIO()
    buf.write(",".join(REPORT_COLUMNS) + "\n")
    for rep in reports:
        for r in rep.results:
            t = r.timing
            buf.write(f"{rep.method},{rep.fraction},{r.repeat},{r.f1:.6f},{t.core_decomposition_s:.6f},"
                      f"{t.embedding_s:.6f},{t.propagation_s:.6f},{t.total_s:.6f}\n")
        t = rep.timing
        buf.write(f"{rep.method},{rep.fraction},mean,{rep.f1_mean:.6f},{t.core_decomposition_s:.6f},"
                  f"{t.embedding_s:.6f},{t.propagation_s:.6f},{t.total_s:.6f}\n")
        buf.write(f"{rep.method},{rep.fraction},std,{rep.f1_std:.6f},,,,{rep.total_std:.6f}\n")
    return buf.getvalue()


SWEEP_COLUMNS = ("method", "k0", "fraction", "f1_mean", "f1_std", "perf_drop", "total_s", "total_std", "speedup")


def sweep_csv(baseline: ExperimentReport, reports: list[tuple[int, ExperimentReport]]) -> str:
    buf = io.StringIO()
    buf.write(",".join(SWEEP_COLUMNS) + "\n")
    rows = [(None, baseline)] + list(reports)
    for k0, rep in rows:
        drop = rep.perf_drop_vs_baseline
        speed = rep.speedup
        buf.write(f"{rep.method},{'' if k0 is None else k0},{rep.fraction},{rep.f1_mean:.6f},{rep.f1_std:.6f},"
                  f"{'' if drop is None else f'{drop:.6f}'},{rep.timing.total_s:.6f},{rep.total_std:.6f},"
                  f"{'' if speed is None else f'{speed:.6f}'}\n")
    return buf.getvalue()

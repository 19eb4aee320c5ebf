"""Monte Carlo experiments: trial cells, aggregation and bound comparison.

A config expands into cells (instance x algorithm x error count).  Each
trial draws its instance, error positions and arrival order from seeds
derived from ``(master seed, instance index, trial index, stream)``, so all
algorithms in one instance row see the same random inputs and the result
does not depend on how trials are distributed over workers.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from statistics import NormalDist
from typing import Optional, Sequence

import numpy as np

from . import __version__, bounds
from .algorithms import ADVICE_ALGORITHMS, BIPARTITE_ONLY, make_algorithm
from .errors import ConfigurationError, NotBipartiteError, ParameterError
from .graph import Graph, bipartition
from .instances import TREE_FAMILIES, InstanceSpec, generate
from .reveal import adversarial_orders, make_predictions, play, sample_order
from .rng import RNG_ID, check_seed, derive_seed

log = logging.getLogger(__name__)

ARRIVALS = ("random", "given", "bfs", "dfs", "reverse-bfs", "leaves-first", "side-first")
STREAM_INSTANCE, STREAM_ORDER, STREAM_ERRORS = 0, 1, 2
TOLERANCE = 1e-9
CSV_COLUMNS = ("cell", "n", "k", "algorithm", "trials", "mean", "max", "bound", "margin")


@dataclass
class ExperimentConfig:
    instances: list
    algorithms: list
    trials: int
    seed: int
    k_values: Optional[list] = None  # error counts for advice algorithms; default [0]
    arrival: str = "random"
    fresh_instances: bool = True  # redraw random instances every trial
    jobs: int = 1

    def __post_init__(self):
        self.instances = [s if isinstance(s, InstanceSpec) else InstanceSpec.from_dict(s) for s in self.instances]
        check_seed(self.seed)
        if self.trials < 1:
            raise ParameterError(f"trials must be positive, got {self.trials}")
        if self.arrival not in ARRIVALS:
            raise ParameterError(f"unknown arrival mode {self.arrival!r}; choose from {', '.join(ARRIVALS)}")
        for name in self.algorithms:
            make_algorithm(name)
        if self.k_values is not None and not any(a in ADVICE_ALGORITHMS for a in self.algorithms):
            raise ConfigurationError("an error schedule was given but no algorithm consumes predictions")

    def to_dict(self) -> dict:
        return {
            "instances": [s.to_dict() for s in self.instances],
            "algorithms": list(self.algorithms),
            "trials": self.trials,
            "seed": self.seed,
            "k_values": None if self.k_values is None else list(self.k_values),
            "arrival": self.arrival,
            "fresh_instances": self.fresh_instances,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        return cls(**data)

    def config_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()

    def cells(self) -> list[tuple[int, str, Optional[int]]]:
        out = []
        for i in range(len(self.instances)):
            for name in self.algorithms:
                ks = (self.k_values or [0]) if name in ADVICE_ALGORITHMS else [None]
                out.extend((i, name, k) for k in ks)
        return out


# -- single trials ------------------------------------------------------------

@lru_cache(maxsize=8)  # cells share trial instances, so consecutive cells hit
def _fixed_instance(spec: InstanceSpec) -> Graph:
    return generate(spec)


@lru_cache(maxsize=8)
def _fixed_bipartition(spec: InstanceSpec):
    try:
        return bipartition(_fixed_instance(spec))
    except NotBipartiteError:  # only the non-bipartite algorithms can run
        return None


def _trial_spec(spec: InstanceSpec, master: int, inst: int, trial: int, fresh: bool) -> InstanceSpec:
    if spec.is_random and fresh:
        return spec.with_seed(derive_seed(master, inst, trial, STREAM_INSTANCE))
    if spec.is_random and spec.seed is None:
        return spec.with_seed(derive_seed(master, inst, STREAM_INSTANCE))
    return spec


def _order(g: Graph, bip, arrival: str, seed: int):
    if arrival == "random":
        return sample_order(g.n, seed).order
    if arrival == "given":
        return tuple(range(g.n))
    if bip is None:
        if arrival == "side-first":
            raise ConfigurationError("side-first arrival needs a bipartite instance")
        return adversarial_orders(g)[arrival].order
    return adversarial_orders(g, bip.side)[arrival].order


def run_trial(config: ExperimentConfig, cell: tuple, trial: int) -> dict:
    """One trial of one cell; returns X, the injected error counts and n."""
    inst, name, k = cell
    spec = config.instances[inst]
    spec = _trial_spec(spec, config.seed, inst, trial, config.fresh_instances)
    g = _fixed_instance(spec)
    algo = make_algorithm(name)
    advice = None
    k_min = None
    bip = None
    if name in ADVICE_ALGORITHMS or name in BIPARTITE_ONLY or config.arrival not in ("random", "given"):
        bip = _fixed_bipartition(spec)
        if bip is None and (name in ADVICE_ALGORITHMS or name in BIPARTITE_ONLY):
            bipartition(g)  # raises NotBipartiteError with the odd cycle
    if name in ADVICE_ALGORITHMS:
        if k > g.n:
            raise ParameterError(f"k={k} exceeds n={g.n}")
        mode = "none" if k == 0 else "random"
        preds = make_predictions(bip, mode, k=k, seed=derive_seed(config.seed, inst, trial, STREAM_ERRORS, k))
        advice = preds.delivered
        k_min = preds.k_min
    order = _order(g, bip, config.arrival, derive_seed(config.seed, inst, trial, STREAM_ORDER))
    colors = play(g, order, advice, algo)
    return {"X": max(colors), "k_min": k_min, "n": g.n, "m": g.m}


def _run_chunk(config, cell, trials):
    return [run_trial(config, cell, t) for t in trials]


# -- aggregation --------------------------------------------------------------

@dataclass
class BoundCheck:
    name: str
    statistic: str  # "max" or "mean"
    value: float
    observed: float

    @property
    def margin(self) -> float:
        return self.value - self.observed

    @property
    def violated(self) -> bool:
        return self.observed > self.value + TOLERANCE

    def to_dict(self):
        return {"name": self.name, "statistic": self.statistic, "value": self.value,
                "observed": self.observed, "margin": self.margin, "violated": self.violated}


def applicable_bounds(name, n, k, is_tree, is_bipartite, random_order) -> list[tuple[str, str, float]]:
    """``(bound name, statistic, value)`` for every bound that covers this cell."""
    out = []
    if name == "first-fit" and is_tree:
        out.append(("first-fit-any-order", "max", bounds.first_fit_any_order(n)))
        if random_order and n >= 3:
            out.append(("first-fit-mean", "mean", bounds.first_fit_mean(n)))
    elif name == "advice-first-fit" and is_tree:
        if k == 0:
            out.append(("consistency", "max", 2.0))
        else:
            out.append(("advice-first-fit-errors", "max", bounds.advice_first_fit_errors(k)))
        out.append(("advice-first-fit-size", "max", bounds.advice_first_fit_size(n)))
    elif name == "cbip" and is_bipartite:
        out.append(("cbip-size-all", "max", bounds.cbip_size_all(n)))
        if n >= 5770:
            out.append(("cbip-size", "max", bounds.cbip_size(n)))
    elif name == "advice-cbip" and is_bipartite:
        if k == 0:
            out.append(("consistency", "max", 2.0))
        else:
            out.append(("advice-cbip-errors", "max", bounds.advice_cbip_errors(k)))
        out.append(("advice-cbip-size-all", "max", bounds.advice_cbip_size_all(n)))
        if n >= 1500:
            out.append(("advice-cbip-size", "max", bounds.advice_cbip_size(n)))
    elif name == "parity-first-fit" and is_tree:
        if k == 0:
            out.append(("consistency", "max", 2.0))
        elif random_order and k >= 3:
            out.append(("parity-first-fit-mean", "mean", bounds.parity_first_fit_mean(k)))
    return out


def summarize(xs: Sequence[int]) -> dict:
    arr = np.asarray(xs, dtype=np.int64)
    t = arr.size
    hist = {int(x): int(c) for x, c in zip(*np.unique(arr, return_counts=True))}
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1)) if t > 1 else 0.0
    top = int(arr.max())
    return {
        "trials": t,
        "mean": mean,
        "stderr": sd / math.sqrt(t),
        "min": int(arr.min()),
        "max": top,
        "quantiles": {q: int(np.quantile(arr, float(q), method="inverted_cdf")) for q in ("0.5", "0.9", "0.99")},
        "histogram": {str(x): c for x, c in hist.items()},
        "tail": {str(ell): float((arr >= ell).sum()) / t for ell in range(1, top + 1)},
    }


@dataclass
class ExperimentReport:
    config: dict
    cells: list
    config_hash: str
    wall_clock_seconds: float = 0.0
    rng: str = RNG_ID
    version: str = __version__

    @property
    def violations(self) -> list:
        return [c for c in self.cells if c["violation"]]

    def to_dict(self, timing: bool = True) -> dict:
        out = {"version": self.version, "rng": self.rng, "config_hash": self.config_hash,
               "config": self.config, "cells": self.cells}
        if timing:
            out["wall_clock_seconds"] = self.wall_clock_seconds
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=1) + "\n"

    def csv_rows(self) -> list[dict]:
        rows = []
        for c in self.cells:
            primary = min(c["bounds"], key=lambda b: b["margin"], default=None)
            rows.append({
                "cell": c["cell"], "n": c["n"], "k": "" if c["k"] is None else c["k"],
                "algorithm": c["algorithm"], "trials": c["trials"], "mean": c["mean"], "max": c["max"],
                "bound": "" if primary is None else primary["value"],
                "margin": "" if primary is None else primary["margin"],
            })
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.csv_rows())
        return buf.getvalue()


def _cell_report(config, index, cell, results) -> dict:
    inst, name, k = cell
    spec = config.instances[inst]
    ns = {r["n"] for r in results}
    n = results[0]["n"]
    if spec.family in TREE_FAMILIES:
        is_tree, is_bip = True, True
    elif spec.family == "random-bipartite":
        is_tree, is_bip = False, True
    else:
        is_tree, is_bip = _fixed_instance(spec).is_tree(), _fixed_bipartition(spec) is not None
    summary = summarize([r["X"] for r in results])
    checks = []
    if len(ns) == 1:
        for bname, stat, value in applicable_bounds(name, n, k, is_tree, is_bip, config.arrival == "random"):
            checks.append(BoundCheck(bname, stat, value, summary[stat]))
    k_mins = [r["k_min"] for r in results if r["k_min"] is not None]
    return {
        "cell": f"c{index:03d}",
        "instance": spec.to_dict(),
        "n": n,
        "algorithm": name,
        "k": k,
        "k_min": None if not k_mins else {"mean": sum(k_mins) / len(k_mins), "max": max(k_mins)},
        **summary,
        "bounds": [b.to_dict() for b in checks],
        "violation": any(b.violated for b in checks),
    }


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run every cell of ``config``; bound violations are flagged, not raised."""
    start = time.perf_counter()
    cells = config.cells()
    jobs = max(1, int(config.jobs))
    results: dict[int, list] = {}
    if jobs == 1:
        for i, cell in enumerate(cells):
            results[i] = _run_chunk(config, cell, range(config.trials))
    else:
        from concurrent.futures import ProcessPoolExecutor

        size = max(1, math.ceil(config.trials / jobs))
        with ProcessPoolExecutor(jobs) as pool:
            futures = {}
            for i, cell in enumerate(cells):
                for lo in range(0, config.trials, size):
                    futures[(i, lo)] = pool.submit(_run_chunk, config, cell, range(lo, min(lo + size, config.trials)))
            for i in range(len(cells)):
                results[i] = [r for lo in range(0, config.trials, size) for r in futures[(i, lo)].result()]
    report_cells = [_cell_report(config, i, cell, results[i]) for i, cell in enumerate(cells)]
    report = ExperimentReport(config.to_dict(), report_cells, config.config_hash(),
                              wall_clock_seconds=time.perf_counter() - start)
    for c in report.violations:
        log.warning("bound violation in %s (%s, n=%s, k=%s)", c["cell"], c["algorithm"], c["n"], c["k"])
    return report


# -- tail frequencies ---------------------------------------------------------

Z_999 = NormalDist().inv_cdf(1 - 0.001 / 2)


def wilson_interval(hits: int, trials: int, z: float = Z_999) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = hits / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if hits == 0 else max(0.0, center - half)  # exact endpoints at the extremes
    hi = 1.0 if hits == trials else min(1.0, center + half)
    return lo, hi


@dataclass
class TailRow:
    ell: int
    hits: int
    trials: int
    bound: Optional[float]
    low: float
    high: float

    @property
    def frequency(self) -> float:
        return self.hits / self.trials

    @property
    def vacuous(self) -> bool:
        return self.bound is not None and self.bound >= 1

    @property
    def passed(self) -> bool:
        return self.bound is None or self.low <= self.bound

    def to_dict(self):
        return {"ell": self.ell, "hits": self.hits, "trials": self.trials, "frequency": self.frequency,
                "wilson_low": self.low, "wilson_high": self.high, "bound": self.bound,
                "vacuous": self.vacuous, "passed": self.passed}


@dataclass
class TailCheck:
    algorithm: str
    n: int
    k: Optional[int]
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def tail_check(graph: Graph, algorithm: str, ells: Sequence[int], trials: int, seed: int,
               predictions=None) -> TailCheck:
    """Empirical P[X >= ell] over random orders against the matching tail bound.

    FirstFit is compared with n^2/ell!, ParityFirstFit (ell >= 7) with
    k^2/floor((ell-3)/4)!.  A row passes when the lower end of its 99.9%
    Wilson interval does not exceed the bound.
    """
    algo = make_algorithm(algorithm)
    if algo.requires_advice and predictions is None:
        raise ConfigurationError(f"{algorithm} needs predictions")
    advice = None if predictions is None else predictions.delivered
    xs = [max(play(graph, sample_order(graph.n, derive_seed(seed, t)).order, advice, algo)) for t in range(trials)]
    arr = np.asarray(xs)
    k = None if predictions is None else predictions.k
    out = TailCheck(algorithm, graph.n, k)
    for ell in ells:
        if algorithm == "first-fit":
            b = float(bounds.first_fit_tail(graph.n, ell))
        elif algorithm == "parity-first-fit" and ell >= 7:
            b = float(bounds.parity_tail(k, ell))
        else:
            b = None
        hits = int((arr >= ell).sum())
        lo, hi = wilson_interval(hits, trials)
        out.rows.append(TailRow(ell, hits, trials, b, lo, hi))
    return out


# -- error sweeps -------------------------------------------------------------

SWEEP_ALGORITHMS = ("advice-first-fit", "advice-cbip", "parity-first-fit")


def sweep_errors(spec: InstanceSpec, algorithm: str, ks: Sequence[int], trials: int, seed: int,
                 arrival: str = "random", jobs: int = 1) -> tuple[list[dict], ExperimentReport]:
    """Observed mean/max colors against the error-count bound, one row per k."""
    if algorithm not in SWEEP_ALGORITHMS:
        raise ConfigurationError(f"sweeps need an advice algorithm ({', '.join(SWEEP_ALGORITHMS)}), got {algorithm}")
    config = ExperimentConfig([spec], [algorithm], trials, seed, k_values=list(ks), arrival=arrival, jobs=jobs)
    report = run_experiment(config)
    rows = []
    for c in report.cells:
        by_name = {b["name"]: b for b in c["bounds"]}
        key = {"advice-first-fit": "advice-first-fit-errors", "advice-cbip": "advice-cbip-errors",
               "parity-first-fit": "parity-first-fit-mean"}[algorithm]
        b = by_name.get(key) or by_name.get("consistency")
        rows.append({"k": c["k"], "mean": c["mean"], "max": c["max"], "bound": None if b is None else b["value"],
                     "violation": c["violation"]})
    return rows, report

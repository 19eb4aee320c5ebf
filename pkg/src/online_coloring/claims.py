"""The reproduction suite behind ``verify-claims``.

Every claim is a function ``(seed, scale) -> ClaimResult`` whose details are
deterministic in ``seed``; timings are kept out of the machine report so
two runs with one seed serialize to identical bytes.  ``scale="quick"``
shrinks trial counts for smoke tests; ``"full"`` uses the acceptance sizes.
"""
from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__, adversary, bounds
from .algorithms import make_algorithm
from .analysis import check_error_paths, check_increasing_paths, enumerate_orders, nonisomorphic_trees
from .graph import Graph, bipartition
from .harness import ExperimentConfig, run_experiment
from .instances import InstanceSpec, generate
from .reveal import adversarial_orders, make_predictions, play, sample_order
from .rng import RNG_ID, derive_seed, make_rng

log = logging.getLogger(__name__)

SCALES = {
    "full": {
        "tail_max_n": 7,
        "path_runs": 10_000,
        "mean_sizes": (1_000, 10_000, 100_000),
        "mean_trials": 200,
        "consistency_trees": 1_000,
        "consistency_max_n": 300,
        "exhaustive_max_n": 8,
        "robust_n": 1_000,
        "robust_trials": 40,
        "adversary_ells": tuple(range(3, 10)),
        "bip_cells": ((20, 200), (200, 60), (2_000, 4)),
        "bip_exhaustive_max_n": 6,
        "parity_runs": 10_000,
        "parity_max_n": 500,
        "oracle_trials": 24_000,
    },
    "quick": {
        "tail_max_n": 6,
        "path_runs": 300,
        "mean_sizes": (1_000, 10_000),
        "mean_trials": 10,
        "consistency_trees": 60,
        "consistency_max_n": 120,
        "exhaustive_max_n": 6,
        "robust_n": 300,
        "robust_trials": 5,
        "adversary_ells": tuple(range(3, 8)),
        "bip_cells": ((20, 20), (200, 4)),
        "bip_exhaustive_max_n": 5,
        "parity_runs": 300,
        "parity_max_n": 200,
        "oracle_trials": 24_000,
    },
}

STRATEGIES = ("bfs", "dfs", "reverse-bfs", "leaves-first", "side-first")


@dataclass
class ClaimResult:
    id: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"id": self.id, "name": self.name, "passed": self.passed, "details": self.details}


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _random_tree(seed: int, lo: int, hi: int) -> Graph:
    rng = make_rng(seed)
    n = int(rng.integers(lo, hi + 1))
    return generate(InstanceSpec("random-labeled-tree", n, seed=derive_seed(seed, 1)))


# -- 1: exact tail of FirstFit ------------------------------------------------

def claim_first_fit_tail(seed: int, scale: dict) -> ClaimResult:
    worst = None
    trees = orders = 0
    failures = []
    for n in range(1, scale["tail_max_n"] + 1):
        for tree in nonisomorphic_trees(n):
            dist = enumerate_orders(tree, "first-fit")
            trees += 1
            orders += dist.total
            for ell in range(1, dist.max_colors + 2):
                tail = dist.tail(ell)
                bound = bounds.first_fit_tail(n, ell)
                ratio = tail / bound
                if n >= 2 and ell >= 2 and (worst is None or ratio > worst[0]):
                    worst = (ratio, n, ell, tail, bound)
                if tail > bound:
                    failures.append({"n": n, "edges": [list(e) for e in tree.edges], "ell": ell,
                                     "probability": _frac(tail), "bound": _frac(bound)})
    ratio, n, ell, tail, bound = worst
    return ClaimResult(1, "first-fit tail bound, exact over all orders", not failures, {
        "trees": trees, "orders": orders, "failures": failures[:5],
        "tightest": {"n": n, "ell": ell, "probability": _frac(tail), "bound": _frac(bound),
                     "ratio": _frac(ratio)},
    })


# -- 2: increasing-path witness ----------------------------------------------

def claim_increasing_paths(seed: int, scale: dict) -> ClaimResult:
    ff = make_algorithm("first-fit")
    violations = 0
    top = 0
    example = None
    for t in range(scale["path_runs"]):
        s = derive_seed(seed, 2, t)
        g = _random_tree(s, 1, 200)
        order = sample_order(g.n, derive_seed(s, 2)).order
        colors = play(g, order, None, ff)
        rep = check_increasing_paths(g, order, colors)
        violations += len(rep.violations)
        if rep.violations and example is None:
            v = rep.violations[0]
            example = {"n": g.n, "vertex": v["vertex"], "color": v["color"], "longest_path": v["longest_path"]}
        top = max(top, max(colors))
    return ClaimResult(2, "increasing-path witness for every FirstFit color", violations == 0, {
        "runs": scale["path_runs"], "violations": violations, "max_color_seen": top, "example": example,
    })


# -- 3: FirstFit mean in random order ------------------------------------------

def claim_first_fit_mean(seed: int, scale: dict) -> ClaimResult:
    sizes = scale["mean_sizes"]
    cfg = ExperimentConfig([InstanceSpec("random-labeled-tree", n) for n in sizes], ["first-fit"],
                           scale["mean_trials"], derive_seed(seed, 3))
    rep = run_experiment(cfg)
    rows = []
    ok = True
    for c in rep.cells:
        n = c["n"]
        bound = bounds.first_fit_mean(n)
        margin = bound - c["mean"]
        ok &= margin > 0
        rows.append({"n": n, "trials": c["trials"], "mean": c["mean"], "max": c["max"], "stderr": c["stderr"],
                     "bound": bound, "margin": margin, "any_order_bound": bounds.first_fit_any_order(n)})
    last = rows[-1]
    improved = last["mean"] < last["any_order_bound"]
    return ClaimResult(3, "FirstFit expected colors in random order", bool(ok and improved), {
        "cells": rows, "beats_any_order_bound_at_largest_n": improved,
    })


# -- 4: AdviceFirstFit consistency and robustness --------------------------------

def claim_advice_first_fit(seed: int, scale: dict) -> ClaimResult:
    afr = make_algorithm("advice-first-fit")
    bad_consistency = []
    runs = 0
    # random trees, correct advice, random and structured orders
    for t in range(scale["consistency_trees"]):
        s = derive_seed(seed, 4, 0, t)
        g = _random_tree(s, 2, scale["consistency_max_n"])
        bip = bipartition(g)
        advice = bip.side
        orders = {"random": sample_order(g.n, derive_seed(s, 2)).order}
        orders.update({k: o.order for k, o in adversarial_orders(g, bip.side).items()})
        for name, order in orders.items():
            x = max(play(g, order, advice, afr))
            runs += 1
            if x != 2:
                bad_consistency.append({"n": g.n, "order": name, "X": x})
    # every order of every small tree
    exhaustive = 0
    for n in range(2, scale["exhaustive_max_n"] + 1):
        for tree in nonisomorphic_trees(n):
            preds = make_predictions(bipartition(tree))
            dist = enumerate_orders(tree, "advice-first-fit", preds)
            exhaustive += dist.total
            if set(dist.counts) != {2}:
                bad_consistency.append({"n": n, "edges": [list(e) for e in tree.edges],
                                        "counts": {str(x): c for x, c in dist.counts.items()}})
    # error sweep on n = robust_n trees
    n = scale["robust_n"]
    size_bound = bounds.advice_first_fit_size(n)
    sweep = []
    bad_robust = []
    ks = [2 ** i for i in range(9)]
    for k in ks:
        top = 0
        for t in range(scale["robust_trials"]):
            s = derive_seed(seed, 4, 1, k, t)
            g = generate(InstanceSpec("random-labeled-tree", n, seed=s))
            bip = bipartition(g)
            preds = make_predictions(bip, "random", k=k, seed=derive_seed(s, 1))
            orders = [sample_order(n, derive_seed(s, 2)).order] + [o.order for o in adversarial_orders(g, bip.side).values()]
            for order in orders:
                top = max(top, max(play(g, order, preds.delivered, afr)))
        bound = bounds.advice_first_fit_errors(k)
        sweep.append({"k": k, "max": top, "bound": bound})
        if top > bound or top > size_bound:
            bad_robust.append({"k": k, "max": top, "bound": bound})
    # arbitrary advice: uniformly random bits and fully inverted bits
    arbitrary_top = 0
    for t in range(scale["robust_trials"]):
        s = derive_seed(seed, 4, 2, t)
        g = generate(InstanceSpec("random-labeled-tree", n, seed=s))
        bip = bipartition(g)
        noisy = make_rng(derive_seed(s, 1)).integers(0, 2, size=n).tolist()
        inverted = [1 - b for b in bip.side]
        for adv in (noisy, inverted):
            for order in [sample_order(n, derive_seed(s, 2)).order] + [o.order for o in adversarial_orders(g, bip.side).values()]:
                arbitrary_top = max(arbitrary_top, max(play(g, order, adv, afr)))
    if arbitrary_top > size_bound:
        bad_robust.append({"arbitrary_advice_max": arbitrary_top, "bound": size_bound})
    passed = not bad_consistency and not bad_robust
    return ClaimResult(4, "AdviceFirstFit consistency and robustness", passed, {
        "consistency_runs": runs, "exhaustive_orders": exhaustive, "consistency_failures": bad_consistency[:5],
        "sweep": sweep, "size_bound": size_bound, "arbitrary_advice_max": arbitrary_top,
        "robustness_failures": bad_robust,
    })


# -- 5: adaptive adversary --------------------------------------------------------

def claim_adversary(seed: int, scale: dict) -> ClaimResult:
    rows = []
    ok = True
    for name in ("advice-first-fit", "advice-cbip"):
        for ell in scale["adversary_ells"]:
            out = adversary.force(ell, make_algorithm(name))
            size = bounds.adversary_tree_size(ell)
            good = (out.verdict == adversary.FORCED and out.graph.n == size and out.X >= ell
                    and out.graph.is_tree())
            if name == "advice-first-fit":
                good &= out.X == ell
            ok &= good
            rows.append({"algorithm": name, "ell": ell, "verdict": out.verdict, "vertices": out.graph.n,
                         "X": out.X, "passed": good})
    return ClaimResult(5, "adversary forces ell colors on 3*2^(ell-3) vertices", ok, {"games": rows})


# -- 6: CBip and AdviceCBip on bipartite graphs -------------------------------------

def _small_bipartite_graphs(max_n):
    for n in range(1, max_n + 1):
        yield from nonisomorphic_trees(n)
    yield Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])  # C4
    yield Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])  # K_{2,3}
    yield Graph(6, [(i, j) for i in range(3) for j in range(3, 6)])  # K_{3,3}
    yield Graph(6, [(i, (i + 1) % 6) for i in range(6)])  # C6
    yield Graph(4, [(0, 1), (2, 3)])


def claim_bipartite(seed: int, scale: dict) -> ClaimResult:
    cells = []
    violations = []
    ks = [0, 1, 2, 4, 8, 16, 64]
    for n, trials in scale["bip_cells"]:
        for p in (0.01, 0.1, 0.5):
            for arrival in ("random", "bfs"):
                cfg = ExperimentConfig([InstanceSpec("random-bipartite", n, p=p)], ["advice-cbip", "cbip"], trials,
                                       derive_seed(seed, 6, n, int(p * 100)), k_values=[k for k in ks if k <= n],
                                       arrival=arrival)
                rep = run_experiment(cfg)
                for c in rep.cells:
                    cells.append({"n": n, "p": p, "arrival": arrival, "algorithm": c["algorithm"], "k": c["k"],
                                  "trials": c["trials"], "max": c["max"],
                                  "bounds": {b["name"]: b["value"] for b in c["bounds"]}})
                    if c["violation"]:
                        violations.append(cells[-1])
    # all orders of small bipartite graphs
    exhaustive = 0
    for g in _small_bipartite_graphs(scale["bip_exhaustive_max_n"]):
        preds = make_predictions(bipartition(g))
        plain = enumerate_orders(g, "cbip")
        advised = enumerate_orders(g, "advice-cbip", preds)
        exhaustive += plain.total + advised.total
        if plain.max_colors > bounds.cbip_size_all(g.n) + 1e-9:
            violations.append({"exhaustive": "cbip", "n": g.n, "edges": [list(e) for e in g.edges],
                               "max": plain.max_colors})
        if advised.max_colors > 2:
            violations.append({"exhaustive": "advice-cbip", "n": g.n, "edges": [list(e) for e in g.edges],
                               "max": advised.max_colors})
    return ClaimResult(6, "CBip and AdviceCBip color bounds on bipartite graphs", not violations, {
        "cells": len(cells), "exhaustive_orders": exhaustive, "violations": violations[:5],
        "largest_max": max(c["max"] for c in cells),
    })


# -- 7: error-path witness for ParityFirstFit ---------------------------------------

def claim_error_paths(seed: int, scale: dict) -> ClaimResult:
    pff = make_algorithm("parity-first-fit")
    violations = 0
    consistency_failures = 0
    per_k: dict[int, list[int]] = {}
    for t in range(scale["parity_runs"]):
        s = derive_seed(seed, 7, t)
        g = _random_tree(s, 2, scale["parity_max_n"])
        k = int(make_rng(derive_seed(s, 3)).integers(0, min(32, g.n) + 1))
        bip = bipartition(g)
        preds = make_predictions(bip, "random" if k else "none", k=k, seed=derive_seed(s, 4))
        order = sample_order(g.n, derive_seed(s, 2)).order
        colors = play(g, order, preds.delivered, pff)
        violations += len(check_error_paths(g, order, colors, preds).violations)
        x = max(colors)
        if k == 0 and x > 2:
            consistency_failures += 1
        per_k.setdefault(k, []).append(x)
    mean_rows = []
    mean_violations = 0
    for k in sorted(per_k):
        if k >= 3:
            mean = float(np.mean(per_k[k]))
            bound = bounds.parity_first_fit_mean(k)
            mean_violations += mean > bound
            mean_rows.append({"k": k, "runs": len(per_k[k]), "mean": mean, "max": max(per_k[k]), "bound": bound})
    passed = violations == 0 and consistency_failures == 0
    return ClaimResult(7, "error-path witness for every ParityFirstFit color", passed, {
        "runs": scale["parity_runs"], "violations": violations, "consistency_failures": consistency_failures,
        "max_color_seen": max(max(v) for v in per_k.values()),
        "mean_bound_recorded": {"violations": mean_violations, "rows": mean_rows[:8]},
    })


# -- 8: exact oracle vs Monte Carlo on P4 ----------------------------------------------

def claim_oracle_agreement(seed: int, scale: dict) -> ClaimResult:
    p4 = generate(InstanceSpec("path", 4))
    dist = enumerate_orders(p4, "first-fit")
    exact_ok = dist.probability(3) == Fraction(6, 24) and dist.expectation == Fraction(9, 4)
    trials = scale["oracle_trials"]
    cfg = ExperimentConfig([InstanceSpec("path", 4)], ["first-fit"], trials, derive_seed(seed, 8))
    cell = run_experiment(cfg).cells[0]
    p_hat = cell["histogram"].get("3", 0) / trials
    p = float(dist.probability(3))
    sigma = math.sqrt(p * (1 - p) / trials)
    z = (p_hat - p) / sigma
    mean_sigma = sigma  # X - 2 is the indicator of X = 3
    z_mean = (cell["mean"] - float(dist.expectation)) / mean_sigma
    passed = exact_ok and abs(z) <= 3 and abs(z_mean) <= 3
    return ClaimResult(8, "exact oracle and Monte Carlo agree on P4", passed, {
        "exact": dist.to_dict(), "trials": trials, "p_hat": p_hat, "z": z, "mean": cell["mean"], "z_mean": z_mean,
    })


# -- 9: numeric factorial lemmas ------------------------------------------------------

def claim_numeric(seed: int, scale: dict) -> ClaimResult:
    tail_fail = [s for s in range(1, 51) if not bounds.factorial_tail_sum(s).holds]
    tight = bounds.factorial_tail_sum(1)
    grid = []
    for c in (math.e, 4.262, 6.0):
        for e in (10, 16, 20):
            chk = bounds.factorial_growth(c, 2 ** e)
            grid.append({"c": c, "log2_n": e, "ell": chk.ell, "log2_factorial": chk.log2_factorial,
                         "exponent": chk.exponent_exact, "exponent_0469": chk.exponent_display, "holds": chk.holds})
    passed = not tail_fail and all(g["holds"] for g in grid)
    return ClaimResult(9, "factorial tail sum and factorial growth", passed, {
        "tail_sum_failures": tail_fail, "tail_sum_s1_upper": float(tight.upper), "growth": grid,
    })


CLAIMS: list[tuple[int, Callable]] = [
    (1, claim_first_fit_tail),
    (2, claim_increasing_paths),
    (3, claim_first_fit_mean),
    (4, claim_advice_first_fit),
    (5, claim_adversary),
    (6, claim_bipartite),
    (7, claim_error_paths),
    (8, claim_oracle_agreement),
    (9, claim_numeric),
]


@dataclass
class ClaimsReport:
    seed: int
    scale: str
    results: list
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"version": __version__, "rng": RNG_ID, "seed": self.seed, "scale": self.scale,
                "all_passed": self.passed, "claims": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=str) + "\n"


def run_claims(seed: int, scale: str = "full", only=None, determinism: bool = False) -> ClaimsReport:
    """Run the suite; a claim that raises is recorded as failed with the error."""
    params = SCALES[scale]
    results = []
    timings = {}
    for cid, fn in CLAIMS:
        if only is not None and cid not in only:
            continue
        start = time.perf_counter()
        try:
            res = fn(seed, params)
        except Exception as exc:  # a crashing algorithm is a failed claim
            log.exception("claim %d raised", cid)
            res = ClaimResult(cid, fn.__name__, False, {"error": f"{type(exc).__name__}: {exc}"})
        timings[cid] = time.perf_counter() - start
        results.append(res)
    if determinism:
        start = time.perf_counter()
        inner = None if only is None or not (set(only) - {10}) else set(only) - {10}
        first = run_claims(seed, "quick", inner).to_json()
        second = run_claims(seed, "quick", inner).to_json()
        results.append(ClaimResult(10, "repeated runs serialize identically", first == second,
                                   {"bytes": len(first), "identical": first == second}))
        timings[10] = time.perf_counter() - start
    return ClaimsReport(seed, scale, results, timings)

"""FirstFit on trees: exact small cases, tail frequencies, and the mean as n grows."""
import numpy as np

from online_coloring.analysis import enumerate_orders, nonisomorphic_trees
from online_coloring.bounds import first_fit_any_order, first_fit_mean, first_fit_tail
from online_coloring.harness import ExperimentConfig, run_experiment, tail_check
from online_coloring.instances import InstanceSpec, generate

# %% every order of the path on 4 vertices
p4 = generate(InstanceSpec("path", 4))
dist = enumerate_orders(p4, "first-fit")
print("P4 counts", dist.counts, "E[X] =", dist.expectation)  # 18 orders use 2 colors, 6 use 3

# %% worst tree for each n, all orders
for n in range(3, 8):
    worst = max(nonisomorphic_trees(n), key=lambda t: enumerate_orders(t, "first-fit").tail(3))
    d = enumerate_orders(worst, "first-fit")
    print(f"n={n}  P[X>=3]={float(d.tail(3)):.3f}  bound n^2/3!={float(first_fit_tail(n, 3)):.2f}"
          f"  P[X>=4]={float(d.tail(4)):.4f}  bound={float(first_fit_tail(n, 4)):.3f}")

# %% tail frequencies on a random tree with 100 vertices
g = generate(InstanceSpec("random-labeled-tree", 100, seed=1))
chk = tail_check(g, "first-fit", range(2, 10), trials=5000, seed=2)
for r in chk.rows:
    print(f"ell={r.ell}  freq={r.frequency:.4f}  wilson=[{r.low:.4f}, {r.high:.4f}]  bound={r.bound:.4g}"
          f"{'  (vacuous)' if r.vacuous else ''}")

# %% mean colors against n; the random-order bound grows like log n / log log n
sizes = [10**2, 10**3, 10**4]
rep = run_experiment(ExperimentConfig([InstanceSpec("random-labeled-tree", n) for n in sizes], ["first-fit"],
                                      trials=50, seed=3))
means = np.array([c["mean"] for c in rep.cells])
for n, m in zip(sizes, means):
    print(f"n={n:>6}  mean X={m:.2f}  random-order bound={first_fit_mean(n):.2f}  any-order bound={first_fit_any_order(n):.2f}")

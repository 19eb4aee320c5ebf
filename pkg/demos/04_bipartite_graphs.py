"""CBip and AdviceCBip on random bipartite graphs."""
import math

from online_coloring.analysis import enumerate_orders
from online_coloring.harness import ExperimentConfig, run_experiment
from online_coloring.instances import InstanceSpec, generate

# %% the path on 6 vertices is the smallest case where CBip needs 4 colors
dist = enumerate_orders(generate(InstanceSpec("path", 6)), "cbip")
print("P6 under CBip:", dist.counts, " all-n bound 2 log(n+2) - 2 =", 2 * math.log2(8) - 2)

# %% sparse and dense random bipartite graphs, random and BFS arrival
for arrival in ("random", "bfs"):
    cfg = ExperimentConfig([InstanceSpec("random-bipartite", 500, p=p) for p in (0.005, 0.05, 0.5)],
                           ["cbip", "advice-cbip"], trials=10, seed=5, k_values=[0, 4, 32], arrival=arrival)
    rep = run_experiment(cfg)
    print(rep.to_csv())

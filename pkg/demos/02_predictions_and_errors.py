"""How the three advice algorithms degrade as prediction errors are added."""
from online_coloring.algorithms import make_algorithm
from online_coloring.graph import bipartition
from online_coloring.harness import sweep_errors
from online_coloring.instances import InstanceSpec, generate
from online_coloring.reveal import make_predictions, run, sample_order

# %% one run, one flipped bit
g = generate(InstanceSpec("path", 6))
preds = make_predictions(bipartition(g), "explicit", errors=[2])
t = run(g, sample_order(6, 4), preds, make_algorithm("parity-first-fit"))
print("truth    ", preds.truth)
print("delivered", preds.delivered, " k =", preds.k, " k_min =", preds.k_min)
print("order", t.order, "colors", t.colors)  # the flipped vertex is pushed to an even color

# %% sweeps over k on random trees (advice-first-fit, parity-first-fit) and bipartite graphs (advice-cbip)
ks = [0, 1, 2, 4, 8, 16, 32, 64]
tree = InstanceSpec("random-labeled-tree", 1000)
for name, spec in [("advice-first-fit", tree), ("parity-first-fit", tree),
                   ("advice-cbip", InstanceSpec("random-bipartite", 400, p=0.02))]:
    rows, _ = sweep_errors(spec, name, ks, trials=20, seed=7)
    print(name)
    for r in rows:
        bound = "-" if r["bound"] is None else f"{r['bound']:.1f}"
        print(f"  k={r['k']:>3}  mean={r['mean']:.2f}  max={r['max']}  bound={bound}")

"""The adaptive adversary against consistent advice algorithms, and against one that is not."""
from online_coloring.adversary import force, probe_isolated
from online_coloring.algorithms import FirstFit, make_algorithm
from online_coloring.graph import to_edge_list

# %% forced color counts and vertex use
for name in ("advice-first-fit", "advice-cbip"):
    for ell in range(3, 10):
        out = force(ell, make_algorithm(name))
        print(f"{name:<17} ell={ell}  verdict={out.verdict}  vertices={out.vertices_used}  colors={out.X}")

# %% the 12-vertex tree that forces 5 colors
out = force(5, make_algorithm("advice-first-fit"))
print(to_edge_list(out.graph))
print("advice", out.advice)
print("colors", out.transcript.colors)


# %% an algorithm that ignores its advice bit is caught on the first two probes
class Blind(FirstFit):
    name = "blind"
    requires_advice = True


res = probe_isolated(Blind())
sub, advice, colors = res.outcome.completion()
print("probe colors", res.colors, "triggered", res.triggered)
print("witness edges", sub.edges, "advice", advice, "colors", colors)  # error-free advice, 3 colors

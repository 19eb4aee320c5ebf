"""Online coloring of trees and bipartite graphs: random arrival orders,
predicted colors, exact oracles and Monte Carlo experiments."""

__version__ = "0.1.0"

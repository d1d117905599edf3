"""Capacity bounds for a menagerie of seed graphs.

Every seed graph yields a sum-network whose best possible rate is an exact
rational: alpha*b/(b+|E|) when built without the star source, and
alpha*b/(b+|E|+1) with it.  The star variant costs one extra slot but
needs far fewer sources than replicating a complete-graph construction of
the same rate.
"""

from sumnet import build_sum_network, capacity_upper_bound, classify, min_cut
from sumnet.fixtures import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diamond_graph,
    petersen_graph,
)
from sumnet.network import Msg

SEEDS = [
    ("K3", complete_graph(3), 1),
    ("K5", complete_graph(5), 1),
    ("K7", complete_graph(7), 1),
    ("diamond (K4 minus an edge)", diamond_graph(), 2),
    ("6-cycle", cycle_graph(6), 2),
    ("Petersen", petersen_graph(), 2),
    ("K_{3,5}", complete_bipartite(3, 5), 1),
]

print(f"{'seed':<28}{'class':<22}{'constr':<8}{'capacity':<10}{'sources':<9}{'cut to t*'}")
for name, g, construction in SEEDS:
    cap = capacity_upper_bound(g, construction)
    net = build_sum_network(g, construction)
    cut = min_cut(net, Msg.star())
    print(
        f"{name:<28}{classify(g).tag:<22}{construction:<8}"
        f"{str(cap):<10}{len(net.sources):<9}{cut}"
    )

print()
print("The cut between all sources and the star terminal always equals b,")
print("the number of bottleneck edges; with alpha parallel pipes it scales:")
for alpha in (1, 2, 3):
    net = build_sum_network(petersen_graph(), 2, alpha=alpha)
    print(f"  Petersen, alpha={alpha}: min cut {min_cut(net, Msg.star())}")

import json

import numpy as np
import pytest

from helpers import brute_min_cut, random_connected_nontree_graph
from sumnet.errors import InvalidCycle
from sumnet.fixtures import (
    complete_bipartite,
    complete_graph,
    diamond_graph,
    petersen_graph,
)
from sumnet.graph import CycleSubgraph
from sumnet.network import (
    Msg,
    build_sum_network,
    capacity_upper_bound,
    export_dot,
    export_json,
    import_json,
    min_cut,
)
from fractions import Fraction


def _a_tokens(net, i):
    return sorted(m.token() for m in net.A[i])


def test_diamond_c1_a_sets():
    net = build_sum_network(diamond_graph(), 1)
    assert _a_tokens(net, 1) == ["e1-2", "e1-3", "e1-4", "v1"]
    assert _a_tokens(net, 2) == ["e1-2", "e2-3", "v2"]
    assert _a_tokens(net, 3) == ["e1-3", "e2-3", "e3-4", "v3"]
    assert _a_tokens(net, 4) == ["e1-4", "e3-4", "v4"]


def test_diamond_c2_a_sets():
    net = build_sum_network(diamond_graph(), 2)
    star = Msg.star()
    for i in (1, 2, 3):
        assert star in net.A[i]
    assert star not in net.A[4]
    # the off-cycle vertex terminal is the only one needing a star direct edge
    assert star in net.direct[Msg.vertex(4)]
    for t in net.terminals:
        if t != Msg.vertex(4):
            assert star not in net.direct[t]


def test_source_terminal_counts():
    k3 = build_sum_network(complete_graph(3), 1)
    assert len(k3.sources) == 6 and len(k3.terminals) == 7
    d2 = build_sum_network(diamond_graph(), 2)
    assert len(d2.sources) == 10 and len(d2.terminals) == 10


def test_pair_intersection_property():
    for g, construction in [
        (diamond_graph(), 1),
        (diamond_graph(), 2),
        (petersen_graph(), 2),
        (complete_bipartite(3, 5), 1),
    ]:
        net = build_sum_network(g, construction)
        cyc_edges = net.cycle.edge_set if net.cycle else frozenset()
        for e in g.edges:
            i, j = e
            overlap = net.A[i] & net.A[j]
            expect = {Msg.edge(e)}
            if e in cyc_edges:
                expect.add(Msg.star())
            assert overlap == expect


def test_terminal_coverage_partition():
    rng = np.random.default_rng(5)
    graphs = [diamond_graph(), complete_graph(3)]
    graphs += [random_connected_nontree_graph(rng) for _ in range(10)]
    for g in graphs:
        for construction in (1, 2):
            net = build_sum_network(g, construction)
            full = set(net.sources)
            for t in net.terminals:
                covered = set(net.direct[t])
                for i in net.head_feeds[t]:
                    covered |= net.A[i]
                assert covered == full


def test_wiring_matches_complements():
    net = build_sum_network(diamond_graph(), 1)
    plain = {m for m in net.sources}
    for t in net.terminals:
        if t.kind == "vertex":
            assert set(net.direct[t]) == plain - net.A[t.key[0]]
        elif t.kind == "edge":
            i, j = t.key
            assert set(net.direct[t]) == plain - (net.A[i] | net.A[j])
        else:
            assert net.direct[t] == ()


def test_topology_is_layered_dag():
    net = build_sum_network(diamond_graph(), 2)
    layer = {"s": 0, "tail": 1, "head": 2, "t": 3}
    for u, v, _ in net.unit_arcs():
        lu = layer[u.split(":", 1)[0]]
        lv = layer[v.split(":", 1)[0]]
        assert lu < lv, f"arc {u} -> {v} goes backwards"


def test_capacity_upper_bounds():
    assert capacity_upper_bound(complete_graph(3), 1) == Fraction(1, 2)
    assert capacity_upper_bound(diamond_graph(), 2) == Fraction(2, 5)
    assert capacity_upper_bound(petersen_graph(), 2) == Fraction(5, 13)
    assert capacity_upper_bound(complete_bipartite(3, 5), 1) == Fraction(8, 23)
    for q in range(2, 6):
        assert capacity_upper_bound(complete_graph(2 * q - 1), 1) == Fraction(1, q)
    # alpha scales the numerator only
    assert capacity_upper_bound(diamond_graph(), 2, alpha=5) == Fraction(2, 1)


def test_invalid_cycle_rejected():
    g = diamond_graph()
    # (1, 3, 4) is a triangle but not the lexicographic minimum; it is still
    # a valid shortest cycle, so it must be accepted
    ok = CycleSubgraph((1, 3, 4), ((1, 3), (3, 4), (1, 4)))
    build_sum_network(g, 2, cycle=ok)
    with pytest.raises(InvalidCycle):
        build_sum_network(g, 2, cycle=CycleSubgraph((1, 2, 4), ((1, 2), (2, 4), (1, 4))))
    with pytest.raises(InvalidCycle):
        # a 4-cycle exists but is longer than the girth
        build_sum_network(
            g, 2, cycle=CycleSubgraph((1, 2, 3, 4), ((1, 2), (2, 3), (3, 4), (1, 4)))
        )


def test_min_cut_star_terminal_alpha_scaling():
    for g, construction in [
        (complete_graph(3), 1),
        (diamond_graph(), 2),
        (complete_bipartite(3, 5), 1),
    ]:
        for alpha in (1, 2, 3):
            net = build_sum_network(g, construction, alpha=alpha)
            assert min_cut(net, Msg.star()) == alpha * g.b


def test_min_cut_star_invariant_random_networks():
    rng = np.random.default_rng(31)
    for _ in range(8):
        g = random_connected_nontree_graph(rng, max_b=7)
        for construction in (1, 2):
            for alpha in (1, 2, 3):
                net = build_sum_network(g, construction, alpha=alpha)
                assert min_cut(net, Msg.star()) == alpha * g.b


def test_min_cut_matches_brute_force_on_k3():
    net = build_sum_network(complete_graph(3), 1)
    for t in net.terminals:
        assert min_cut(net, t) == brute_min_cut(net, t)


def test_min_cut_alpha2_doubles_brute_force():
    net = build_sum_network(complete_graph(3), 1, alpha=2)
    t = Msg.star()
    assert min_cut(net, t) == brute_min_cut(net, t) == 6


def test_export_json_roundtrip():
    for construction in (1, 2):
        net = build_sum_network(diamond_graph(), construction)
        doc = export_json(net)
        assert export_json(import_json(doc)) == doc


def test_export_json_counts():
    net = build_sum_network(diamond_graph(), 2)
    doc = json.loads(export_json(net))
    roles = [n["role"] for n in doc["nodes"]]
    assert roles.count("source") == 10
    assert roles.count("terminal") == 10


def test_export_dot_contains_bottlenecks():
    net = build_sum_network(complete_graph(3), 1)
    dot = export_dot(net)
    for i in (1, 2, 3):
        assert f'"tail:{i}" -> "head:{i}"' in dot
    assert dot.count("subgraph cluster_") == 3


def test_construct_validates_arguments():
    with pytest.raises(ValueError):
        build_sum_network(diamond_graph(), 3)
    with pytest.raises(ValueError):
        build_sum_network(diamond_graph(), 1, alpha=0)

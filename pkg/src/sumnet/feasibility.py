"""Integer split assignments that parameterize the achievable codes.

Every seed edge (i, j) carries two non-negative integers m_(i,j)(i) and
m_(i,j)(j) that must sum to b.  The loads at each vertex are capped by |E|
(construction 1) or |E| + 1 (construction 2); construction 2 additionally
requires the total slack over the chosen cycle's vertices to reach b, which
is what lets the bottlenecks jointly spell out the star message.

Closed forms cover regular and biregular bipartite seeds.  Everything else
goes through an exact backtracking search; its "infeasible" answer is a
statement about this search space only, not about the network's capacity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import MissingVariable, NotBiregular, NotRegular
from .graph import CycleSubgraph, UndirectedGraph, classify, euler_tour, shortest_cycle

__all__ = [
    "FeasAssignment",
    "CheckResult",
    "regular_assignment",
    "biregular_assignment",
    "solve_feasibility",
    "check_assignment",
]

Edge = tuple[int, int]


@dataclass(frozen=True)
class FeasAssignment:
    """Edge split values plus, for construction 2, the star block widths.

    m maps (edge, endpoint) to the integer share of that endpoint.  w is
    nonzero only on cycle vertices and always sums to exactly b, which the
    encoder layout relies on to tile the star message without gaps.
    """

    construction: int
    m: dict[tuple[Edge, int], int]
    w: dict[int, int] = field(default_factory=dict)

    def at(self, e: Edge, v: int) -> int:
        try:
            return self.m[(e, v)]
        except KeyError:
            raise MissingVariable(f"no value for edge {e} at vertex {v}") from None

    def vertex_load(self, g: UndirectedGraph, v: int) -> int:
        return sum(self.at(e, v) for e in g.incident(v))

    def to_json(self) -> str:
        doc = {
            "construction": self.construction,
            "m": [
                {"i": e[0], "j": e[1], "at_i": self.m[(e, e[0])], "at_j": self.m[(e, e[1])]}
                for e in sorted({e for e, _ in self.m})
            ],
            "w": {str(v): wv for v, wv in sorted(self.w.items())},
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violation: str | None = None

    def __bool__(self):
        return self.ok


def check_assignment(
    g: UndirectedGraph,
    a: FeasAssignment,
    construction: int,
    cycle: CycleSubgraph | None = None,
) -> CheckResult:
    """Evaluate the constraint system directly; name the first violation."""
    if construction == 2 and cycle is None:
        cycle = shortest_cycle(g)
    cap = len(g.edges) + (1 if construction == 2 else 0)
    for e in g.edges:
        si, sj = a.at(e, e[0]), a.at(e, e[1])
        if si < 0 or sj < 0:
            return CheckResult(False, f"negative share on edge {e}")
        if si + sj != g.b:
            return CheckResult(
                False, f"edge {e}: shares {si} + {sj} != {g.b}"
            )
    for v in range(1, g.b + 1):
        load = a.vertex_load(g, v)
        if load > cap:
            return CheckResult(False, f"vertex {v}: load {load} exceeds cap {cap}")
    if construction == 2:
        slack = sum(cap - a.vertex_load(g, v) for v in cycle.vertices)
        if slack < g.b:
            return CheckResult(
                False, f"cycle slack {slack} below required {g.b}"
            )
    return CheckResult(True)


def regular_assignment(g: UndirectedGraph) -> FeasAssignment:
    """Closed form for k-regular seeds.

    Even b: every share is b/2.  Odd b: k is then even, so a closed trail
    through all edges exists; walking it and assigning the two shares of
    each traversed edge alternately floor(b/2), ceil(b/2) keeps every
    vertex's load at exactly k*b/2 = |E|.
    """
    cls = classify(g)
    if cls.tag != "regular":
        raise NotRegular("seed graph degrees are not all equal")
    m: dict[tuple[Edge, int], int] = {}
    if g.b % 2 == 0:
        half = g.b // 2
        for e in g.edges:
            m[(e, e[0])] = half
            m[(e, e[1])] = half
    else:
        lo, hi = g.b // 2, g.b // 2 + 1
        toggle = lo
        for u, v in euler_tour(g):
            e = (u, v) if u < v else (v, u)
            m[(e, u)] = toggle
            toggle = lo + hi - toggle
            m[(e, v)] = toggle
            toggle = lo + hi - toggle
    return FeasAssignment(construction=1, m=m)


def biregular_assignment(g: UndirectedGraph) -> FeasAssignment:
    """Closed form for biregular bipartite seeds.

    Each edge gives its left endpoint share n_l and its right endpoint
    share n_r; the loads come out to d_l*n_l = d_r*n_r = |E| on both sides.
    """
    cls = classify(g)
    if cls.tag != "biregular_bipartite":
        raise NotBiregular("seed graph is not biregular bipartite")
    # rebuild the bipartition: the left part contains vertex 1
    color = {1: 0}
    queue = [1]
    adj = g.adjacency()
    while queue:
        v = queue.pop()
        for u in adj[v]:
            if u not in color:
                color[u] = 1 - color[v]
                queue.append(u)
    n = {0: cls.n_left, 1: cls.n_right}
    m: dict[tuple[Edge, int], int] = {}
    for e in g.edges:
        m[(e, e[0])] = n[color[e[0]]]
        m[(e, e[1])] = n[color[e[1]]]
    return FeasAssignment(construction=1, m=m)


def _normalized_w(g: UndirectedGraph, m, cycle: CycleSubgraph) -> dict[int, int]:
    """Star widths from the raw slack, trimmed to sum exactly to b.

    Trimming always decrements the currently largest width (smallest vertex
    first on ties), so the result is deterministic and stays non-negative.
    """
    cap = len(g.edges) + 1
    w = {
        v: cap - sum(m[(e, v)] for e in g.incident(v))
        for v in sorted(cycle.vertices)
    }
    excess = sum(w.values()) - g.b
    while excess > 0:
        v = max(w, key=lambda u: (w[u], -u))
        w[v] -= 1
        excess -= 1
    return {v: wv for v, wv in w.items() if wv > 0}


def solve_feasibility(
    g: UndirectedGraph,
    construction: int,
    cycle: CycleSubgraph | None = None,
) -> FeasAssignment | None:
    """Find any satisfying assignment, or None when the search proves none.

    Closed forms are preferred when they apply (and, for construction 2,
    when their slack over the cycle reaches b); the backtracking search is
    the fallback and is exact but exponential in the worst case, sized for
    desk-scale seeds.
    """
    if construction not in (1, 2):
        raise ValueError(f"construction must be 1 or 2, got {construction}")
    if construction == 2 and cycle is None:
        cycle = shortest_cycle(g)

    cls = classify(g)
    closed = None
    if cls.tag == "regular":
        closed = regular_assignment(g)
    elif cls.tag == "biregular_bipartite":
        closed = biregular_assignment(g)
    if closed is not None:
        if construction == 1:
            return closed
        if check_assignment(g, closed, 2, cycle):
            return FeasAssignment(
                construction=2, m=dict(closed.m), w=_normalized_w(g, closed.m, cycle)
            )

    m = _backtrack(g, construction, cycle)
    if m is None:
        return None
    w = _normalized_w(g, m, cycle) if construction == 2 else {}
    return FeasAssignment(construction=construction, m=m, w=w)


def _backtrack(
    g: UndirectedGraph, construction: int, cycle: CycleSubgraph | None
):
    """Exact search over one share per edge (the smaller endpoint's).

    Edges are ordered by descending larger endpoint degree, then
    canonically; values are tried from b//2 outward.  Pruning uses per
    vertex load caps, the forced minimum share implied by the opposite
    endpoint's remaining budget, and the running cycle-load ceiling.
    """
    b = g.b
    cap = len(g.edges) + (1 if construction == 2 else 0)
    cyc = set(cycle.vertices) if construction == 2 else set()
    # total load allowed over cycle vertices so the slack still reaches b
    cycle_ceiling = len(cyc) * cap - b if construction == 2 else None
    # implied equalities: edge sums fix the grand total at b*|E|, so every
    # vertex load must hit the cap exactly, except on the cycle, whose
    # joint load must hit the ceiling exactly
    required = {
        v: 0 if v in cyc else cap for v in range(1, b + 1)
    }

    order = sorted(
        g.edges, key=lambda e: (-max(g.degree(e[0]), g.degree(e[1])), e)
    )
    pending: dict[int, list[Edge]] = {v: [] for v in range(1, b + 1)}
    for e in order:
        pending[e[0]].append(e)
        pending[e[1]].append(e)

    load = {v: 0 for v in range(1, b + 1)}
    value: dict[Edge, int] = {}

    center = b // 2
    ladder = [center]
    for d in range(1, b + 1):
        if center - d >= 0:
            ladder.append(center - d)
        if center + d <= b:
            ladder.append(center + d)

    def feasible_forward() -> bool:
        # every vertex must be able to absorb the forced minimum shares of
        # its unassigned edges and still be able to reach its required
        # load; the cycle's joint load must stay able to hit its target
        for v in range(1, b + 1):
            budget = cap - load[v]
            if budget < 0:
                return False
            slots = pending_unassigned[v]
            if load[v] + b * len(slots) < required[v]:
                return False
            forced = 0
            for e in slots:
                other = e[0] + e[1] - v
                forced += max(0, b - (cap - load[other]))
            if forced > budget:
                return False
        if construction == 2:
            on_cycle = sum(load[v] for v in cyc)
            floor_on_cycle = on_cycle
            for e in unassigned:
                i, j = e
                if i in cyc and j in cyc:
                    floor_on_cycle += b
                elif i in cyc:
                    floor_on_cycle += max(0, b - (cap - load[j]))
                elif j in cyc:
                    floor_on_cycle += max(0, b - (cap - load[i]))
            if floor_on_cycle > cycle_ceiling:
                return False
            reachable = on_cycle + sum(
                min(cap - load[v], b * len(pending_unassigned[v])) for v in cyc
            )
            if reachable < cycle_ceiling:
                return False
        return True

    pending_unassigned = {v: set(pending[v]) for v in pending}
    unassigned = set(order)

    def assign(e: Edge, share_low: int):
        i, j = e
        value[e] = share_low
        load[i] += share_low
        load[j] += b - share_low
        pending_unassigned[i].discard(e)
        pending_unassigned[j].discard(e)
        unassigned.discard(e)

    def unassign(e: Edge):
        i, j = e
        share_low = value.pop(e)
        load[i] -= share_low
        load[j] -= b - share_low
        pending_unassigned[i].add(e)
        pending_unassigned[j].add(e)
        unassigned.add(e)

    def dfs(idx: int) -> bool:
        if idx == len(order):
            return True
        e = order[idx]
        i, j = e
        hi = min(b, cap - load[i])
        lo = max(0, b - (cap - load[j]))
        for v in ladder:
            if not (lo <= v <= hi):
                continue
            assign(e, v)
            if feasible_forward() and dfs(idx + 1):
                return True
            unassign(e)
        return False

    if not dfs(0):
        return None
    out: dict[tuple[Edge, int], int] = {}
    for e, v in value.items():
        out[(e, e[0])] = v
        out[(e, e[1])] = b - v
    return out

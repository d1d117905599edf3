"""Undirected seed graphs.

A seed graph must be simple, connected, and have at least as many edges as
vertices, which guarantees it contains a cycle.  Vertices are labeled 1..b.
Edges are stored as (i, j) pairs with i < j, sorted lexicographically; that
ordering is the canonical edge order used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    Disconnected,
    IsTree,
    NotSimple,
    OddDegreeVertex,
    ParseError,
)

__all__ = [
    "UndirectedGraph",
    "CycleSubgraph",
    "GraphClass",
    "parse_graph",
    "shortest_cycle",
    "euler_tour",
    "classify",
]

Edge = tuple[int, int]


def canonical_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple connected non-tree graph on vertices 1..b."""

    b: int
    edges: tuple[Edge, ...]

    def __init__(self, b: int, edges):
        if b < 1:
            raise ParseError(f"vertex count must be positive, got {b}")
        seen: set[Edge] = set()
        for i, j in edges:
            if not (1 <= i <= b and 1 <= j <= b):
                raise ParseError(f"edge ({i}, {j}) references a vertex outside 1..{b}")
            if i == j:
                raise NotSimple(f"self loop at vertex {i}")
            e = canonical_edge(i, j)
            if e in seen:
                raise NotSimple(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if len(self.edges) < self.b:
            raise IsTree(f"{len(self.edges)} edges < {self.b} vertices, graph has no cycle")
        if not self._connected():
            raise Disconnected("graph is not connected")

    def _connected(self) -> bool:
        adj = self.adjacency()
        stack, seen = [1], {1}
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.b

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.b + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for v in adj:
            adj[v].sort()
        return adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(i + j - v for i, j in self.edges if v in (i, j)))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        d = [0] * (self.b + 1)
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d[1:]

    def incident(self, v: int) -> tuple[Edge, ...]:
        """Edges touching v, in canonical order."""
        return tuple(e for e in self.edges if v in e)

    def has_edge(self, i: int, j: int) -> bool:
        return canonical_edge(i, j) in set(self.edges)


@dataclass(frozen=True)
class CycleSubgraph:
    """A chordless minimum-length cycle, in traversal order.

    The vertex list starts at the smallest cycle vertex and proceeds toward
    its smaller cycle neighbor, so equal cycles serialize identically.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __len__(self):
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class GraphClass:
    """Structural tag: regular(k), biregular_bipartite(n_l, n_r, d_l, d_r), or general."""

    tag: str
    k: int = 0
    n_left: int = 0
    n_right: int = 0
    d_left: int = 0
    d_right: int = 0

    @classmethod
    def regular(cls, k: int) -> "GraphClass":
        return cls("regular", k=k)

    @classmethod
    def biregular(cls, n_l: int, n_r: int, d_l: int, d_r: int) -> "GraphClass":
        return cls("biregular_bipartite", n_left=n_l, n_right=n_r, d_left=d_l, d_right=d_r)

    @classmethod
    def general(cls) -> "GraphClass":
        return cls("general")


def parse_graph(text: str) -> UndirectedGraph:
    """Parse the edge-list format: first line "b m", then m lines "i j".

    Blank lines and text after '#' are ignored.
    """
    rows: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ParseError("empty graph document")
    header = rows[0]
    if len(header) != 2:
        raise ParseError(f"header must be 'b m', got {' '.join(header)!r}")
    try:
        b, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError(f"non-integer header: {exc}") from exc
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header promises {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise ParseError(f"edge line must be 'i j', got {' '.join(row)!r}")
        try:
            i, j = int(row[0]), int(row[1])
        except ValueError as exc:
            raise ParseError(f"non-integer edge endpoint: {exc}") from exc
        edges.append((i, j))
    return UndirectedGraph(b, edges)


def shortest_cycle(g: UndirectedGraph) -> CycleSubgraph:
    """Find a minimum-length cycle with a deterministic tie-break.

    Among all minimum-length cycles the one whose sorted vertex list is
    lexicographically smallest wins.  Every simple cycle is visited from its
    smallest vertex with depth pruning at the best length found so far,
    which is exact at this package's desk scale.

    A minimum-length cycle is always chordless: a chord would close a
    strictly shorter cycle.
    """
    adj = g.adjacency()
    best_len = g.b + 1
    best_set: tuple[int, ...] | None = None

    def dfs(start: int, path: list[int], on_path: set[int]):
        nonlocal best_len, best_set
        tail = path[-1]
        if len(path) >= 3 and start in adj[tail]:
            cand = tuple(sorted(path))
            if len(path) < best_len or (len(path) == best_len and cand < best_set):
                best_len = len(path)
                best_set = cand
        if len(path) >= best_len:
            return
        for u in adj[tail]:
            if u > start and u not in on_path:
                path.append(u)
                on_path.add(u)
                dfs(start, path, on_path)
                on_path.discard(u)
                path.pop()

    for s in range(1, g.b + 1):
        dfs(s, [s], {s})
    if best_set is None:
        # unreachable: the constructor rejects acyclic graphs
        raise IsTree("graph contains no cycle")

    # A chordless cycle is recovered from its vertex set alone: each member
    # has exactly two neighbors inside the set.
    members = set(best_set)
    start = best_set[0]
    inner = [u for u in adj[start] if u in members]
    order = [start, min(inner)]
    while len(order) < best_len:
        nxt = [u for u in adj[order[-1]] if u in members and u != order[-2]]
        order.append(nxt[0])
    edges = tuple(
        canonical_edge(order[k], order[(k + 1) % best_len]) for k in range(best_len)
    )
    return CycleSubgraph(tuple(order), edges)


def is_chordless(g: UndirectedGraph, cycle: CycleSubgraph) -> bool:
    """True when every seed edge between cycle vertices lies on the cycle."""
    members = cycle.vertex_set
    on_cycle = cycle.edge_set
    for e in g.edges:
        if e[0] in members and e[1] in members and e not in on_cycle:
            return False
    return True


def euler_tour(g: UndirectedGraph) -> list[tuple[int, int]]:
    """Closed trail from vertex 1 covering every edge exactly once.

    Uses the stack-based splice construction, always leaving a vertex over
    its smallest unused neighbor, so the result is deterministic.
    """
    odd = [v for v in range(1, g.b + 1) if g.degree(v) % 2]
    if odd:
        raise OddDegreeVertex(f"vertices with odd degree: {odd}")
    adj = g.adjacency()
    cursor = {v: 0 for v in adj}
    used_edges: set[Edge] = set()

    stack = [1]
    walk: list[int] = []
    while stack:
        v = stack[-1]
        advanced = False
        while cursor[v] < len(adj[v]):
            u = adj[v][cursor[v]]
            e = canonical_edge(v, u)
            if e in used_edges:
                cursor[v] += 1
                continue
            used_edges.add(e)
            stack.append(u)
            advanced = True
            break
        if not advanced:
            walk.append(stack.pop())
    walk.reverse()
    assert walk[0] == walk[-1] == 1 and len(walk) == len(g.edges) + 1
    return [(walk[k], walk[k + 1]) for k in range(len(walk) - 1)]


def classify(g: UndirectedGraph) -> GraphClass:
    """Tag the graph as regular, biregular bipartite, or general.

    Regular wins when both apply (a balanced regular bipartite graph is
    reported as regular).  The left part of a bipartition is the one
    containing vertex 1.
    """
    degs = g.degrees()
    if len(set(degs)) == 1:
        return GraphClass.regular(degs[0])

    # 2-color by BFS; any odd cycle kills bipartiteness.
    color = {1: 0}
    queue = [1]
    adj = g.adjacency()
    while queue:
        v = queue.pop()
        for u in adj[v]:
            if u not in color:
                color[u] = 1 - color[v]
                queue.append(u)
            elif color[u] == color[v]:
                return GraphClass.general()
    left = sorted(v for v in color if color[v] == 0)
    right = sorted(v for v in color if color[v] == 1)
    d_left = {g.degree(v) for v in left}
    d_right = {g.degree(v) for v in right}
    if len(d_left) == 1 and len(d_right) == 1:
        return GraphClass.biregular(len(left), len(right), d_left.pop(), d_right.pop())
    return GraphClass.general()

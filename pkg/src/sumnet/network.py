"""Sum-network construction from a seed graph.

The network has one bottleneck edge per seed vertex.  Sources correspond to
seed vertices and seed edges, plus an extra star source in construction 2.
The messages wired into bottleneck i form the set A_i: vertex i's own
message, the messages of its incident seed edges, and the star message when
i lies on the chosen shortest cycle.  Each terminal reads the bottlenecks
that carry part of its demand and receives every remaining message over a
direct edge, so it can always reconstruct the sum of all sources.

Every capacity-alpha connection is modeled as alpha parallel unit edges
carrying an index, which is also how the JSON export lists arcs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidCycle, ParseError
from .graph import CycleSubgraph, UndirectedGraph, is_chordless, shortest_cycle

__all__ = [
    "Msg",
    "SumNetwork",
    "build_sum_network",
    "capacity_upper_bound",
    "min_cut",
    "export_dot",
    "export_json",
    "import_json",
]

_KIND_RANK = {"vertex": 0, "edge": 1, "star": 2}


@dataclass(frozen=True)
class Msg:
    """Identity of a source message and of its mirror terminal.

    kind is "vertex", "edge", or "star"; key is (i,), (i, j) with i < j,
    or () respectively.
    """

    kind: str
    key: tuple = ()

    @classmethod
    def vertex(cls, i: int) -> "Msg":
        return cls("vertex", (i,))

    @classmethod
    def edge(cls, e) -> "Msg":
        i, j = e
        return cls("edge", (min(i, j), max(i, j)))

    @classmethod
    def star(cls) -> "Msg":
        return cls("star")

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.key)

    def token(self) -> str:
        """Compact stable identifier: "v3", "e1-2", or "star"."""
        if self.kind == "vertex":
            return f"v{self.key[0]}"
        if self.kind == "edge":
            return f"e{self.key[0]}-{self.key[1]}"
        return "star"

    @classmethod
    def from_token(cls, token: str) -> "Msg":
        if token == "star":
            return cls.star()
        if token.startswith("v"):
            return cls.vertex(int(token[1:]))
        if token.startswith("e"):
            i, j = token[1:].split("-")
            return cls.edge((int(i), int(j)))
        raise ParseError(f"bad message token {token!r}")

    def label(self) -> str:
        if self.kind == "vertex":
            return f"X_{self.key[0]}"
        if self.kind == "edge":
            return f"X_({self.key[0]},{self.key[1]})"
        return "X_*"

    def __repr__(self):
        return f"Msg({self.token()})"


@dataclass(frozen=True)
class SumNetwork:
    """An immutable constructed sum-network.

    A maps each seed vertex i to the set of messages wired into bottleneck
    i.  head_feeds maps each terminal to the bottlenecks it reads; direct
    maps each terminal to the messages it receives over direct edges.
    """

    seed: UndirectedGraph
    construction: int
    alpha: int
    cycle: CycleSubgraph | None
    sources: tuple[Msg, ...]
    terminals: tuple[Msg, ...]
    A: dict[int, frozenset[Msg]]
    head_feeds: dict[Msg, tuple[int, ...]]
    direct: dict[Msg, tuple[Msg, ...]]

    @property
    def b(self) -> int:
        return self.seed.b

    @property
    def bottlenecks(self) -> range:
        return range(1, self.b + 1)

    @property
    def messages(self) -> tuple[Msg, ...]:
        """Stacked message order: vertices, then edges canonically, then star."""
        return self.sources

    @property
    def star_vertices(self) -> frozenset[int]:
        return self.cycle.vertex_set if self.cycle is not None else frozenset()

    def source_node(self, m: Msg) -> str:
        return f"s:{m.token()}"

    def terminal_node(self, m: Msg) -> str:
        return f"t:{m.token()}"

    def unit_arcs(self) -> list[tuple[str, str, int]]:
        """Every arc of the DAG, expanded to alpha parallel unit edges."""
        arcs = []

        def emit(u, v):
            for k in range(1, self.alpha + 1):
                arcs.append((u, v, k))

        for i in self.bottlenecks:
            for m in sorted(self.A[i], key=Msg.sort_key):
                emit(self.source_node(m), f"tail:{i}")
            emit(f"tail:{i}", f"head:{i}")
        for t in self.terminals:
            for i in self.head_feeds[t]:
                emit(f"head:{i}", self.terminal_node(t))
            for m in self.direct[t]:
                emit(self.source_node(m), self.terminal_node(t))
        return arcs

    def nodes(self) -> list[tuple[str, str]]:
        out = [(self.source_node(m), "source") for m in self.sources]
        for i in self.bottlenecks:
            out.append((f"tail:{i}", "tail"))
            out.append((f"head:{i}", "head"))
        out.extend((self.terminal_node(t), "terminal") for t in self.terminals)
        return out


def _terminal_list(g: UndirectedGraph) -> list[Msg]:
    terms = [Msg.vertex(i) for i in range(1, g.b + 1)]
    terms += [Msg.edge(e) for e in g.edges]
    terms.append(Msg.star())
    return terms


def build_sum_network(
    g: UndirectedGraph,
    construction: int,
    alpha: int = 1,
    cycle: CycleSubgraph | None = None,
) -> SumNetwork:
    """Construct the sum-network for a validated seed graph.

    Construction 1 uses sources for vertices and edges only; construction 2
    adds the star source, wired into the bottlenecks of a shortest cycle
    (found automatically when not supplied).  Direct edges hand terminal t_v
    the complement of A_v, and terminal t_e the complement of A_i union A_j
    for e = (i, j); under construction 2 a terminal that cannot be reached
    from the star source also gets a direct edge from it.
    """
    if construction not in (1, 2):
        raise ValueError(f"construction must be 1 or 2, got {construction}")
    if alpha < 1:
        raise ValueError(f"alpha must be a positive integer, got {alpha}")

    if construction == 2:
        reference = shortest_cycle(g)
        if cycle is None:
            cycle = reference
        else:
            _validate_cycle(g, cycle, len(reference))
    else:
        cycle = None

    star = Msg.star()
    plain = [Msg.vertex(i) for i in range(1, g.b + 1)] + [Msg.edge(e) for e in g.edges]
    sources = list(plain) + ([star] if construction == 2 else [])

    a_sets: dict[int, frozenset[Msg]] = {}
    for i in range(1, g.b + 1):
        members = {Msg.vertex(i)} | {Msg.edge(e) for e in g.incident(i)}
        if construction == 2 and i in cycle.vertex_set:
            members.add(star)
        a_sets[i] = frozenset(members)

    terminals = _terminal_list(g)
    head_feeds: dict[Msg, tuple[int, ...]] = {}
    direct: dict[Msg, tuple[Msg, ...]] = {}
    plain_set = set(plain)
    for t in terminals:
        if t.kind == "vertex":
            i = t.key[0]
            head_feeds[t] = (i,)
            handed = plain_set - a_sets[i]
        elif t.kind == "edge":
            i, j = t.key
            head_feeds[t] = (i, j)
            handed = (plain_set - a_sets[i]) & (plain_set - a_sets[j])
        else:
            head_feeds[t] = tuple(range(1, g.b + 1))
            handed = set()
        direct[t] = tuple(sorted(handed, key=Msg.sort_key))

    if construction == 2:
        # The star source reaches exactly the terminals fed by a cycle
        # bottleneck; every other terminal gets a direct edge from it.
        for t in terminals:
            reached = any(star in a_sets[i] for i in head_feeds[t])
            if not reached:
                direct[t] = direct[t] + (star,)

    net = SumNetwork(
        seed=g,
        construction=construction,
        alpha=alpha,
        cycle=cycle,
        sources=tuple(sources),
        terminals=tuple(terminals),
        A=a_sets,
        head_feeds=head_feeds,
        direct=direct,
    )
    _validate_connectivity(net)
    return net


def _validate_cycle(g: UndirectedGraph, cycle: CycleSubgraph, girth: int):
    verts = cycle.vertices
    if len(verts) != len(set(verts)) or len(verts) < 3:
        raise InvalidCycle("cycle vertices must be at least three distinct vertices")
    n = len(verts)
    for k in range(n):
        if not g.has_edge(verts[k], verts[(k + 1) % n]):
            raise InvalidCycle(
                f"({verts[k]}, {verts[(k + 1) % n]}) is not an edge of the seed"
            )
    if n != girth:
        raise InvalidCycle(f"cycle length {n} exceeds the minimum {girth}")
    if not is_chordless(g, cycle):
        raise InvalidCycle("cycle has a chord in the seed graph")


def _validate_connectivity(net: SumNetwork):
    # Every source must reach every terminal, through a bottleneck or a
    # direct edge.  This holds by construction; the check is cheap insurance.
    for t in net.terminals:
        covered = set(net.direct[t])
        for i in net.head_feeds[t]:
            covered |= net.A[i]
        missing = set(net.sources) - covered
        if missing:
            raise AssertionError(
                f"terminal {t.token()} cannot see sources {sorted(m.token() for m in missing)}"
            )


def capacity_upper_bound(
    g: UndirectedGraph, construction: int, alpha: int = 1
) -> Fraction:
    """Exact ceiling on the achievable rate of the constructed network.

    alpha * b / (b + |E|) without the star source, and
    alpha * b / (b + |E| + 1) with it, always in lowest terms.
    """
    if construction not in (1, 2):
        raise ValueError(f"construction must be 1 or 2, got {construction}")
    den = g.b + len(g.edges) + (1 if construction == 2 else 0)
    return Fraction(alpha * g.b, den)


def min_cut(net: SumNetwork, terminal: Msg) -> int:
    """Minimum edge cut separating all sources jointly from one terminal.

    Computed as maximum flow with breadth-first augmenting paths over the
    unit-edge expansion, with a super source feeding every source node.
    """
    if terminal not in net.head_feeds:
        raise ValueError(f"unknown terminal {terminal!r}")
    arcs = net.unit_arcs()
    nodes = {"SUPER"}
    for u, v, _ in arcs:
        nodes.add(u)
        nodes.add(v)
    index = {name: k for k, name in enumerate(sorted(nodes))}
    big = len(arcs) + 1

    # residual adjacency: per arc store [to, capacity, index-of-reverse]
    adjacency: list[list[list[int]]] = [[] for _ in index]

    def add_arc(u: str, v: str, cap: int):
        fu, fv = index[u], index[v]
        adjacency[fu].append([fv, cap, len(adjacency[fv])])
        adjacency[fv].append([fu, 0, len(adjacency[fu]) - 1])

    for m in net.sources:
        add_arc("SUPER", net.source_node(m), big)
    for u, v, _ in arcs:
        add_arc(u, v, 1)

    src, dst = index["SUPER"], index[net.terminal_node(terminal)]
    flow = 0
    while True:
        parent: dict[int, tuple[int, int]] = {src: (-1, -1)}
        queue = [src]
        head = 0
        while head < len(queue) and dst not in parent:
            u = queue[head]
            head += 1
            for k, (v, cap, _) in enumerate(adjacency[u]):
                if cap > 0 and v not in parent:
                    parent[v] = (u, k)
                    queue.append(v)
        if dst not in parent:
            return flow
        v = dst
        while v != src:
            u, k = parent[v]
            arc = adjacency[u][k]
            arc[1] -= 1
            adjacency[v][arc[2]][1] += 1
            v = u
        flow += 1


def export_json(net: SumNetwork) -> str:
    doc = {
        "seed": {"b": net.b, "edges": [list(e) for e in net.seed.edges]},
        "construction": net.construction,
        "alpha": net.alpha,
        "cycle": None
        if net.cycle is None
        else {
            "vertices": list(net.cycle.vertices),
            "edges": [list(e) for e in net.cycle.edges],
        },
        "nodes": [{"id": name, "role": role} for name, role in net.nodes()],
        "arcs": [{"from": u, "to": v, "index": k} for u, v, k in net.unit_arcs()],
        "A": {str(i): sorted(m.token() for m in net.A[i]) for i in net.bottlenecks},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def import_json(text: str) -> SumNetwork:
    """Rebuild a network from its JSON document.

    The document's wiring is trusted verbatim (so hand-modified fixture
    networks survive a round trip); only basic consistency is revalidated.
    """
    doc = json.loads(text)
    seed = UndirectedGraph(doc["seed"]["b"], [tuple(e) for e in doc["seed"]["edges"]])
    cycle = None
    if doc["cycle"] is not None:
        cycle = CycleSubgraph(
            tuple(doc["cycle"]["vertices"]),
            tuple(tuple(e) for e in doc["cycle"]["edges"]),
        )
    a_sets = {
        int(i): frozenset(Msg.from_token(tok) for tok in toks)
        for i, toks in doc["A"].items()
    }

    sources = []
    terminals = []
    for node in doc["nodes"]:
        if node["role"] == "source":
            sources.append(Msg.from_token(node["id"].split(":", 1)[1]))
        elif node["role"] == "terminal":
            terminals.append(Msg.from_token(node["id"].split(":", 1)[1]))

    head_feeds: dict[Msg, list[int]] = {t: [] for t in terminals}
    direct: dict[Msg, list[Msg]] = {t: [] for t in terminals}
    for arc in doc["arcs"]:
        if arc["index"] != 1:
            continue
        u, v = arc["from"], arc["to"]
        if v.startswith("t:"):
            t = Msg.from_token(v.split(":", 1)[1])
            if u.startswith("head:"):
                head_feeds[t].append(int(u.split(":", 1)[1]))
            elif u.startswith("s:"):
                direct[t].append(Msg.from_token(u.split(":", 1)[1]))

    net = SumNetwork(
        seed=seed,
        construction=doc["construction"],
        alpha=doc["alpha"],
        cycle=cycle,
        sources=tuple(sources),
        terminals=tuple(terminals),
        A=a_sets,
        head_feeds={t: tuple(sorted(v)) for t, v in head_feeds.items()},
        direct={t: tuple(sorted(v, key=Msg.sort_key)) for t, v in direct.items()},
    )
    _validate_connectivity(net)
    return net


_DOT_SHAPE = {"source": "ellipse", "tail": "point", "head": "point", "terminal": "box"}


def export_dot(net: SumNetwork) -> str:
    """Graphviz rendering with sources, bottlenecks, and terminals clustered."""
    lines = ["digraph sum_network {", "  rankdir=LR;"]
    clusters = {"source": [], "bottleneck": [], "terminal": []}
    for name, role in net.nodes():
        bucket = "bottleneck" if role in ("tail", "head") else role
        clusters[bucket].append(f'    "{name}" [shape={_DOT_SHAPE[role]}];')
    for bucket, label in (("source", "S"), ("bottleneck", "bottlenecks"), ("terminal", "T")):
        lines.append(f"  subgraph cluster_{bucket} {{")
        lines.append(f'    label="{label}";')
        lines.extend(clusters[bucket])
        lines.append("  }")
    for i in net.bottlenecks:
        lines.append(f'  "tail:{i}" -> "head:{i}" [style=bold, label="e{i}"];')
    for u, v, k in net.unit_arcs():
        if u.startswith("tail:"):
            continue
        if k == 1:
            suffix = "" if net.alpha == 1 else f' [label="x{net.alpha}"]'
            lines.append(f'  "{u}" -> "{v}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"

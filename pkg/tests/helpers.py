"""Shared test utilities: independent oracles and structured generators.

Everything here is deliberately written from scratch against the obvious
definitions (subset enumeration, permutation search) so the library paths
they check against cannot share a bug with them.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from sumnet.codegen import LinearCode
from sumnet.errors import Disconnected, IsTree
from sumnet.ffield import FieldMatrix
from sumnet.graph import UndirectedGraph
from sumnet.network import Msg, SumNetwork


def random_connected_nontree_graph(rng: np.random.Generator, max_b: int = 8) -> UndirectedGraph:
    """Uniform-ish random simple connected graph with |E| >= b."""
    while True:
        b = int(rng.integers(3, max_b + 1))
        pairs = list(combinations(range(1, b + 1), 2))
        m = int(rng.integers(b, len(pairs) + 1))
        chosen = rng.choice(len(pairs), size=m, replace=False)
        try:
            return UndirectedGraph(b, [pairs[k] for k in chosen])
        except (Disconnected, IsTree):
            continue


def brute_girth(g: UndirectedGraph) -> int:
    """Shortest cycle length by subset + permutation enumeration."""
    edges = set(g.edges)

    def has_cycle_on(subset) -> bool:
        first = subset[0]
        rest = subset[1:]
        for perm in permutations(rest):
            order = (first,) + perm
            if perm[0] > perm[-1]:
                continue  # skip the mirrored traversal
            if all(
                tuple(sorted((order[k], order[(k + 1) % len(order)]))) in edges
                for k in range(len(order))
            ):
                return True
        return False

    for length in range(3, g.b + 1):
        for subset in combinations(range(1, g.b + 1), length):
            if has_cycle_on(subset):
                return length
    raise AssertionError("graph without a cycle slipped past validation")


def enumerate_regular_graphs(n: int, k: int):
    """All labeled k-regular graphs on n vertices (connected or not).

    Degree-constrained depth-first search over the pair list; high degrees
    go through complementation of the low-degree enumeration.
    """
    if (n * k) % 2 or k >= n:
        return
    if k > (n - 1) // 2 and n - 1 - k < k:
        all_pairs = set(combinations(range(1, n + 1), 2))
        if n - 1 - k == 0:
            yield tuple(sorted(all_pairs))
            return
        for edges in enumerate_regular_graphs(n, n - 1 - k):
            yield tuple(sorted(all_pairs - set(edges)))
        return

    pairs = list(combinations(range(1, n + 1), 2))
    remaining = [0] * (n + 1)
    for i, j in pairs:
        remaining[i] += 1
        remaining[j] += 1
    deg = [0] * (n + 1)
    chosen: list[tuple[int, int]] = []

    def viable() -> bool:
        return all(deg[v] <= k and deg[v] + remaining[v] >= k for v in range(1, n + 1))

    def dfs(idx: int):
        if idx == len(pairs):
            if all(deg[v] == k for v in range(1, n + 1)):
                yield tuple(chosen)
            return
        i, j = pairs[idx]
        remaining[i] -= 1
        remaining[j] -= 1
        if deg[i] < k and deg[j] < k:
            deg[i] += 1
            deg[j] += 1
            chosen.append((i, j))
            if viable():
                yield from dfs(idx + 1)
            chosen.pop()
            deg[i] -= 1
            deg[j] -= 1
        if viable():
            yield from dfs(idx + 1)
        remaining[i] += 1
        remaining[j] += 1

    yield from dfs(0)


def connected_regular_graphs(n: int, k: int):
    for edges in enumerate_regular_graphs(n, k):
        try:
            yield UndirectedGraph(n, list(edges))
        except (Disconnected, IsTree):
            continue


def readable_rows(net: SumNetwork, code: LinearCode) -> dict[int, list[int]]:
    """Rows of each bottleneck that some vertex or edge terminal decodes.

    Mutations restricted to these rows (and to wired message columns) are
    guaranteed visible to both simulation and algebraic composition.
    """
    rows: dict[int, set[int]] = {i: set() for i in net.bottlenecks}
    for t in net.terminals:
        if t.kind == "star":
            continue
        for step in code.decoders[t].steps:
            for term in step.terms:
                if term.src[0] == "bottleneck":
                    _, i, lo, hi = term.src
                    rows[i].update(range(lo, hi))
    return {i: sorted(v) for i, v in rows.items()}


def wired_columns(net: SumNetwork, code: LinearCode, i: int) -> list[int]:
    cols = []
    for m in sorted(net.A[i], key=Msg.sort_key):
        off = code.messages.index(m) * code.r
        cols.extend(range(off, off + code.r))
    return cols


def mutate_code(net: SumNetwork, code: LinearCode, rng: np.random.Generator) -> LinearCode:
    """Corrupt one readable encoder entry; the result must fail verification."""
    rows = readable_rows(net, code)
    i = int(rng.choice(list(net.bottlenecks)))
    row = int(rng.choice(rows[i]))
    col = int(rng.choice(wired_columns(net, code, i)))
    delta = int(rng.integers(1, code.field.p))
    entries = code.encoders[i].entries.copy()
    entries[row, col] = (entries[row, col] + delta) % code.field.p
    encoders = dict(code.encoders)
    encoders[i] = FieldMatrix(code.field, entries)
    return LinearCode(
        field=code.field,
        r=code.r,
        l=code.l,
        alpha=code.alpha,
        construction=code.construction,
        messages=code.messages,
        encoders=encoders,
        decoders=code.decoders,
    )


def brute_min_cut(net: SumNetwork, terminal: Msg) -> int:
    """Minimum cut by enumerating every side assignment of the free nodes."""
    arcs = [(u, v) for u, v, _ in net.unit_arcs()]
    source_side = {net.source_node(m) for m in net.sources}
    sink = net.terminal_node(terminal)
    nodes = {u for u, _ in arcs} | {v for _, v in arcs}
    free = sorted(nodes - source_side - {sink})
    best = len(arcs) + 1
    for mask in range(1 << len(free)):
        on_source_side = set(source_side)
        for idx, node in enumerate(free):
            if mask >> idx & 1:
                on_source_side.add(node)
        cut = sum(1 for u, v in arcs if u in on_source_side and v not in on_source_side)
        best = min(best, cut)
    return best

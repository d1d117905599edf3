"""Ready-made seed graphs, a hand-wired variant network, and its two codes.

The variant network starts from the diamond seed (K4 minus one edge) under
construction 2 and additionally wires the star source into the one
bottleneck off the chosen triangle, so every bottleneck sum contains the
star message.  That single extra edge makes the achievable rate depend on
the field characteristic: a rate 4/9 code exists exactly when the
characteristic is 2, and rate 4/10 is the ceiling otherwise.  Both codes
are transcribed here as executable fixtures.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .codegen import DecodingPlan, LinearCode, Step, Term
from .errors import CharacteristicMismatch
from .ffield import Field, FieldMatrix
from .graph import UndirectedGraph
from .network import Msg, SumNetwork, build_sum_network

__all__ = [
    "diamond_graph",
    "complete_graph",
    "cycle_graph",
    "complete_bipartite",
    "petersen_graph",
    "full_star_network",
    "full_star_code",
    "capacity_examples",
]


def diamond_graph() -> UndirectedGraph:
    """K4 minus the edge (2, 4): four vertices, five edges, girth 3."""
    return UndirectedGraph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)])


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def cycle_graph(n: int) -> UndirectedGraph:
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return UndirectedGraph(n, edges)


def complete_bipartite(a: int, c: int) -> UndirectedGraph:
    """Vertices 1..a on the left, a+1..a+c on the right."""
    return UndirectedGraph(a + c, [(i, a + j) for i in range(1, a + 1) for j in range(1, c + 1)])


def petersen_graph() -> UndirectedGraph:
    outer = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]
    spokes = [(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]
    inner = [(6, 8), (6, 9), (7, 9), (7, 10), (8, 10)]
    return UndirectedGraph(10, outer + spokes + inner)


def full_star_network() -> SumNetwork:
    """The diamond construction-2 network with the star wired everywhere.

    Built by mutating the regular construction: the star message joins the
    bottleneck of vertex 4, and the star's direct edge to terminal 4 (now
    redundant) goes away.  Ten sources, ten terminals.
    """
    base = build_sum_network(diamond_graph(), construction=2, alpha=1)
    star = Msg.star()
    a_sets = dict(base.A)
    a_sets[4] = a_sets[4] | {star}
    direct = dict(base.direct)
    t4 = Msg.vertex(4)
    direct[t4] = tuple(m for m in direct[t4] if m != star)
    return SumNetwork(
        seed=base.seed,
        construction=base.construction,
        alpha=base.alpha,
        cycle=base.cycle,
        sources=base.sources,
        terminals=base.terminals,
        A=a_sets,
        head_feeds=base.head_feeds,
        direct=direct,
    )


# transmission tables for the two hand codes: bottleneck -> the (edge
# message, component) carried together with the same star component on
# rows 4..8 (components are 0-based here)
_PAIR_ROWS = {
    1: [("e1-3", 0), ("e1-3", 1), ("e1-4", 0), ("e1-4", 1), ("e1-4", 2)],
    2: [("e1-2", 0), ("e1-2", 1), ("e1-2", 2), ("e1-2", 3), ("e2-3", 0)],
    3: [("e1-3", 2), ("e1-3", 3), ("e2-3", 1), ("e2-3", 2), ("e2-3", 3)],
    4: [("e1-4", 3), ("e3-4", 0), ("e3-4", 1), ("e3-4", 2), ("e3-4", 3)],
}

# where each terminal t_e finds the shared vector X_e + X_star: a list of
# (bottleneck, row_lo, row_hi, destination offset)
_SHARED_SLICES = {
    (1, 2): [(2, 4, 8, 0)],
    (1, 3): [(1, 4, 6, 0), (3, 4, 6, 2)],
    (1, 4): [(1, 6, 9, 0), (4, 4, 5, 3)],
    (2, 3): [(2, 8, 9, 0), (3, 6, 9, 1)],
    (3, 4): [(4, 5, 9, 0)],
}


def full_star_code(
    variant: str, fld: Field, check_characteristic: bool = True
) -> LinearCode:
    """One of the two hand codes for the full-star network.

    "char2" is the rate 4/9 code: its star-terminal decoder folds all nine
    partial sums together and relies on 9 = 3 = 1 holding mod the
    characteristic, which is true exactly in characteristic 2.  "general"
    appends a tenth row carrying one distinct star component per
    bottleneck, giving rate 4/10 with a decoder that works over any prime
    field.  Pass check_characteristic=False to build a code over a field
    it is not designed for, e.g. to watch the char2 code fail.
    """
    if variant not in ("char2", "general"):
        raise ValueError(f"variant must be 'char2' or 'general', got {variant!r}")
    if check_characteristic:
        if variant == "char2" and fld.p != 2:
            raise CharacteristicMismatch("the 4/9 code needs characteristic 2")
        if variant == "general" and fld.p == 2:
            raise CharacteristicMismatch("the 4/10 code is meant for characteristic != 2")

    net = full_star_network()
    r = 4
    l = 9 if variant == "char2" else 10
    messages = tuple(sorted(net.sources, key=Msg.sort_key))
    offset = {m: k * r for k, m in enumerate(messages)}
    star = Msg.star()

    encoders: dict[int, FieldMatrix] = {}
    for i in range(1, 5):
        mat = np.zeros((l, r * len(messages)), dtype=np.int64)
        for m in net.A[i]:
            col = offset[m]
            mat[0:r, col : col + r] += np.eye(r, dtype=np.int64)
        for row, (token, comp) in enumerate(_PAIR_ROWS[i], start=4):
            mat[row, offset[Msg.from_token(token)] + comp] += 1
            mat[row, offset[star] + comp] += 1
        if variant == "general":
            mat[9, offset[star] + (i - 1)] += 1
        encoders[i] = FieldMatrix(fld, mat)

    decoders: dict[Msg, DecodingPlan] = {}
    for t in net.terminals:
        directs = [Term(1, ("direct", m.token()), at=0) for m in net.direct[t]]
        if t.kind == "vertex":
            i = t.key[0]
            terms = [Term(1, ("bottleneck", i, 0, r), at=0)] + directs
            decoders[t] = DecodingPlan((Step("sum", r, tuple(terms)),))
        elif t.kind == "edge":
            shared = Step(
                "shared",
                r,
                tuple(
                    Term(1, ("bottleneck", b, lo, hi), at=at)
                    for b, lo, hi, at in _SHARED_SLICES[t.key]
                ),
            )
            terms = [
                Term(1, ("bottleneck", t.key[0], 0, r), at=0),
                Term(1, ("bottleneck", t.key[1], 0, r), at=0),
                Term(-1, ("step", "shared"), at=0),
            ] + directs
            decoders[t] = DecodingPlan((shared, Step("sum", r, tuple(terms))))
        else:
            decoders[t] = _star_terminal_plan(net, variant, r)

    return LinearCode(
        field=fld,
        r=r,
        l=l,
        alpha=1,
        construction=2,
        messages=messages,
        encoders=encoders,
        decoders=decoders,
    )


def _star_terminal_plan(net: SumNetwork, variant: str, r: int) -> DecodingPlan:
    steps: list[Step] = []
    shared_names = {}
    for e, slices in sorted(_SHARED_SLICES.items()):
        name = f"shared:{e[0]}-{e[1]}"
        shared_names[e] = name
        steps.append(
            Step(
                name,
                r,
                tuple(Term(1, ("bottleneck", b, lo, hi), at=at) for b, lo, hi, at in slices),
            )
        )

    if variant == "char2":
        # all four bottleneck sums plus all five shared vectors collapse to
        # the total because the surplus coefficients are 1 mod 2
        total = [Term(1, ("bottleneck", i, 0, r), at=0) for i in range(1, 5)]
        total += [Term(1, ("step", nm), at=0) for nm in shared_names.values()]
        steps.append(Step("sum", r, tuple(total)))
        return DecodingPlan(tuple(steps))

    # general variant: the tenth rows spell out the star message, after
    # which every message is recovered individually
    steps.append(
        Step(
            "xstar",
            r,
            tuple(Term(1, ("bottleneck", i, 9, 10), at=i - 1) for i in range(1, 5)),
        )
    )
    edge_names = {}
    for e, shared in sorted(shared_names.items()):
        name = f"xe:{e[0]}-{e[1]}"
        edge_names[e] = name
        steps.append(
            Step(
                name,
                r,
                (Term(1, ("step", shared), at=0), Term(-1, ("step", "xstar"), at=0)),
            )
        )
    vertex_names = {}
    for i in range(1, 5):
        name = f"xv:{i}"
        vertex_names[i] = name
        terms = [Term(1, ("bottleneck", i, 0, r), at=0)]
        terms += [
            Term(-1, ("step", edge_names[e]), at=0)
            for e in net.seed.incident(i)
        ]
        terms.append(Term(-1, ("step", "xstar"), at=0))
        steps.append(Step(name, r, tuple(terms)))
    total = [Term(1, ("step", nm), at=0) for nm in vertex_names.values()]
    total += [Term(1, ("step", nm), at=0) for nm in edge_names.values()]
    total.append(Term(1, ("step", "xstar"), at=0))
    steps.append(Step("sum", r, tuple(total)))
    return DecodingPlan(tuple(steps))


def capacity_examples():
    """Named seed graphs with their exact expected capacities."""
    return [
        ("K5-construction1", complete_graph(5), 1, Fraction(1, 3)),
        ("diamond-construction2", diamond_graph(), 2, Fraction(2, 5)),
        ("petersen-construction2", petersen_graph(), 2, Fraction(5, 13)),
        ("K35-construction1", complete_bipartite(3, 5), 1, Fraction(8, 23)),
    ]

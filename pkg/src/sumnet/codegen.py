"""Linear network code synthesis from a feasible split assignment.

Message vectors have length r = b and are stacked in the canonical order
(vertex messages, then edge messages lexicographically, then the star).
Each bottleneck transmits l symbols, l = b + |E| for construction 1 and
b + |E| + 1 for construction 2, laid out as

    rows [0, r)              the sum of all messages wired into the bottleneck
    one block per incident   the leading share of the edge message if this is
    seed edge, in canonical  the smaller endpoint, the trailing share
    order                    otherwise; on cycle edges the star message is
                             added in before selection
    star block               for cycle vertices, a private window of the
                             star message; the windows tile [0, r) exactly
    zero rows                padding up to l

A terminal's decoding plan is an ordered list of named linear steps over
the symbols it receives (bottleneck row ranges, direct-edge messages, and
earlier steps); the final step produces the length-r sum of all messages.
Plans use only coefficients 1 and -1, so any prime field works.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InfeasibleAssignment
from .feasibility import FeasAssignment, check_assignment
from .ffield import Field, FieldMatrix
from .network import Msg, SumNetwork

__all__ = [
    "Term",
    "Step",
    "DecodingPlan",
    "LinearCode",
    "stack_layout",
    "encoder_row_layout",
    "synthesize_code",
    "repeat_code",
    "achieved_rate",
]


@dataclass(frozen=True)
class Term:
    """One linear contribution to a step: coeff * source placed at offset.

    src is ("bottleneck", i, lo, hi) for rows [lo, hi) of bottleneck i's
    symbol vector, ("direct", token) for a full direct-edge message, or
    ("step", name) for an earlier step's output.
    """

    coeff: int
    src: tuple
    at: int = 0


@dataclass(frozen=True)
class Step:
    name: str
    width: int
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class DecodingPlan:
    """Ordered steps; the last one is the terminal's decoded output."""

    steps: tuple[Step, ...]

    @property
    def output(self) -> Step:
        return self.steps[-1]


@dataclass(frozen=True)
class LinearCode:
    """Per-bottleneck encoders plus per-terminal decoding plans.

    alpha counts independent replicas: the code is applied once per unit
    pipe of every capacity-alpha edge, so the message length grows to
    alpha * r while the per-pipe block length stays l.
    """

    field: Field
    r: int
    l: int
    alpha: int
    construction: int
    messages: tuple[Msg, ...]
    encoders: dict[int, FieldMatrix]
    decoders: dict[Msg, DecodingPlan]

    @property
    def stacked_len(self) -> int:
        return self.r * len(self.messages)

    def message_offset(self, m: Msg) -> int:
        return self.messages.index(m) * self.r

    def to_json(self) -> str:
        doc = {
            "p": self.field.p,
            "r": self.r,
            "l": self.l,
            "alpha": self.alpha,
            "construction": self.construction,
            "edge_order": [list(m.key) for m in self.messages if m.kind == "edge"],
            "encoders": {
                str(i): [int(v) for v in enc.entries.reshape(-1)]
                for i, enc in sorted(self.encoders.items())
            },
            "decoders": {
                t.token(): _plan_doc(plan) for t, plan in sorted(
                    self.decoders.items(), key=lambda kv: kv[0].sort_key()
                )
            },
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _plan_doc(plan: DecodingPlan) -> dict:
    steps = []
    for step in plan.steps:
        terms = []
        for t in step.terms:
            if t.src[0] == "bottleneck":
                src = {"kind": "bottleneck", "i": t.src[1], "lo": t.src[2], "hi": t.src[3]}
            elif t.src[0] == "direct":
                src = {"kind": "direct", "msg": t.src[1]}
            else:
                src = {"kind": "step", "name": t.src[1]}
            terms.append({"coeff": t.coeff, "src": src, "at": t.at})
        steps.append({"name": step.name, "width": step.width, "terms": terms})
    return {"steps": steps}


def stack_layout(net: SumNetwork) -> tuple[Msg, ...]:
    """Canonical message order for the stacked source vector."""
    return tuple(sorted(net.sources, key=Msg.sort_key))


def encoder_row_layout(net: SumNetwork, assignment: FeasAssignment, i: int):
    """Row map of bottleneck i: (edge -> (lo, hi)), star window, rows used."""
    r = net.b
    row = r
    edge_rows: dict[tuple[int, int], tuple[int, int]] = {}
    for e in net.seed.incident(i):
        share = assignment.at(e, i)
        edge_rows[e] = (row, row + share)
        row += share
    star_rows = None
    if net.construction == 2 and i in net.star_vertices:
        w = assignment.w.get(i, 0)
        if w:
            star_rows = (row, row + w)
            row += w
    return edge_rows, star_rows, row


def synthesize_code(
    net: SumNetwork, assignment: FeasAssignment, fld: Field
) -> LinearCode:
    """Build the capacity-achieving code for a constructed network.

    Works over any prime field; the decoding identities use only sums and
    differences.  Raises InfeasibleAssignment when the split assignment
    violates its constraint system.
    """
    verdict = check_assignment(net.seed, assignment, net.construction, net.cycle)
    if not verdict:
        raise InfeasibleAssignment(verdict.violation)

    g = net.seed
    r = g.b
    l = r + len(g.edges) + (1 if net.construction == 2 else 0)
    messages = stack_layout(net)
    offset = {m: k * r for k, m in enumerate(messages)}
    cycle_edges = net.cycle.edge_set if net.cycle is not None else frozenset()
    star = Msg.star()

    # star windows: gamma_i = total width of smaller-labeled cycle vertices
    gamma: dict[int, int] = {}
    if net.construction == 2:
        acc = 0
        for v in sorted(net.star_vertices):
            gamma[v] = acc
            acc += assignment.w.get(v, 0)

    encoders: dict[int, FieldMatrix] = {}
    for i in net.bottlenecks:
        mat = np.zeros((l, r * len(messages)), dtype=np.int64)
        for m in net.A[i]:
            col = offset[m]
            mat[0:r, col : col + r] += np.eye(r, dtype=np.int64)
        edge_rows, star_rows, used = encoder_row_layout(net, assignment, i)
        for e, (lo, hi) in edge_rows.items():
            share = hi - lo
            col = offset[Msg.edge(e)]
            # smaller endpoint forwards the leading share, the other the rest
            first = slice(col, col + share) if i == e[0] else slice(col + r - share, col + r)
            mat[lo:hi, first] += np.eye(share, dtype=np.int64)
            if e in cycle_edges:
                scol = offset[star]
                sfirst = (
                    slice(scol, scol + share)
                    if i == e[0]
                    else slice(scol + r - share, scol + r)
                )
                mat[lo:hi, sfirst] += np.eye(share, dtype=np.int64)
        if star_rows is not None:
            lo, hi = star_rows
            scol = offset[star] + gamma[i]
            mat[lo:hi, scol : scol + (hi - lo)] += np.eye(hi - lo, dtype=np.int64)
        assert used <= l
        encoders[i] = FieldMatrix(fld, mat)

    decoders = {
        t: _plan_for_terminal(net, assignment, t, gamma)
        for t in net.terminals
    }
    return LinearCode(
        field=fld,
        r=r,
        l=l,
        alpha=net.alpha,
        construction=net.construction,
        messages=messages,
        encoders=encoders,
        decoders=decoders,
    )


def _edge_assembly_terms(net, assignment, e) -> list[Term]:
    """Concatenate the two complementary shares of edge message e.

    On a cycle edge the same rows carry the edge message plus the star, so
    the assembled vector is X_e + X_star there.
    """
    i, j = e
    edge_rows_i, _, _ = encoder_row_layout(net, assignment, i)
    edge_rows_j, _, _ = encoder_row_layout(net, assignment, j)
    lo_i, hi_i = edge_rows_i[e]
    lo_j, hi_j = edge_rows_j[e]
    lead = hi_i - lo_i
    terms = []
    if hi_i > lo_i:
        terms.append(Term(1, ("bottleneck", i, lo_i, hi_i), at=0))
    if hi_j > lo_j:
        terms.append(Term(1, ("bottleneck", j, lo_j, hi_j), at=lead))
    return terms


def _plan_for_terminal(
    net: SumNetwork, assignment: FeasAssignment, t: Msg, gamma: dict[int, int]
) -> DecodingPlan:
    r = net.b
    cycle_edges = net.cycle.edge_set if net.cycle is not None else frozenset()
    directs = [Term(1, ("direct", m.token()), at=0) for m in net.direct[t]]

    if t.kind == "vertex":
        i = t.key[0]
        terms = [Term(1, ("bottleneck", i, 0, r), at=0)] + directs
        return DecodingPlan((Step("sum", r, tuple(terms)),))

    if t.kind == "edge":
        e = t.key
        assemble = Step("shared", r, tuple(_edge_assembly_terms(net, assignment, e)))
        # shared = X_e, or X_e + X_star on a cycle edge; either way it is
        # exactly the overlap of the two bottleneck sums
        terms = [
            Term(1, ("bottleneck", e[0], 0, r), at=0),
            Term(1, ("bottleneck", e[1], 0, r), at=0),
            Term(-1, ("step", "shared"), at=0),
        ] + directs
        return DecodingPlan((assemble, Step("sum", r, tuple(terms))))

    # the star terminal reads every bottleneck and nothing else
    steps: list[Step] = []
    if net.construction == 2:
        star_terms = []
        for v in sorted(net.star_vertices):
            _, star_rows, _ = encoder_row_layout(net, assignment, v)
            if star_rows is not None:
                star_terms.append(
                    Term(1, ("bottleneck", v, star_rows[0], star_rows[1]), at=gamma[v])
                )
        steps.append(Step("xstar", r, tuple(star_terms)))

    edge_step: dict[tuple[int, int], str] = {}
    for e in net.seed.edges:
        name = f"xe:{e[0]}-{e[1]}"
        terms = _edge_assembly_terms(net, assignment, e)
        if e in cycle_edges:
            terms.append(Term(-1, ("step", "xstar"), at=0))
        steps.append(Step(name, r, tuple(terms)))
        edge_step[e] = name

    vertex_step: dict[int, str] = {}
    for i in range(1, net.b + 1):
        name = f"xv:{i}"
        terms = [Term(1, ("bottleneck", i, 0, r), at=0)]
        terms += [Term(-1, ("step", edge_step[e]), at=0) for e in net.seed.incident(i)]
        if net.construction == 2 and i in net.star_vertices:
            terms.append(Term(-1, ("step", "xstar"), at=0))
        steps.append(Step(name, r, tuple(terms)))
        vertex_step[i] = name

    total = [Term(1, ("step", nm), at=0) for nm in vertex_step.values()]
    total += [Term(1, ("step", nm), at=0) for nm in edge_step.values()]
    if net.construction == 2:
        total.append(Term(1, ("step", "xstar"), at=0))
    steps.append(Step("sum", r, tuple(total)))
    return DecodingPlan(tuple(steps))


def repeat_code(code: LinearCode, alpha: int) -> LinearCode:
    """Apply the same code independently on each of alpha unit pipes."""
    if alpha < 1:
        raise ValueError(f"alpha must be a positive integer, got {alpha}")
    return LinearCode(
        field=code.field,
        r=code.r,
        l=code.l,
        alpha=alpha,
        construction=code.construction,
        messages=code.messages,
        encoders=code.encoders,
        decoders=code.decoders,
    )


def achieved_rate(code: LinearCode) -> Fraction:
    """alpha * r / l in lowest terms."""
    return Fraction(code.alpha * code.r, code.l)

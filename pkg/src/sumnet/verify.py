"""Correctness checking for (network, code) pairs.

Three routes with different trust bases:

* exhaustive simulation enumerates every source instantiation, pushes
  values through the masked encoders along the topology, and executes each
  terminal's decoding plan on concrete numbers;
* randomized simulation does the same on seeded uniform instantiations;
* algebraic composition multiplies each terminal's plan matrix with the
  stack of symbols it receives and demands the identity-on-every-message
  block matrix, which certifies all instantiations at once.

Simulation zeroes the message slices a bottleneck is not wired to, so an
encoder that reads outside its source set produces a genuinely different
transmission than its matrix suggests; that is the point of keeping the
simulation route independent of the algebraic one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .codegen import DecodingPlan, LinearCode
from .errors import NonLinearPlan, StateSpaceTooLarge
from .network import Msg, SumNetwork

__all__ = [
    "VerifyReport",
    "FailureWitness",
    "verify_exhaustive",
    "verify_random",
    "verify_algebraic",
    "DEFAULT_MAX_STATES",
]

DEFAULT_MAX_STATES = 1 << 24
_CHUNK = 1 << 14


@dataclass(frozen=True)
class FailureWitness:
    terminal: Msg
    instantiation: tuple[int, ...]
    expected: tuple[int, ...]
    decoded: tuple[int, ...]


@dataclass(frozen=True)
class VerifyReport:
    mode: str
    ok: bool
    trials: int
    failure: FailureWitness | None = None
    failed_terminals: tuple[Msg, ...] = ()
    seed: int | None = None

    def to_json(self) -> str:
        doc = {
            "mode": self.mode,
            "pass": self.ok,
            "trials": self.trials,
            "seed": self.seed,
            "failed_terminals": [t.token() for t in self.failed_terminals],
            "failure": None
            if self.failure is None
            else {
                "terminal": self.failure.terminal.token(),
                "instantiation": list(self.failure.instantiation),
                "expected": list(self.failure.expected),
                "decoded": list(self.failure.decoded),
            },
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 keeps integer products exact far beyond this package's sizes
    assert (p - 1) * (p - 1) * a.shape[1] < 2**53
    return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p


class _Simulator:
    """Shared machinery: stacked layout, masked encoders, plan execution."""

    def __init__(self, net: SumNetwork, code: LinearCode):
        if net.alpha != code.alpha:
            raise ValueError(
                f"network alpha {net.alpha} != code alpha {code.alpha}"
            )
        self.net = net
        self.code = code
        self.p = code.field.p
        self.r = code.r
        self.alpha = code.alpha
        self.messages = code.messages
        self.msg_index = {m: k for k, m in enumerate(self.messages)}
        self.stacked = self.r * len(self.messages)
        self.total_rows = self.alpha * self.stacked

        # columns each bottleneck is allowed to read: the slices of A_i
        self.read_cols: dict[int, np.ndarray] = {}
        self.enc_sub: dict[int, np.ndarray] = {}
        for i in net.bottlenecks:
            cols = []
            for m in sorted(net.A[i], key=Msg.sort_key):
                off = self.msg_index[m] * self.r
                cols.extend(range(off, off + self.r))
            idx = np.asarray(cols, dtype=np.int64)
            self.read_cols[i] = idx
            self.enc_sub[i] = code.encoders[i].entries[:, idx]

    def replica_rows(self, k: int) -> np.ndarray:
        rows = np.empty(self.stacked, dtype=np.int64)
        for mi in range(len(self.messages)):
            base = mi * self.alpha * self.r + k * self.r
            rows[mi * self.r : (mi + 1) * self.r] = np.arange(base, base + self.r)
        return rows

    def run(self, x: np.ndarray):
        """Simulate every terminal on columns of x (total_rows x n).

        Returns (decoded, expected): decoded maps terminal to an
        (alpha*r x n) array, expected is the true sum arranged the same way.
        """
        n = x.shape[1]
        decoded = {
            t: np.empty((self.alpha * self.r, n), dtype=np.int64)
            for t in self.net.terminals
        }
        expected = np.empty((self.alpha * self.r, n), dtype=np.int64)
        for k in range(self.alpha):
            xk = x[self.replica_rows(k)]
            total = xk.reshape(len(self.messages), self.r, n).sum(axis=0) % self.p
            expected[k * self.r : (k + 1) * self.r] = total
            transmitted = {
                i: _matmul_mod(self.enc_sub[i], xk[self.read_cols[i]], self.p)
                for i in self.net.bottlenecks
            }
            for t in self.net.terminals:
                out = self._execute(t, self.code.decoders[t], transmitted, xk, n)
                decoded[t][k * self.r : (k + 1) * self.r] = out
        return decoded, expected

    def _execute(self, t: Msg, plan: DecodingPlan, transmitted, xk, n):
        allowed_bottlenecks = set(self.net.head_feeds[t])
        allowed_direct = {m.token() for m in self.net.direct[t]}
        values: dict[str, np.ndarray] = {}
        for step in plan.steps:
            acc = np.zeros((step.width, n), dtype=np.int64)
            for term in step.terms:
                kind = term.src[0]
                if kind == "bottleneck":
                    _, i, lo, hi = term.src
                    if i not in allowed_bottlenecks:
                        raise ValueError(
                            f"plan for {t.token()} reads bottleneck {i} it is not wired to"
                        )
                    block = transmitted[i][lo:hi]
                elif kind == "direct":
                    token = term.src[1]
                    if token not in allowed_direct:
                        raise ValueError(
                            f"plan for {t.token()} reads direct message {token} it does not receive"
                        )
                    off = self.msg_index[Msg.from_token(token)] * self.r
                    block = xk[off : off + self.r]
                elif kind == "step":
                    block = values[term.src[1]]
                else:
                    raise NonLinearPlan(f"unknown plan term {term.src!r}")
                acc[term.at : term.at + block.shape[0]] += term.coeff * block
            values[step.name] = acc % self.p
        return values[plan.output.name]


def _first_failure(sim: _Simulator, decoded, expected):
    """Locate the earliest failing (instantiation, terminal) in a chunk."""
    failing: list[tuple[int, Msg]] = []
    for t in sim.net.terminals:
        bad = np.nonzero((decoded[t] != expected).any(axis=0))[0]
        if bad.size:
            failing.append((int(bad[0]), t))
    if not failing:
        return None, ()
    col = min(c for c, _ in failing)
    terminal = next(t for c, t in failing if c == col)
    terminals = tuple(sorted({t for _, t in failing}, key=Msg.sort_key))
    return (col, terminal), terminals


def _witness(sim: _Simulator, x_col: np.ndarray, terminal: Msg) -> FailureWitness:
    """Greedily zero whole message slices while the terminal still fails."""
    span = sim.alpha * sim.r

    def fails(vec) -> bool:
        decoded, expected = sim.run(vec.reshape(-1, 1))
        return bool((decoded[terminal] != expected).any())

    vec = x_col.copy()
    for mi in range(len(sim.messages)):
        trial = vec.copy()
        trial[mi * span : (mi + 1) * span] = 0
        if fails(trial):
            vec = trial
    decoded, expected = sim.run(vec.reshape(-1, 1))
    return FailureWitness(
        terminal=terminal,
        instantiation=tuple(int(v) for v in vec),
        expected=tuple(int(v) for v in expected[:, 0]),
        decoded=tuple(int(v) for v in decoded[terminal][:, 0]),
    )


def verify_exhaustive(
    net: SumNetwork, code: LinearCode, max_states: int = DEFAULT_MAX_STATES
) -> VerifyReport:
    """Check every instantiation; guard the state count unless overridden.

    Enumeration order is the base-p counter over the stacked symbol vector,
    so reports are deterministic.  Scanning stops at the end of the first
    chunk that contains a failure.
    """
    sim = _Simulator(net, code)
    p = sim.p
    total = p ** sim.total_rows
    if total > max_states:
        raise StateSpaceTooLarge(
            f"{p}^{sim.total_rows} = {total} states exceed the guard {max_states}"
        )
    scanned = 0
    while scanned < total:
        n = min(_CHUNK, total - scanned)
        idx = np.arange(scanned, scanned + n, dtype=np.int64)
        x = np.empty((sim.total_rows, n), dtype=np.int64)
        for d in range(sim.total_rows):
            x[d] = (idx // p**d) % p if p**d <= total else 0
        decoded, expected = sim.run(x)
        hit, terminals = _first_failure(sim, decoded, expected)
        scanned += n
        if hit is not None:
            col, terminal = hit
            witness = _witness(sim, x[:, col], terminal)
            return VerifyReport(
                mode="exhaustive",
                ok=False,
                trials=scanned,
                failure=witness,
                failed_terminals=terminals,
            )
    return VerifyReport(mode="exhaustive", ok=True, trials=total)


def verify_random(
    net: SumNetwork, code: LinearCode, trials: int = 10000, seed: int = 0
) -> VerifyReport:
    """Seeded uniform spot check; identical (seed, trials) give one report."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    sim = _Simulator(net, code)
    rng = np.random.default_rng(seed)
    done = 0
    while done < trials:
        n = min(_CHUNK, trials - done)
        x = rng.integers(0, sim.p, size=(sim.total_rows, n), dtype=np.int64)
        decoded, expected = sim.run(x)
        hit, terminals = _first_failure(sim, decoded, expected)
        done += n
        if hit is not None:
            col, terminal = hit
            witness = _witness(sim, x[:, col], terminal)
            return VerifyReport(
                mode="random",
                ok=False,
                trials=done,
                failure=witness,
                failed_terminals=terminals,
                seed=seed,
            )
    return VerifyReport(mode="random", ok=True, trials=trials, seed=seed)


def _received_offsets(net: SumNetwork, code: LinearCode, t: Msg):
    """Row offsets of each received symbol block in the stacked order
    (bottlenecks ascending, then direct messages canonically)."""
    offsets: dict[tuple, int] = {}
    acc = 0
    for i in net.head_feeds[t]:
        offsets[("bottleneck", i)] = acc
        acc += code.l
    for m in net.direct[t]:
        offsets[("direct", m.token())] = acc
        acc += code.r
    return offsets, acc


def _plan_matrix(net, code, t, offsets, recv_len) -> np.ndarray:
    p = code.field.p
    mats: dict[str, np.ndarray] = {}
    plan = code.decoders[t]
    for step in plan.steps:
        mat = np.zeros((step.width, recv_len), dtype=np.int64)
        for term in step.terms:
            kind = term.src[0]
            if kind == "bottleneck":
                _, i, lo, hi = term.src
                try:
                    base = offsets[("bottleneck", i)]
                except KeyError:
                    raise ValueError(
                        f"plan for {t.token()} reads bottleneck {i} it is not wired to"
                    ) from None
                for k in range(hi - lo):
                    mat[term.at + k, base + lo + k] += term.coeff
            elif kind == "direct":
                try:
                    base = offsets[("direct", term.src[1])]
                except KeyError:
                    raise ValueError(
                        f"plan for {t.token()} reads direct message {term.src[1]} "
                        "it does not receive"
                    ) from None
                for k in range(code.r):
                    mat[term.at + k, base + k] += term.coeff
            elif kind == "step":
                ref = mats[term.src[1]]
                mat[term.at : term.at + ref.shape[0]] += term.coeff * ref
            else:
                raise NonLinearPlan(f"unknown plan term {term.src!r}")
        mats[step.name] = mat % p
    return mats[plan.output.name]


def verify_algebraic(net: SumNetwork, code: LinearCode) -> VerifyReport:
    """Compose each decoding plan with what the terminal receives.

    The composite must equal the block matrix [I_r ... I_r] over the
    stacked messages, exactly and entrywise mod p; that is equivalent to
    correct decoding of every instantiation at once.  Replicas share the
    same matrices, so the check does not depend on alpha.
    """
    sim_msgs = code.messages
    p = code.field.p
    r = code.r
    stacked = r * len(sim_msgs)
    target = np.zeros((r, stacked), dtype=np.int64)
    for mi in range(len(sim_msgs)):
        target[:, mi * r : (mi + 1) * r] = np.eye(r, dtype=np.int64)

    failed: list[Msg] = []
    witness = None
    for t in net.terminals:
        offsets, recv_len = _received_offsets(net, code, t)
        delivery = np.zeros((recv_len, stacked), dtype=np.int64)
        for i in net.head_feeds[t]:
            base = offsets[("bottleneck", i)]
            delivery[base : base + code.l] = code.encoders[i].entries
        for m in net.direct[t]:
            base = offsets[("direct", m.token())]
            off = sim_msgs.index(m) * r
            delivery[base : base + r, off : off + r] = np.eye(r, dtype=np.int64)
        plan_mat = _plan_matrix(net, code, t, offsets, recv_len)
        composite = _matmul_mod(plan_mat, delivery, p)
        if not np.array_equal(composite, target):
            failed.append(t)
            if witness is None:
                col = int(np.nonzero((composite != target).any(axis=0))[0][0])
                # by linearity a unit vector at the offending column is a
                # concrete counterexample for this terminal
                unit = np.zeros(stacked * code.alpha, dtype=np.int64)
                span_off = (col // r) * code.alpha * r + (col % r)
                unit[span_off] = 1
                witness = FailureWitness(
                    terminal=t,
                    instantiation=tuple(int(v) for v in unit),
                    expected=tuple(int(v) for v in target[:, col]),
                    decoded=tuple(int(v) for v in composite[:, col]),
                )
    if failed:
        return VerifyReport(
            mode="algebraic",
            ok=False,
            trials=0,
            failure=witness,
            failed_terminals=tuple(sorted(failed, key=Msg.sort_key)),
        )
    return VerifyReport(mode="algebraic", ok=True, trials=0)

"""Command-line front end.

Subcommands cover the pipeline: validate a seed graph, construct the
network, print its exact capacity bound, solve the split system, emit the
synthesized code, verify a (network, code) pair, and run the bundled
demonstrations.  Exit codes: 0 success, 1 verification failure, 2 bad
input or usage.  Rationals always print as "num/den" in lowest terms.

The exhaustive-verification state guard can be raised with the
SUMNET_MAX_STATES environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fixtures
from .codegen import achieved_rate, synthesize_code
from .errors import SumnetError
from .feasibility import solve_feasibility
from .ffield import Field
from .graph import classify, parse_graph, shortest_cycle
from .network import (
    build_sum_network,
    capacity_upper_bound,
    export_dot,
    export_json,
    import_json,
)
from .verify import (
    DEFAULT_MAX_STATES,
    verify_algebraic,
    verify_exhaustive,
    verify_random,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


@dataclass
class CliConfig:
    subcommand: str
    graph: str | None = None
    network: str | None = None
    construction: int = 2
    alpha: int = 1
    field: int = 2
    mode: str = "algebraic"
    trials: int = 10000
    seed: int = 0
    fmt: str = "json"
    output: str | None = None

    def validate(self):
        if self.construction not in (1, 2):
            raise SumnetError(f"construction must be 1 or 2, got {self.construction}")
        if self.alpha < 1:
            raise SumnetError(f"alpha must be at least 1, got {self.alpha}")
        if self.trials < 1:
            raise SumnetError(f"trials must be at least 1, got {self.trials}")
        if self.mode not in ("exhaustive", "random", "algebraic"):
            raise SumnetError(f"unknown verification mode {self.mode!r}")
        if self.fmt not in ("json", "dot", "text"):
            raise SumnetError(f"unknown output format {self.fmt!r}")
        needs_input = self.subcommand in (
            "validate",
            "construct",
            "capacity",
            "feas",
            "codegen",
            "verify",
        )
        if needs_input and not (self.graph or self.network):
            raise SumnetError(f"{self.subcommand} needs --graph (or --network)")


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_graph(cfg: CliConfig):
    return parse_graph(Path(cfg.graph).read_text(encoding="utf-8"))


def _load_network(cfg: CliConfig):
    if cfg.network:
        return import_json(Path(cfg.network).read_text(encoding="utf-8"))
    g = _load_graph(cfg)
    return build_sum_network(g, cfg.construction, cfg.alpha)


def _max_states() -> int:
    raw = os.environ.get("SUMNET_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES


def _cmd_validate(cfg: CliConfig) -> int:
    g = _load_graph(cfg)
    cyc = shortest_cycle(g)
    cls = classify(g)
    tag = cls.tag
    if tag == "regular":
        tag = f"regular({cls.k})"
    elif tag == "biregular_bipartite":
        tag = (
            f"biregular_bipartite({cls.n_left},{cls.n_right},"
            f"{cls.d_left},{cls.d_right})"
        )
    _emit(
        f"valid: b={g.b} edges={len(g.edges)} girth={len(cyc)} class={tag}",
        cfg.output,
    )
    return EXIT_OK


def _cmd_construct(cfg: CliConfig) -> int:
    net = _load_network(cfg)
    _emit(export_dot(net) if cfg.fmt == "dot" else export_json(net), cfg.output)
    return EXIT_OK


def _cmd_capacity(cfg: CliConfig) -> int:
    g = _load_graph(cfg)
    bound = capacity_upper_bound(g, cfg.construction, cfg.alpha)
    _emit(f"{bound.numerator}/{bound.denominator}", cfg.output)
    return EXIT_OK


def _cmd_feas(cfg: CliConfig) -> int:
    g = _load_graph(cfg)
    cycle = shortest_cycle(g) if cfg.construction == 2 else None
    assignment = solve_feasibility(g, cfg.construction, cycle)
    _emit("infeasible" if assignment is None else assignment.to_json(), cfg.output)
    return EXIT_OK


def _synthesize(cfg: CliConfig):
    net = _load_network(cfg)
    assignment = solve_feasibility(net.seed, net.construction, net.cycle)
    if assignment is None:
        raise SumnetError(
            "no feasible split assignment for this seed graph; no code exists "
            "along this route"
        )
    return net, synthesize_code(net, assignment, Field(cfg.field))


def _cmd_codegen(cfg: CliConfig) -> int:
    _, code = _synthesize(cfg)
    _emit(code.to_json(), cfg.output)
    return EXIT_OK


def _cmd_verify(cfg: CliConfig) -> int:
    net, code = _synthesize(cfg)
    if cfg.mode == "exhaustive":
        report = verify_exhaustive(net, code, max_states=_max_states())
    elif cfg.mode == "random":
        report = verify_random(net, code, trials=cfg.trials, seed=cfg.seed)
    else:
        report = verify_algebraic(net, code)
    _emit(report.to_json(), cfg.output)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _cmd_demo_appendix(cfg: CliConfig) -> int:
    """Pass/fail matrix of the two hand codes across small prime fields."""
    net = fixtures.full_star_network()
    lines = []
    ok = True
    cases = [("char2", 2, True), ("char2", 3, False), ("char2", 5, False),
             ("general", 3, True), ("general", 5, True)]
    for variant, p, expect_pass in cases:
        code = fixtures.full_star_code(variant, Field(p), check_characteristic=False)
        report = verify_algebraic(net, code)
        verdict = "pass" if report.ok else "fail@" + ",".join(
            t.token() for t in report.failed_terminals
        )
        lines.append(f"{variant} (rate {code.r}/{code.l}) GF({p}): {verdict}")
        if report.ok != expect_pass:
            ok = False
        if not expect_pass and [t.token() for t in report.failed_terminals] != ["star"]:
            ok = False
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_examples(cfg: CliConfig) -> int:
    """Run the named seed graphs end to end over GF(2)."""
    lines = []
    ok = True
    for name, g, construction, expected in fixtures.capacity_examples():
        bound = capacity_upper_bound(g, construction)
        cycle = shortest_cycle(g) if construction == 2 else None
        net = build_sum_network(g, construction, 1, cycle)
        assignment = solve_feasibility(g, construction, cycle)
        if assignment is None:
            lines.append(f"{name}: infeasible")
            ok = False
            continue
        code = synthesize_code(net, assignment, Field(2))
        report = verify_algebraic(net, code)
        rate = achieved_rate(code)
        good = report.ok and rate == bound == expected
        ok = ok and good
        lines.append(
            f"{name}: capacity {bound.numerator}/{bound.denominator} "
            f"rate {rate.numerator}/{rate.denominator} "
            f"{'pass' if good else 'FAIL'}"
        )
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


_HANDLERS = {
    "validate": _cmd_validate,
    "construct": _cmd_construct,
    "capacity": _cmd_capacity,
    "feas": _cmd_feas,
    "codegen": _cmd_codegen,
    "verify": _cmd_verify,
    "demo-appendix": _cmd_demo_appendix,
    "examples": _cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumnet",
        description="Construct sum-networks, bound their capacity, and "
        "synthesize and verify capacity-achieving linear codes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text, graph=True, network=False, field=False, fmt=False):
        sp = sub.add_parser(name, help=help_text)
        if graph:
            sp.add_argument("--graph", help="edge-list file for the seed graph")
            sp.add_argument("--construction", type=int, default=2, choices=(1, 2))
            sp.add_argument("--alpha", type=int, default=1)
        if network:
            sp.add_argument("--network", help="network JSON file (alternative to --graph)")
        if field:
            sp.add_argument("--field", type=int, default=2, help="prime modulus")
        if fmt:
            sp.add_argument("--format", dest="fmt", default="json", choices=("json", "dot"))
        sp.add_argument("--output", help="write output to this path instead of stdout")
        return sp

    add("validate", "check seed graph invariants")
    add("construct", "emit the constructed network", network=True, fmt=True)
    add("capacity", "print the exact capacity bound as num/den")
    add("feas", "solve the split system, print assignment JSON or 'infeasible'")
    add("codegen", "synthesize the linear code as JSON", network=True, field=True)
    vp = add("verify", "synthesize and verify; exit 0 iff the code passes",
             network=True, field=True)
    vp.add_argument("--mode", default="algebraic",
                    choices=("exhaustive", "random", "algebraic"))
    vp.add_argument("--trials", type=int, default=10000)
    vp.add_argument("--seed", type=int, default=0)
    add("demo-appendix", "pass/fail matrix of the two hand codes over small fields",
        graph=False)
    add("examples", "run the named seed graphs end to end", graph=False)
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(subcommand=args.subcommand)
    for name in ("graph", "network", "construction", "alpha", "mode",
                 "trials", "seed", "fmt", "output"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "field") and args.field is not None:
        cfg.field = args.field
    cfg.validate()
    return cfg


def run(cfg: CliConfig) -> int:
    cfg.validate()
    return _HANDLERS[cfg.subcommand](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    try:
        cfg = _config_from_args(args)
        return run(cfg)
    except SumnetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

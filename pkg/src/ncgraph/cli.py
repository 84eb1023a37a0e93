"""Command-line front door.

Subcommands: theta (classical graphs), theta-tilde (graphs, spaces or
channels), alpha (exact brute force or certified bracket), op (space and
graph algebra), check (verification of sets, codes and channels), and
paper-suite (the bundled table of known values and identities).

Exit codes: 0 success, 1 verification failure, 2 input error, 3 solver
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import channels as chmod
from . import graphs as gmod
from . import independence as indmod
from . import io as iomod
from . import lmi, spaces, suite
from . import theta as thetamod
from .errors import (
    GapTooLargeError,
    InputFormatError,
    NcgraphError,
    NotTracePreservingError,
    SolverError,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-8
    max_iter: int = 500
    seed: int = 0
    output: str = "pretty"

    def solve_options(self) -> lmi.SolveOptions:
        return lmi.SolveOptions(gap_tol=self.tol, feas_tol=self.tol, max_iter=self.max_iter)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _emit(cfg: RunConfig, payload: dict, pretty_lines: list[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in pretty_lines:
            print(line)


def _load_space(value) -> spaces.OperatorSpace:
    """Lift any space-like artifact: graphs and channels convert implicitly."""
    if isinstance(value, spaces.OperatorSpace):
        return value
    if isinstance(value, gmod.Graph):
        return gmod.to_operator_space(value)
    if isinstance(value, chmod.QuantumChannel):
        return chmod.confusability(value)
    if isinstance(value, chmod.ClassicalChannel):
        return chmod.confusability(chmod.from_classical(value))
    raise InputFormatError(f"cannot interpret {type(value).__name__} as an operator space")


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from None


def _cmd_theta(args, cfg: RunConfig) -> int:
    value = iomod.load_file(args.input)
    if not isinstance(value, gmod.Graph):
        raise InputFormatError("theta expects a graph artifact")
    result = thetamod.theta_classical(value, cfg.solve_options())
    if args.witness:
        iomod.dump_file(args.witness, iomod.theta_result_to_json(result))
    payload = iomod.theta_result_to_json(result)
    payload.pop("witness", None)
    _emit(cfg, payload, [f"theta = {_fmt(result.value)}", f"solver_gap = {_fmt(result.gap)}"])
    return EXIT_OK


def _cmd_theta_tilde(args, cfg: RunConfig) -> int:
    s = _load_space(iomod.load_file(args.input))
    sides = "both"
    if args.primal_only:
        sides = "primal"
    if args.dual_only:
        sides = "dual"
    result = thetamod.theta_tilde(s, cfg.solve_options(), sides=sides)
    if args.witness:
        iomod.dump_file(args.witness, iomod.theta_result_to_json(result))
    payload = iomod.theta_result_to_json(result)
    payload.pop("witness", None)
    lines = [f"theta_tilde = {_fmt(result.value)}"]
    if result.primal_value is not None and result.dual_value is not None:
        lines.append(f"primal = {_fmt(result.primal_value)}  dual = {_fmt(result.dual_value)}")
        lines.append(f"gap = {_fmt(result.gap)}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def _cmd_alpha(args, cfg: RunConfig) -> int:
    value = iomod.load_file(args.input)
    if args.mode == "brute":
        if not isinstance(value, gmod.Graph):
            raise InputFormatError("brute mode expects a graph artifact")
        alpha, witness = gmod.alpha_brute(value)
        _emit(
            cfg,
            {"kind": "alpha", "alpha": alpha, "witness": witness},
            [f"alpha = {alpha}", f"witness = {witness}"],
        )
        return EXIT_OK
    s = _load_space(value)
    config = indmod.SearchConfig(seed=cfg.seed)
    rep = indmod.bounds(s, config=config, opts=cfg.solve_options())
    if args.target is not None and rep.alpha_lower < args.target:
        cand = indmod.alpha_lower_search(s, args.target, config)
        if cand is not None:
            rep = indmod.BoundsReport(
                alpha_lower=cand.size,
                alpha_upper=rep.alpha_upper,
                theta_tilde_upper=rep.theta_tilde_upper,
                pair_dim_upper=rep.pair_dim_upper,
                alpha_hat_upper=rep.alpha_hat_upper,
                ambient_upper=rep.ambient_upper,
                witness=cand,
                notes=rep.notes,
            )
    _emit(
        cfg,
        iomod.bounds_report_to_json(rep),
        [
            f"alpha in [{rep.alpha_lower}, {rep.alpha_upper}]",
            f"theta_tilde upper bound = {_fmt(rep.theta_tilde_upper)}",
            f"pair-dimension upper bound = {rep.pair_dim_upper}",
            f"alpha_hat upper bound = {rep.alpha_hat_upper}",
            f"ambient upper bound = {rep.ambient_upper}",
        ],
    )
    return EXIT_OK


def _cmd_op(args, cfg: RunConfig) -> int:
    a = iomod.load_file(args.a)
    b = iomod.load_file(args.b) if args.b else None
    op = args.operation

    def need_b():
        if b is None:
            raise InputFormatError(f"op {op} needs --b")
        if type(a) is not type(b):
            raise InputFormatError("operands must have the same kind")

    if isinstance(a, gmod.Graph):
        if op == "product":
            need_b()
            out = gmod.strong_product(a, b)
        elif op == "dsum":
            need_b()
            out = gmod.disjoint_union(a, b)
        elif op == "cunion":
            need_b()
            out = gmod.join(a, b)
        elif op == "complement":
            out = gmod.complement_graph(a)
        elif op == "distance":
            s = spaces.distance_graph(gmod.to_operator_space(a), args.t)
            out = s
        elif op == "induced":
            u = iomod.matrix_from_json(_read_json(args.isometry))
            out = spaces.induced_subgraph(gmod.to_operator_space(a), u)
        else:
            raise InputFormatError(f"unknown op {op}")
    elif isinstance(a, spaces.OperatorSpace):
        if op == "product":
            need_b()
            out = spaces.tensor(a, b)
        elif op == "dsum":
            need_b()
            out = spaces.direct_sum(a, b)
        elif op == "cunion":
            need_b()
            out = spaces.complete_union(a, b)
        elif op == "complement":
            out = spaces.orth_complement(a)
        elif op == "distance":
            out = spaces.distance_graph(a, args.t)
        elif op == "induced":
            u = iomod.matrix_from_json(_read_json(args.isometry))
            out = spaces.induced_subgraph(a, u)
        else:
            raise InputFormatError(f"unknown op {op}")
    else:
        raise InputFormatError("op expects graph or operator_space artifacts")

    artifact = iomod.to_artifact(out)
    if args.output_file:
        iomod.dump_file(args.output_file, artifact)
        _emit(cfg, {"written": args.output_file, "kind": artifact["kind"]},
              [f"wrote {artifact['kind']} to {args.output_file}"])
    else:
        _emit(cfg, artifact, [json.dumps(artifact, sort_keys=True)])
    return EXIT_OK


def _cmd_check(args, cfg: RunConfig) -> int:
    if args.what == "indep":
        s = _load_space(iomod.load_file(args.space))
        cand = iomod.load_file(args.vectors)
        if not isinstance(cand, indmod.IndependentSetCandidate):
            raise InputFormatError("expected an independent_set artifact")
        ok, residual = indmod.verify_independent_set(s, cand.vectors, tol=max(cfg.tol, 1e-8))
        _emit(
            cfg,
            {"kind": "check", "check": "indep", "ok": ok, "residual": residual},
            [f"independent set of size {cand.size}: {'PASS' if ok else 'FAIL'}",
             f"residual = {residual:.3e}"],
        )
        return EXIT_OK if ok else EXIT_VERIFY
    if args.what == "kl":
        s = _load_space(iomod.load_file(args.space))
        proj = iomod.matrix_from_json(_read_json(args.projector))
        ok, code_dim = indmod.verify_kl_projector(s, proj, tol=max(cfg.tol, 1e-8))
        _emit(
            cfg,
            {"kind": "check", "check": "kl", "ok": ok, "code_dim": code_dim},
            [f"Knill-Laflamme code of dimension {code_dim}: {'PASS' if ok else 'FAIL'}"],
        )
        return EXIT_OK if ok else EXIT_VERIFY
    if args.what == "channel":
        try:
            value = iomod.load_file(args.input)
            if isinstance(value, chmod.ClassicalChannel):
                value = chmod.from_classical(value)
        except NotTracePreservingError as exc:
            _emit(
                cfg,
                {"kind": "check", "check": "channel", "ok": False, "residual": exc.residual},
                [f"FAIL: {exc}"],
            )
            return EXIT_VERIFY
        if not isinstance(value, chmod.QuantumChannel):
            raise InputFormatError("check channel expects a channel artifact")
        s = chmod.confusability(value)
        _emit(
            cfg,
            {"kind": "check", "check": "channel", "ok": True,
             "kraus": value.num_kraus, "confusability_dim": s.dim},
            [f"valid channel: {value.dim_in} -> {value.dim_out}, {value.num_kraus} Kraus operators",
             f"confusability dimension = {s.dim}"],
        )
        return EXIT_OK
    raise InputFormatError(f"unknown check {args.what!r}")


def _cmd_paper_suite(args, cfg: RunConfig) -> int:
    rows = suite.run_suite(args.filter or "")
    if not rows:
        raise InputFormatError(f"filter {args.filter!r} matches no criterion")
    if cfg.output == "json" or args.json_out:
        print(json.dumps([r.as_dict() for r in rows], sort_keys=True))
    else:
        width = max(len(r.name) for r in rows) + 2
        for r in rows:
            status = "PASS" if r.ok else "FAIL"
            print(
                f"[{status}] {r.criterion:22s} {r.name:{width}s} "
                f"expected {r.expected}  computed {r.computed}  (tol {r.tol}, {r.seconds:.2f} s)"
            )
        n_ok = sum(r.ok for r in rows)
        print(f"{n_ok}/{len(rows)} rows pass")
    return EXIT_OK if all(r.ok for r in rows) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncgraph",
        description="Confusability graphs of quantum channels and their Lovasz-type invariants",
    )
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--max-iter", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theta", help="classical Lovasz theta of a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--witness")

    p = sub.add_parser("theta-tilde", help="quantum Lovasz number of a space/graph/channel")
    p.add_argument("--input", required=True)
    p.add_argument("--witness")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--primal-only", action="store_true")
    g.add_argument("--dual-only", action="store_true")

    p = sub.add_parser("alpha", help="independence number (exact or bracket)")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["brute", "bracket"], default="brute")
    p.add_argument("--target", type=int)

    p = sub.add_parser("op", help="space and graph algebra")
    p.add_argument(
        "operation",
        choices=["product", "dsum", "cunion", "complement", "distance", "induced"],
    )
    p.add_argument("--a", "-a", required=True)
    p.add_argument("--b", "-b")
    p.add_argument("-o", dest="output_file")
    p.add_argument("--t", type=int, default=2, help="power for the distance operation")
    p.add_argument("--isometry", help="matrix JSON for induced subgraphs")

    p = sub.add_parser("check", help="verify sets, codes and channels")
    p.add_argument("what", choices=["indep", "kl", "channel"])
    p.add_argument("--space")
    p.add_argument("--vectors")
    p.add_argument("--projector")
    p.add_argument("--input")

    p = sub.add_parser("paper-suite", help="run the bundled verification table")
    p.add_argument("--filter", help="only criteria whose name contains this substring")
    p.add_argument("--json", dest="json_out", action="store_true")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        tol=args.tol,
        max_iter=args.max_iter,
        seed=args.seed,
        output="json" if args.json else "pretty",
    )
    handlers = {
        "theta": _cmd_theta,
        "theta-tilde": _cmd_theta_tilde,
        "alpha": _cmd_alpha,
        "op": _cmd_op,
        "check": _cmd_check,
        "paper-suite": _cmd_paper_suite,
    }
    try:
        return handlers[args.command](args, cfg)
    except (InputFormatError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, GapTooLargeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except NcgraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main(argv=None))

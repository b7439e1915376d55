"""Command-line front end.

Exit statuses: 0 for any successfully computed answer (including NO), 1
for invalid input, 2 for an exceeded resource cap, 3 for an internal
contradiction.  Reports go to stdout; all error and progress text goes to
stderr.  JSON output is canonical (sorted keys) and byte-stable for a
fixed config, seed, and input, regardless of worker count.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .cuts import mm_cut
from .decomposition import (
    DEFAULT_BW_CAP,
    DEFAULT_MMW_CAP,
    DEFAULT_TW_CAP,
    branchwidth_exact,
    check_inequality_chain,
    mmw_exact,
    treewidth_exact,
)
from .errors import CapExceededError, ContradictionError, InvalidInputError
from .graphs import Graph, SplitGraph
from .reductions import (
    PartitionInstance,
    certify_end_to_end,
    lemma3_check,
    partition2_oracle,
    partition3_oracle,
    reduce_partition3_to_splitgraph,
    reduce_partition_to_partition3,
)
from .sweeps import SWEEP_KINDS, sweep_experiments
from .treerep import (
    TreeRepresentation,
    build_tree_representation,
    validate_tree_representation,
)

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_CAP_EXCEEDED = 2
EXIT_CONTRADICTION = 3


@dataclass
class RunConfig:
    subcommand: str
    target: str | None = None
    graph_path: str | None = None
    instance_path: str | None = None
    rep_path: str | None = None
    k: int | None = None
    vertex_set: str | None = None
    cap_mmw_n: int = DEFAULT_MMW_CAP
    cap_bw_m: int = DEFAULT_BW_CAP
    cap_tw_n: int = DEFAULT_TW_CAP
    seed: int = 0
    workers: int = 1
    output_format: str = "json"
    sweep_params: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; that status is reserved for caps here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self._usage_exit(message))

    def _usage_exit(self, message) -> int:
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INVALID_INPUT


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-mmw-n", type=int, default=DEFAULT_MMW_CAP)
    common.add_argument("--cap-bw-m", type=int, default=DEFAULT_BW_CAP)
    common.add_argument("--cap-tw-n", type=int, default=DEFAULT_TW_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = _Parser(prog="mmwidth", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("solve", parents=[common], help="exact width parameters")
    p.add_argument("target", choices=("mmw", "bw", "tw", "chain"))
    p.add_argument("--graph", required=True, dest="graph_path")

    p = sub.add_parser("cut", parents=[common], help="evaluate the mm cut of a vertex set")
    p.add_argument("--graph", required=True, dest="graph_path")
    p.add_argument("--set", required=True, dest="vertex_set", metavar="V1,V2,...")

    p = sub.add_parser("reduce", parents=[common], help="run a reduction")
    p.add_argument("target", choices=("p2p3", "p3graph"))
    p.add_argument("--instance", required=True, dest="instance_path")

    p = sub.add_parser("oracle", parents=[common], help="decide an instance by brute force")
    p.add_argument("target", choices=("p2", "p3"))
    p.add_argument("--instance", required=True, dest="instance_path")

    p = sub.add_parser("verify-rep", parents=[common], help="validate a tree representation")
    p.add_argument("--graph", required=True, dest="graph_path")
    p.add_argument("--rep", required=True, dest="rep_path")
    p.add_argument("--k", required=True, type=int)

    p = sub.add_parser(
        "build-rep", parents=[common],
        help="find a tripartition of a split graph and build its representation",
    )
    p.add_argument("--graph", required=True, dest="graph_path")

    p = sub.add_parser("certify", parents=[common], help="certify the whole chain on an instance")
    p.add_argument("--instance", required=True, dest="instance_path")

    p = sub.add_parser("sweep", parents=[common], help="run an exhaustive verification sweep")
    p.add_argument("target", choices=SWEEP_KINDS)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-item", type=int, default=None)
    p.add_argument("--max-total", type=int, default=9)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    for name in ("target", "graph_path", "instance_path", "rep_path", "k", "vertex_set"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    cfg.cap_mmw_n = args.cap_mmw_n
    cfg.cap_bw_m = args.cap_bw_m
    cfg.cap_tw_n = args.cap_tw_n
    cfg.seed = args.seed
    cfg.workers = args.workers
    cfg.output_format = args.format
    if cfg.workers < 1 or min(cfg.cap_mmw_n, cfg.cap_bw_m, cfg.cap_tw_n) < 1:
        raise InvalidInputError("caps and worker count must be positive")
    if args.subcommand == "sweep":
        defaults = {
            "soundness2to3": (6, 6),
            "soundness3tograph": (4, 4),
        }
        max_m, max_item = defaults.get(cfg.target, (6, 6))
        cfg.sweep_params = {
            "n": args.n,
            "max_m": args.max_m if args.max_m is not None else max_m,
            "max_item": args.max_item if args.max_item is not None else max_item,
            "max_total": args.max_total,
        }
    return cfg


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_table(report)


def _print_table(report: dict, indent: str = "") -> None:
    rows = report.get("rows")
    for key in sorted(report):
        if key == "rows":
            continue
        value = report[key]
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_table(value, indent + "  ")
        else:
            print(f"{indent}{key}: {value}")
    if rows:
        cols = sorted(rows[0])
        print(indent + "  ".join(cols))
        for row in rows:
            print(indent + "  ".join(str(row.get(c, "")) for c in cols))


def run(config: RunConfig) -> tuple[int, dict]:
    """Dispatch a parsed config to the library; returns (exit status, report)."""
    cmd = config.subcommand
    if cmd == "solve":
        g = Graph.from_json_dict(_load_json(config.graph_path))
        if config.target == "mmw":
            return EXIT_OK, mmw_exact(g, cap=config.cap_mmw_n).to_json_dict()
        if config.target == "bw":
            return EXIT_OK, {"width": branchwidth_exact(g, cap=config.cap_bw_m)}
        if config.target == "tw":
            return EXIT_OK, {"width": treewidth_exact(g, cap=config.cap_tw_n)}
        report = check_inequality_chain(
            g, mmw_cap=config.cap_mmw_n, bw_cap=config.cap_bw_m, tw_cap=config.cap_tw_n
        )
        return EXIT_OK, report.to_json_dict()

    if cmd == "cut":
        g = Graph.from_json_dict(_load_json(config.graph_path))
        try:
            vs = [int(x) for x in config.vertex_set.split(",") if x.strip() != ""]
        except ValueError as exc:
            raise InvalidInputError(f"bad vertex list {config.vertex_set!r}") from exc
        return EXIT_OK, {"set": sorted(vs), "mm": mm_cut(g, vs)}

    if cmd == "reduce":
        inst = PartitionInstance.from_json_dict(_load_json(config.instance_path))
        if config.target == "p2p3":
            return EXIT_OK, reduce_partition_to_partition3(inst).to_json_dict()
        return EXIT_OK, reduce_partition3_to_splitgraph(inst).to_json_dict()

    if cmd == "oracle":
        inst = PartitionInstance.from_json_dict(_load_json(config.instance_path))
        if config.target == "p2":
            witness = partition2_oracle(inst)
            if witness is None:
                reason = "sum is odd" if inst.total % 2 else "no equal-sum bipartition exists"
                return EXIT_OK, {"answer": "NO", "reason": reason}
            return EXIT_OK, {
                "answer": "YES",
                "assignment": list(witness.assignment),
                "part_sums": list(witness.part_sums(inst)),
            }
        witness3 = partition3_oracle(inst)
        if witness3 is None:
            reason = (
                "sum not divisible by 3"
                if inst.total % 3
                else "no equal-sum tripartition exists"
            )
            return EXIT_OK, {"answer": "NO", "reason": reason}
        return EXIT_OK, {
            "answer": "YES",
            "assignment": list(witness3.assignment),
            "part_sums": list(witness3.part_sums(inst)),
            "parts": [list(p) for p in witness3.parts(inst)],
        }

    if cmd == "verify-rep":
        g = Graph.from_json_dict(_load_json(config.graph_path))
        rep = TreeRepresentation.from_json_dict(_load_json(config.rep_path))
        report = validate_tree_representation(g, rep, config.k)
        return EXIT_OK, report.to_json_dict()

    if cmd == "build-rep":
        sg = SplitGraph.from_json_dict(_load_json(config.graph_path))
        parts = lemma3_check(sg)
        if parts is None:
            return EXIT_OK, {"answer": "NO", "reason": "no qualifying tripartition"}
        rep = build_tree_representation(sg, parts)
        return EXIT_OK, {
            "answer": "YES",
            "k": parts.k,
            "tripartition": parts.to_json_dict(),
            "representation": rep.to_json_dict(),
        }

    if cmd == "certify":
        inst = PartitionInstance.from_json_dict(_load_json(config.instance_path))
        report = certify_end_to_end(inst, mmw_cap=config.cap_mmw_n)
        status = EXIT_OK if report["consistent"] else EXIT_CONTRADICTION
        return status, report

    if cmd == "sweep":
        report = sweep_experiments(
            config.target, workers=config.workers, **config.sweep_params
        )
        print(f"elapsed: {report.elapsed_s:.2f}s", file=sys.stderr)
        d = report.to_json_dict()
        if config.output_format == "table":
            d["elapsed_s"] = round(report.elapsed_s, 2)
        return EXIT_OK, d

    raise InvalidInputError(f"unknown subcommand {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        started = time.perf_counter()
        status, report = run(config)
        if config.subcommand != "sweep":
            print(f"elapsed: {time.perf_counter() - started:.2f}s", file=sys.stderr)
        _emit(report, config.output_format)
        return status
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_INVALID_INPUT
    except InvalidInputError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except CapExceededError as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except ContradictionError as exc:
        print(f"error: internal contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

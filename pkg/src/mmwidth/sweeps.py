"""Exhaustive desk-scale verification sweeps.

Each sweep enumerates a finite instance family in a fixed order, runs the
relevant solvers or oracles on every instance, and reports the violations
(which must be none).  Sweeps may be sharded across worker processes; the
per-instance results are merged back in instance order, so the report is
byte-identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterable

from .decomposition import (
    DEFAULT_TW_CAP,
    check_inequality_chain,
    mmw_exact,
)
from .errors import InvalidInputError
from .graphs import Graph, all_vertex_pairs, enumerate_small_graphs
from .reductions import (
    PartitionInstance,
    lemma3_check,
    partition2_oracle,
    partition3_oracle,
    reduce_partition3_to_splitgraph,
    reduce_partition_to_partition3,
)

SWEEP_KINDS = ("chain", "soundness2to3", "soundness3tograph", "solver-agreement")


@dataclass
class SweepReport:
    kind: str
    params: dict
    instance_count: int
    violations: list[dict]
    rows: list[dict] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self, *, include_rows: bool = True) -> dict:
        # elapsed_s is volatile and deliberately left out of the canonical form
        d = {
            "kind": self.kind,
            "params": self.params,
            "instances": self.instance_count,
            "violations": self.violations,
            "ok": self.ok,
        }
        if include_rows and self.rows:
            d["rows"] = self.rows
        return d


def _map_ordered(fn: Callable, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def connected_graphs(n: int, *, min_edges: int = 1) -> Iterable[Graph]:
    for g in enumerate_small_graphs(n):
        if g.edge_count >= min_edges and g.is_connected():
            yield g


def multisets(max_m: int, max_item: int) -> list[tuple[int, ...]]:
    """All nonempty multisets over 1..max_item with at most max_m items."""
    out: list[tuple[int, ...]] = []
    for m in range(1, max_m + 1):
        out.extend(combinations_with_replacement(range(1, max_item + 1), m))
    return out


def _graph_id(g: Graph) -> int:
    pairs = {e: i for i, e in enumerate(all_vertex_pairs(g.n))}
    mask = 0
    for e in g.edges:
        mask |= 1 << pairs[e]
    return mask


def _chain_worker(args: tuple[Graph, int, int, int]) -> dict:
    g, mmw_cap, bw_cap, tw_cap = args
    report = check_inequality_chain(g, mmw_cap=mmw_cap, bw_cap=bw_cap, tw_cap=tw_cap)
    row = {"graph": _graph_id(g), "n": g.n, "m": g.edge_count}
    row.update(report.to_json_dict())
    return row


def sweep_chain(n: int, *, workers: int = 1, bw_cap: int | None = None) -> SweepReport:
    """Inequality chain on every connected n-vertex graph with >= 2 edges.

    The branchwidth cap is raised to n(n-1)/2 by default so the complete
    graph is in scope.
    """
    start = time.perf_counter()
    max_edges = n * (n - 1) // 2
    bw_cap = max_edges if bw_cap is None else bw_cap
    graphs = [g for g in connected_graphs(n, min_edges=2)]
    rows = _map_ordered(
        _chain_worker, [(g, n, bw_cap, max(n, DEFAULT_TW_CAP)) for g in graphs], workers
    )
    violations = [row for row in rows if not row["chain_ok"]]
    return SweepReport(
        kind="chain",
        params={"n": n},
        instance_count=len(graphs),
        violations=violations,
        rows=rows,
        elapsed_s=time.perf_counter() - start,
    )


def _p2p3_worker(items: tuple[int, ...]) -> dict | None:
    inst = PartitionInstance.of(items)
    direct = partition2_oracle(inst) is not None
    reduced = reduce_partition_to_partition3(inst)
    via_p3 = (
        False if reduced.forced_no else partition3_oracle(reduced.instance) is not None
    )
    if direct != via_p3:
        return {"items": list(items), "partition2": direct, "partition3_reduced": via_p3}
    return None


def sweep_soundness2to3(max_m: int = 6, max_item: int = 6, *, workers: int = 1) -> SweepReport:
    """PARTITION agrees with PARTITION-3 after the reduction, exhaustively."""
    start = time.perf_counter()
    items_list = multisets(max_m, max_item)
    results = _map_ordered(_p2p3_worker, items_list, workers)
    violations = [r for r in results if r is not None]
    return SweepReport(
        kind="soundness2to3",
        params={"max_m": max_m, "max_item": max_item},
        instance_count=len(items_list),
        violations=violations,
        elapsed_s=time.perf_counter() - start,
    )


def _p3graph_worker(items: tuple[int, ...]) -> dict | None:
    inst = PartitionInstance.of(items)
    direct = partition3_oracle(inst) is not None
    reduction = reduce_partition3_to_splitgraph(inst)
    via_graph = lemma3_check(reduction.split) is not None
    if direct != via_graph:
        return {"items": list(items), "partition3": direct, "tripartition_test": via_graph}
    return None


def sweep_soundness3tograph(
    max_m: int = 4, max_item: int = 4, *, workers: int = 1
) -> SweepReport:
    """PARTITION-3 agrees with the split-graph tripartition test, exhaustively.

    Restricted to totals divisible by 3 (the test's domain).
    """
    start = time.perf_counter()
    items_list = [t for t in multisets(max_m, max_item) if sum(t) % 3 == 0]
    results = _map_ordered(_p3graph_worker, items_list, workers)
    violations = [r for r in results if r is not None]
    return SweepReport(
        kind="soundness3tograph",
        params={"max_m": max_m, "max_item": max_item},
        instance_count=len(items_list),
        violations=violations,
        elapsed_s=time.perf_counter() - start,
    )


def _agreement_worker(items: tuple[int, ...]) -> dict | None:
    inst = PartitionInstance.of(items)
    reduction = reduce_partition3_to_splitgraph(inst)
    n = reduction.split.graph.n
    says_yes = lemma3_check(reduction.split) is not None
    width = mmw_exact(reduction.split.graph, cap=n).width
    target = inst.total // 3
    if says_yes != (width == target):
        return {
            "items": list(items),
            "tripartition_test": says_yes,
            "mmw": width,
            "target": target,
        }
    return None


def sweep_solver_agreement(max_total: int = 9, *, workers: int = 1) -> SweepReport:
    """Tripartition test answers YES exactly when mm-width hits total/3.

    Over all reduced split graphs with total + m <= max_total and total
    divisible by 3; the mm-width comes from the exact solver.
    """
    start = time.perf_counter()
    items_list = [
        t
        for t in multisets(max_total, max_total)
        if sum(t) % 3 == 0 and sum(t) + len(t) <= max_total
    ]
    results = _map_ordered(_agreement_worker, items_list, workers)
    violations = [r for r in results if r is not None]
    return SweepReport(
        kind="solver-agreement",
        params={"max_total": max_total},
        instance_count=len(items_list),
        violations=violations,
        elapsed_s=time.perf_counter() - start,
    )


def sweep_experiments(kind: str, *, workers: int = 1, **params) -> SweepReport:
    """Dispatch a named sweep; see SWEEP_KINDS."""
    if kind == "chain":
        return sweep_chain(params.get("n", 5), workers=workers)
    if kind == "soundness2to3":
        return sweep_soundness2to3(
            params.get("max_m", 6), params.get("max_item", 6), workers=workers
        )
    if kind == "soundness3tograph":
        return sweep_soundness3tograph(
            params.get("max_m", 4), params.get("max_item", 4), workers=workers
        )
    if kind == "solver-agreement":
        return sweep_solver_agreement(params.get("max_total", 9), workers=workers)
    raise InvalidInputError(f"unknown sweep kind {kind!r}; choose from {SWEEP_KINDS}")

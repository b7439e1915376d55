"""PARTITION / PARTITION-3 oracles and the hardness reduction chain.

The chain: PARTITION (split a multiset into two equal-sum halves) reduces
to PARTITION-3 (three equal-sum parts) by appending half the total; a
PARTITION-3 instance reduces to a split graph whose clique is one block of
size s_i per item plus one independent vertex wired to each block.  The
balanced-tripartition test on that split graph (clique parts of size k
with every independent neighborhood inside one part) answers YES exactly
when the graph's mm-width equals a third of the total, which is what
:func:`certify_end_to_end` certifies instance by instance.

All oracles return checkable witnesses rather than bare booleans, explore
parts in index order, and return the lexicographically first witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .decomposition import DEFAULT_MMW_CAP, mmw_exact
from .errors import CapExceededError, InvalidInputError, UnsupportedCaseError
from .graphs import Graph, SplitGraph, validate_split
from .treerep import (
    CliqueTripartition,
    build_tree_representation,
    validate_tree_representation,
)

PARTITION2_ITEM_CAP = 24
PARTITION3_ITEM_CAP = 16
PARTITION3_SUM_CAP = 3000


@dataclass(frozen=True)
class PartitionInstance:
    """A multiset of positive integers, kept in input order."""

    items: tuple[int, ...]

    def __post_init__(self):
        if len(self.items) < 1:
            raise InvalidInputError("an instance needs at least one item")
        if any(s < 1 for s in self.items):
            raise InvalidInputError("items must be positive integers")

    @classmethod
    def of(cls, items: Iterable[int]) -> PartitionInstance:
        return cls(tuple(int(s) for s in items))

    @property
    def total(self) -> int:
        return sum(self.items)

    def to_json_dict(self) -> dict:
        return {"items": list(self.items)}

    @classmethod
    def from_json_dict(cls, d: dict) -> PartitionInstance:
        try:
            return cls.of(d["items"])
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed instance JSON: {exc}") from exc


@dataclass(frozen=True)
class Bipartition:
    """Two-part assignment (values 1/2), one per item."""

    assignment: tuple[int, ...]

    def part_sums(self, inst: PartitionInstance) -> tuple[int, int]:
        sums = [0, 0]
        for s, a in zip(inst.items, self.assignment):
            sums[a - 1] += s
        return tuple(sums)  # type: ignore[return-value]

    def check_against(self, inst: PartitionInstance) -> None:
        if len(self.assignment) != len(inst.items) or any(
            a not in (1, 2) for a in self.assignment
        ):
            raise InvalidInputError("assignment does not match the instance")
        s1, s2 = self.part_sums(inst)
        if s1 != s2:
            raise InvalidInputError(f"part sums differ: {s1} != {s2}")

    def to_json_dict(self) -> dict:
        return {"assignment": list(self.assignment)}


@dataclass(frozen=True)
class Tripartition:
    """Three-part assignment (values 1/2/3), one per item."""

    assignment: tuple[int, ...]

    def part_sums(self, inst: PartitionInstance) -> tuple[int, int, int]:
        sums = [0, 0, 0]
        for s, a in zip(inst.items, self.assignment):
            sums[a - 1] += s
        return tuple(sums)  # type: ignore[return-value]

    def parts(self, inst: PartitionInstance) -> tuple[tuple[int, ...], ...]:
        """The three multisets of item values."""
        out: tuple[list[int], list[int], list[int]] = ([], [], [])
        for s, a in zip(inst.items, self.assignment):
            out[a - 1].append(s)
        return tuple(tuple(p) for p in out)

    def check_against(self, inst: PartitionInstance) -> None:
        if len(self.assignment) != len(inst.items) or any(
            a not in (1, 2, 3) for a in self.assignment
        ):
            raise InvalidInputError("assignment does not match the instance")
        s1, s2, s3 = self.part_sums(inst)
        if not s1 == s2 == s3:
            raise InvalidInputError(f"part sums differ: {(s1, s2, s3)}")

    def to_json_dict(self) -> dict:
        return {"assignment": list(self.assignment)}


def partition2_oracle(
    inst: PartitionInstance, *, cap: int = PARTITION2_ITEM_CAP
) -> Bipartition | None:
    """Equal-sum two-part split of the instance, or None.

    Subset-sum reachability as bitset DP with per-item snapshots, then a
    greedy forward walk preferring part 1, which yields the
    lexicographically first assignment.
    """
    items = inst.items
    if len(items) > cap:
        raise CapExceededError(f"partition oracle capped at {cap} items, got {len(items)}")
    total = inst.total
    if total % 2:
        return None
    target = total // 2
    # suffix_reach[i] = bitset of sums formable from items[i:]
    m = len(items)
    suffix_reach = [0] * (m + 1)
    suffix_reach[m] = 1
    for i in range(m - 1, -1, -1):
        r = suffix_reach[i + 1]
        suffix_reach[i] = r | (r << items[i])
    if not (suffix_reach[0] >> target) & 1:
        return None
    assignment = []
    need = target
    for i, s in enumerate(items):
        if s <= need and (suffix_reach[i + 1] >> (need - s)) & 1:
            assignment.append(1)
            need -= s
        else:
            assignment.append(2)
    witness = Bipartition(tuple(assignment))
    witness.check_against(inst)
    return witness


def partition3_oracle(
    inst: PartitionInstance,
    *,
    item_cap: int = PARTITION3_ITEM_CAP,
    sum_cap: int = PARTITION3_SUM_CAP,
) -> Tripartition | None:
    """Equal-sum three-part split of the instance, or None.

    Rejects immediately when the total is not divisible by 3.  Within the
    item cap: depth-first assignment in item order trying parts 1, 2, 3,
    with per-part sum bounds, first-use symmetry breaking, and a memo of
    dead (position, sorted part sums) states; this returns the
    lexicographically first witness.  Larger instances fall back to a
    feasibility DP over (part-1 sum, part-2 sum) pairs when the total is
    within the sum cap.
    """
    items = inst.items
    total = inst.total
    if total % 3:
        return None
    target = total // 3
    m = len(items)
    if m <= item_cap:
        assignment = _p3_backtrack(items, target)
    elif total <= sum_cap:
        assignment = _p3_sum_dp(items, target)
    else:
        raise CapExceededError(
            f"instance exceeds both the {item_cap}-item and {sum_cap}-sum caps"
        )
    if assignment is None:
        return None
    witness = Tripartition(assignment)
    witness.check_against(inst)
    return witness


def _p3_backtrack(items: tuple[int, ...], target: int) -> tuple[int, ...] | None:
    m = len(items)
    sums = [0, 0, 0]
    assignment = [0] * m
    dead: set[tuple[int, tuple[int, int, int]]] = set()

    def go(i: int, used: int) -> bool:
        if i == m:
            return sums[0] == sums[1] == sums[2]
        key = (i, tuple(sorted(sums)))
        if key in dead:
            return False
        s = items[i]
        for p in range(min(used + 1, 3)):
            if sums[p] + s <= target:
                sums[p] += s
                assignment[i] = p + 1
                if go(i + 1, max(used, p + 1)):
                    return True
                sums[p] -= s
        dead.add(key)
        return False

    if go(0, 0):
        return tuple(assignment)
    return None


def _p3_sum_dp(items: tuple[int, ...], target: int) -> tuple[int, ...] | None:
    # reach[i] = set of (a, b): items[i:] can put exactly a into part 1 and
    # b into part 2 (the rest goes to part 3)
    m = len(items)
    reach: list[set[tuple[int, int]]] = [set() for _ in range(m + 1)]
    reach[m].add((0, 0))
    for i in range(m - 1, -1, -1):
        s = items[i]
        here = reach[i]
        for a, b in reach[i + 1]:
            if a + s <= target:
                here.add((a + s, b))
            if b + s <= target:
                here.add((a, b + s))
            here.add((a, b))
    if (target, target) not in reach[0]:
        return None
    assignment = []
    need1, need2 = target, target
    for i, s in enumerate(items):
        if need1 >= s and (need1 - s, need2) in reach[i + 1]:
            assignment.append(1)
            need1 -= s
        elif need2 >= s and (need1, need2 - s) in reach[i + 1]:
            assignment.append(2)
            need2 -= s
        else:
            assignment.append(3)
    return tuple(assignment)


@dataclass(frozen=True)
class Partition3Reduction:
    """Result of the PARTITION -> PARTITION-3 reduction.

    When the original total is odd the PARTITION answer is forced NO, and
    the reduction emits the canonical NO instance {1,1,2} tagged as such.
    """

    instance: PartitionInstance
    forced_no: bool

    def to_json_dict(self) -> dict:
        return {"items": list(self.instance.items), "forced_no": self.forced_no}


def reduce_partition_to_partition3(inst: PartitionInstance) -> Partition3Reduction:
    """Append half the total to the multiset; answer-preserving."""
    total = inst.total
    if total % 2:
        return Partition3Reduction(PartitionInstance.of((1, 1, 2)), True)
    return Partition3Reduction(
        PartitionInstance.of(inst.items + (total // 2,)), False
    )


@dataclass(frozen=True)
class SplitGraphReduction:
    """The split graph built from a PARTITION-3 instance.

    Clique vertices 0..total-1 in consecutive blocks of the item sizes;
    independent vertex ``independents[j]`` is adjacent to exactly
    ``blocks[j]``.
    """

    split: SplitGraph
    blocks: tuple[tuple[int, ...], ...]
    independents: tuple[int, ...]

    def to_json_dict(self) -> dict:
        d = self.split.to_json_dict()
        d["blocks"] = [list(b) for b in self.blocks]
        d["block_independents"] = list(self.independents)
        return d


def reduce_partition3_to_splitgraph(inst: PartitionInstance) -> SplitGraphReduction:
    """Build the split graph whose mm-width is total/3 iff the answer is YES."""
    total = inst.total
    m = len(inst.items)
    edges = [(u, v) for u in range(total) for v in range(u + 1, total)]
    blocks = []
    start = 0
    for j, s in enumerate(inst.items):
        block = tuple(range(start, start + s))
        blocks.append(block)
        iv = total + j
        edges.extend((c, iv) for c in block)
        start += s
    g = Graph.from_edges(total + m, edges)
    sg = validate_split(g, range(total), range(total, total + m))
    return SplitGraphReduction(sg, tuple(blocks), tuple(range(total, total + m)))


def lemma3_check(sg: SplitGraph, *, item_cap: int = PARTITION3_ITEM_CAP) -> CliqueTripartition | None:
    """Balanced tripartition of the clique respecting all neighborhoods, or None.

    Clique vertices forced together (co-members of some independent
    vertex's neighborhood) are contracted into blocks: components of the
    hypergraph whose hyperedges are the neighborhoods.  A qualifying
    tripartition exists iff the block sizes split into three parts of sum
    k = |C|/3, decided by the PARTITION-3 oracle; free clique vertices are
    singleton blocks.  Independent vertices go to the part holding their
    neighborhood; empty-neighborhood vertices are unconstrained, go to
    part 1, and are flagged in the witness.
    """
    clique = sg.clique
    if len(clique) % 3:
        raise InvalidInputError(f"clique size {len(clique)} is not divisible by 3")
    k = len(clique) // 3
    if k < 1:
        raise InvalidInputError("the test needs a nonempty clique")

    parent = {c: c for c in clique}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for w in sg.independent:
        neigh = sorted(sg.graph.neighbors(w))
        for u in neigh[1:]:
            ru, r0 = find(u), find(neigh[0])
            if ru != r0:
                parent[max(ru, r0)] = min(ru, r0)

    members: dict[int, list[int]] = {}
    for c in clique:
        members.setdefault(find(c), []).append(c)
    blocks = [tuple(sorted(vs)) for _, vs in sorted(members.items())]

    answer = partition3_oracle(
        PartitionInstance.of(len(b) for b in blocks), item_cap=item_cap
    )
    if answer is None:
        return None

    c_parts: tuple[list[int], list[int], list[int]] = ([], [], [])
    for block, p in zip(blocks, answer.assignment):
        c_parts[p - 1].extend(block)
    part_of = {c: j for j in range(3) for c in c_parts[j]}
    i_parts: tuple[list[int], list[int], list[int]] = ([], [], [])
    unconstrained = []
    for w in sg.independent:
        neigh = sg.graph.neighbors(w)
        if neigh:
            i_parts[part_of[next(iter(neigh))]].append(w)
        else:
            unconstrained.append(w)
            i_parts[0].append(w)
    witness = CliqueTripartition(
        tuple(tuple(sorted(p)) for p in c_parts),  # type: ignore[arg-type]
        tuple(tuple(sorted(p)) for p in i_parts),  # type: ignore[arg-type]
        tuple(unconstrained),
    )
    witness.check_against(sg)
    return witness


def certify_end_to_end(
    inst: PartitionInstance, *, mmw_cap: int = DEFAULT_MMW_CAP
) -> dict:
    """Run the whole chain on one instance and cross-check every step.

    Reports the PARTITION-3 answer, the tripartition test on the reduced
    split graph, their agreement, a validated explicit representation when
    one is constructible, and (within the solver cap) whether the exact
    mm-width equals a third of the total exactly on YES instances.  Checks
    that are out of cap or out of domain are reported as skipped, not
    failed; ``consistent`` is False only on an internal contradiction.
    """
    report: dict = {"instance": inst.to_json_dict(), "checks": {}, "consistent": True}
    checks = report["checks"]
    total = inst.total
    divisible = total % 3 == 0
    target = total // 3 if divisible else None

    p3 = partition3_oracle(inst)
    checks["partition3"] = {
        "answer": "YES" if p3 else "NO",
        "witness": p3.to_json_dict() if p3 else None,
        "reason": None if divisible else "sum not divisible by 3",
    }

    reduction = reduce_partition3_to_splitgraph(inst)
    sg = reduction.split
    checks["reduction"] = {
        "clique_size": len(sg.clique),
        "independents": len(sg.independent),
        "n": sg.graph.n,
    }

    if divisible:
        lemma3 = lemma3_check(sg)
        checks["tripartition_test"] = {
            "answer": "YES" if lemma3 else "NO",
            "witness": lemma3.to_json_dict() if lemma3 else None,
            "skipped": False,
        }
        agreement = (p3 is None) == (lemma3 is None)
        checks["agreement"] = agreement
        if not agreement:
            report["consistent"] = False
    else:
        lemma3 = None
        checks["tripartition_test"] = {
            "answer": "NO",
            "witness": None,
            "skipped": True,
            "reason": "clique size not divisible by 3",
        }
        checks["agreement"] = p3 is None
        if p3 is not None:
            report["consistent"] = False

    if lemma3 is not None:
        try:
            rep = build_tree_representation(sg, lemma3)
        except UnsupportedCaseError as exc:
            checks["builder"] = {"applied": False, "reason": str(exc)}
        else:
            validation = validate_tree_representation(sg.graph, rep, lemma3.k)
            max_load = validation.profile.max_load
            checks["builder"] = {
                "applied": True,
                "validated": validation.ok,
                "max_load": max_load,
                "host_nodes": len(rep.host.nodes),
            }
            if not validation.ok or max_load != target:
                report["consistent"] = False
    else:
        checks["builder"] = {"applied": False, "reason": "no qualifying tripartition"}

    if not divisible:
        checks["mmw"] = {"skipped": True, "reason": "sum not divisible by 3"}
    elif sg.graph.n > mmw_cap:
        checks["mmw"] = {
            "skipped": True,
            "reason": f"n={sg.graph.n} exceeds the mm-width cap {mmw_cap}",
        }
    else:
        width = mmw_exact(sg.graph, cap=mmw_cap).width
        matches = width == target
        checks["mmw"] = {
            "skipped": False,
            "value": width,
            "expected_if_yes": target,
            "matches": matches,
        }
        if matches != (p3 is not None):
            report["consistent"] = False
    return report

"""Tree representations of graphs and the split-graph construction.

A tree representation assigns to every graph vertex a nontrivial subtree
of a ternary host tree so that adjacent vertices' subtrees share a node.
If additionally no host edge lies in more than k subtrees, the graph has
mm-width at most k; the converse also holds, which is what the validator
plus the exact solver exercise empirically.

For a split graph whose clique C (|C| = 3k) admits a balanced tripartition
with every independent vertex's neighborhood inside a single part, the
builder constructs the explicit width-k representation: three branch paths
of alpha nodes (independent vertices first, then all but the last clique
vertex of the part), joined at a hub node, with a beta leaf pendant per
graph vertex.  Independent subtrees are single pendant edges; clique
subtrees are the full path from their leaf to the hub.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Iterable, Sequence

from .decomposition import NodeId, TernaryTree, canon_tree_edge
from .errors import ContradictionError, InvalidInputError, UnsupportedCaseError
from .graphs import Graph, SplitGraph

HUB = "a0"


def alpha(x: int) -> str:
    return f"a:{x}"


def beta(x: int) -> str:
    return f"b:{x}"


@dataclass(frozen=True)
class CliqueTripartition:
    """Witness that a split graph satisfies the balanced-tripartition test.

    The three clique parts have equal size k; every independent vertex in
    i_parts[j] has its whole neighborhood inside c_parts[j].  Independent
    vertices with empty neighborhoods satisfy the containment vacuously;
    they are assigned to part 0 and flagged in unconstrained_independents.
    """

    c_parts: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    i_parts: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    unconstrained_independents: tuple[int, ...] = ()

    @property
    def k(self) -> int:
        return len(self.c_parts[0])

    def check_against(self, sg: SplitGraph) -> None:
        """Raise InvalidInputError unless this is a valid witness for sg."""
        k = self.k
        if k < 1 or any(len(part) != k for part in self.c_parts):
            raise InvalidInputError("clique parts must have equal size k >= 1")
        if sorted(v for part in self.c_parts for v in part) != sorted(sg.clique):
            raise InvalidInputError("clique parts do not partition the clique")
        if sorted(v for part in self.i_parts for v in part) != sorted(sg.independent):
            raise InvalidInputError("independent parts do not partition the independent set")
        for j in range(3):
            part = set(self.c_parts[j])
            for w in self.i_parts[j]:
                if not sg.graph.neighbors(w) <= part:
                    raise InvalidInputError(
                        f"neighborhood of independent vertex {w} leaves part {j}"
                    )

    def to_json_dict(self) -> dict:
        return {
            "clique_parts": [list(p) for p in self.c_parts],
            "independent_parts": [list(p) for p in self.i_parts],
            "unconstrained_independents": list(self.unconstrained_independents),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> CliqueTripartition:
        try:
            c = tuple(tuple(int(v) for v in p) for p in d["clique_parts"])
            i = tuple(tuple(int(v) for v in p) for p in d["independent_parts"])
            u = tuple(int(v) for v in d.get("unconstrained_independents", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed tripartition JSON: {exc}") from exc
        if len(c) != 3 or len(i) != 3:
            raise InvalidInputError("a tripartition needs exactly three parts")
        return cls(c, i, u)


Subtree = frozenset  # of canonical host edges


@dataclass(frozen=True)
class TreeRepresentation:
    host: TernaryTree
    subtrees: dict[int, Subtree]

    @classmethod
    def make(
        cls, host: TernaryTree, subtrees: dict[int, Iterable[tuple[NodeId, NodeId]]]
    ) -> TreeRepresentation:
        canon = {
            u: frozenset(canon_tree_edge(a, b) for a, b in edges)
            for u, edges in subtrees.items()
        }
        return cls(host, canon)

    def to_json_dict(self) -> dict:
        return {
            "host_edges": [[a, b] for a, b in self.host.edges],
            "subtrees": {
                str(u): sorted([list(e) for e in edges])
                for u, edges in sorted(self.subtrees.items())
            },
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> TreeRepresentation:
        try:
            raw_edges = [tuple(e) for e in d["host_edges"]]
            raw_subtrees = {int(u): [tuple(e) for e in edges]
                            for u, edges in d["subtrees"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed tree-representation JSON: {exc}") from exc
        nodes = {v for e in raw_edges for v in e}
        host = TernaryTree.make(nodes, raw_edges)
        return cls.make(host, raw_subtrees)


def subtree_nodes(edges: Subtree) -> frozenset:
    return frozenset(v for e in edges for v in e)


def _is_connected_edge_set(host: TernaryTree, edges: Subtree) -> bool:
    if not edges:
        return False
    nodes = subtree_nodes(edges)
    adj: dict[NodeId, list[NodeId]] = {v: [] for v in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


@dataclass(frozen=True)
class EdgeLoadProfile:
    """How many subtrees use each host edge."""

    load: tuple[tuple[tuple[NodeId, NodeId], int], ...]
    max_load: int

    @classmethod
    def compute(cls, host: TernaryTree, subtrees: dict[int, Subtree]) -> EdgeLoadProfile:
        counts = {e: 0 for e in host.edges}
        for edges in subtrees.values():
            for e in edges:
                counts[e] += 1
        return cls(tuple(counts.items()), max(counts.values(), default=0))

    def as_dict(self) -> dict[tuple[NodeId, NodeId], int]:
        return dict(self.load)


@dataclass(frozen=True)
class Violation:
    kind: str  # nontrivial | disconnected | adjacency | load
    subject: tuple
    detail: str

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "subject": list(self.subject), "detail": self.detail}


@dataclass(frozen=True)
class RepValidationReport:
    ok: bool
    violations: tuple[Violation, ...]
    profile: EdgeLoadProfile

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_json_dict() for v in self.violations],
            "max_load": self.profile.max_load,
            "edge_load": {f"{a}--{b}": c for (a, b), c in self.profile.load},
        }


def validate_tree_representation(
    g: Graph, tr: TreeRepresentation, k: int
) -> RepValidationReport:
    """Check a candidate width-k tree representation of g.

    Structural problems (host not a ternary tree, subtree edges outside
    the host, subtree keys not matching V(g)) raise; failures of the
    representation conditions (nontriviality, connectivity, adjacent
    subtrees intersecting, edge load at most k) come back as data.
    """
    tr.host._validate()
    if set(tr.subtrees) != set(g.vertices()):
        raise InvalidInputError("subtrees must be keyed by exactly the graph vertices")
    host_edges = set(tr.host.edges)
    for u, edges in tr.subtrees.items():
        if not edges <= host_edges:
            raise InvalidInputError(f"subtree of vertex {u} uses edges outside the host")

    violations: list[Violation] = []
    nodes_of: dict[int, frozenset] = {}
    for u in sorted(tr.subtrees):
        edges = tr.subtrees[u]
        if not edges:
            violations.append(Violation("nontrivial", (u,), f"subtree of {u} has no edge"))
            nodes_of[u] = frozenset()
            continue
        if not _is_connected_edge_set(tr.host, edges):
            violations.append(
                Violation("disconnected", (u,), f"subtree of {u} is not connected")
            )
        nodes_of[u] = subtree_nodes(edges)
    for u, v in g.edge_list():
        if not nodes_of[u] & nodes_of[v]:
            violations.append(
                Violation("adjacency", (u, v), f"subtrees of adjacent {u},{v} are disjoint")
            )
    profile = EdgeLoadProfile.compute(tr.host, tr.subtrees)
    for e, count in profile.load:
        if count > k:
            violations.append(
                Violation("load", e, f"host edge {e} carries {count} subtrees (> {k})")
            )
    return RepValidationReport(not violations, tuple(violations), profile)


def helly_intersection(host: TernaryTree, members: Sequence[Subtree]) -> NodeId | None:
    """A host node contained in every member subtree, or None.

    Root the host anywhere; each subtree has a unique shallowest node, and
    if a common node exists the deepest of these shallowest nodes is one.
    Guaranteed to find a node whenever the members pairwise intersect
    (Helly property of subtrees of a tree).
    """
    if not members:
        raise InvalidInputError("need at least one subtree")
    member_nodes = []
    for edges in members:
        edge_set = frozenset(canon_tree_edge(a, b) for a, b in edges)
        if not edge_set <= set(host.edges):
            raise InvalidInputError("member subtree uses edges outside the host")
        if not _is_connected_edge_set(host, edge_set):
            raise InvalidInputError("member subtree is empty or not connected")
        member_nodes.append(subtree_nodes(edge_set))

    root = host.nodes[0]
    depth: dict[NodeId, int] = {root: 0}
    adj = host.adjacency()
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in depth:
                depth[w] = depth[v] + 1
                stack.append(w)
    tops = [min(nodes, key=lambda v: (depth[v], _sort_key(v))) for nodes in member_nodes]
    candidate = max(tops, key=lambda v: depth[v])
    if all(candidate in nodes for nodes in member_nodes):
        return candidate
    return None


def _sort_key(v: NodeId):
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


def build_tree_representation(sg: SplitGraph, parts: CliqueTripartition) -> TreeRepresentation:
    """Construct the explicit width-k representation of a qualifying split graph.

    Host nodes: a beta leaf per graph vertex, an alpha node per vertex
    except the last clique vertex of each part, and the hub.  Per part j:
    a path of the alpha nodes of i_parts[j] followed by the first k-1
    clique alphas, joined to the hub at its first node; every vertex's
    beta hangs off its alpha, and the part's last clique vertex's beta
    hangs off the final path node.  Branches with no path node at all
    (k = 1 with an empty independent part) are rejected as unsupported;
    the exact solver covers those few vertices directly.

    The result is self-checked against the validator at k and must attain
    maximum edge load exactly k.
    """
    parts.check_against(sg)
    k = parts.k
    if 3 * k != len(sg.clique):
        raise InvalidInputError("the clique parts must cover a clique of size 3k")

    edges: list[tuple[str, str]] = []
    for j in range(3):
        ind = parts.i_parts[j]
        cli = parts.c_parts[j]
        path = [alpha(w) for w in ind] + [alpha(c) for c in cli[:-1]]
        if not path:
            raise UnsupportedCaseError(
                f"branch {j} has no path node (k=1 with no independent vertex); "
                "this degenerate case is outside the construction"
            )
        edges.append((HUB, path[0]))
        edges.extend(zip(path, path[1:]))
        for x in ind + cli[:-1]:
            edges.append((beta(x), alpha(x)))
        edges.append((beta(cli[-1]), path[-1]))

    nodes = {v for e in edges for v in e}
    host = TernaryTree.make(nodes, edges)

    subtrees: dict[int, frozenset] = {}
    for j in range(3):
        for w in parts.i_parts[j]:
            subtrees[w] = frozenset({canon_tree_edge(alpha(w), beta(w))})
        for c in parts.c_parts[j]:
            path_nodes = host.path(beta(c), HUB)
            subtrees[c] = frozenset(
                canon_tree_edge(a, b) for a, b in zip(path_nodes, path_nodes[1:])
            )
    rep = TreeRepresentation(host, subtrees)

    report = validate_tree_representation(sg.graph, rep, k)
    if not report.ok or report.profile.max_load != k:
        raise ContradictionError(
            f"construction failed its own validation (max load "
            f"{report.profile.max_load}, expected {k})"
        )
    return rep


def lower_bound_from_clique(sg: SplitGraph, tr: TreeRepresentation) -> int:
    """Pigeonhole lower bound ceil(|C|/3) on the max edge load of tr.

    The clique subtrees pairwise intersect, so they share a node; it has
    at most three incident host edges and each clique subtree uses one of
    them.  A valid representation therefore cannot beat this bound; a
    missing common node or a smaller observed max load is a contradiction.
    """
    clique = sg.clique
    if not clique:
        return 0
    members = [tr.subtrees[c] for c in clique]
    node = helly_intersection(tr.host, members)
    if node is None:
        raise ContradictionError(
            "clique subtrees have no common node; not a valid representation"
        )
    bound = ceil(len(clique) / 3)
    max_load = EdgeLoadProfile.compute(tr.host, tr.subtrees).max_load
    if max_load < bound:
        raise ContradictionError(
            f"max load {max_load} below the clique pigeonhole bound {bound}"
        )
    return bound

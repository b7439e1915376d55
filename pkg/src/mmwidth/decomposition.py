"""Branch decompositions, f-width evaluation, and exact width solvers.

A branch decomposition of a ground set X is a ternary tree whose leaves
biject onto X; every tree edge induces a bipartition of X.  The f-width of
the decomposition is the maximum cut value over tree edges; the f-width of
X minimizes that over all decompositions.  The exact solver runs a subset
DP in O(3^|X|) evaluations over a materialized cut table and reconstructs
a witness decomposition; the leaf-insertion enumerator provides the
independent exhaustive route used by the test suite.

Degenerate-input conventions (the definitions need |X| >= 2): graphs with
at most one vertex or no edges have mm-width 0; graphs with at most one
edge have branchwidth 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

from . import kernels
from .cuts import CutFunction, boundary_cut_function, mm_cut_function
from .errors import CapExceededError, ContradictionError, InvalidInputError
from .graphs import Graph

DEFAULT_MMW_CAP = 10
DEFAULT_BW_CAP = 9
DEFAULT_TW_CAP = 12

NodeId = Hashable


def _node_key(x) -> tuple:
    # deterministic order across mixed int/str node labels
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def canon_tree_edge(a: NodeId, b: NodeId) -> tuple[NodeId, NodeId]:
    return (a, b) if _node_key(a) <= _node_key(b) else (b, a)


@dataclass(frozen=True)
class TernaryTree:
    """A tree in which every node has degree 1 or 3."""

    nodes: tuple[NodeId, ...]
    edges: tuple[tuple[NodeId, NodeId], ...]

    @classmethod
    def make(cls, nodes: Iterable[NodeId], edges: Iterable[tuple[NodeId, NodeId]]) -> TernaryTree:
        node_tuple = tuple(sorted(set(nodes), key=_node_key))
        edge_tuple = tuple(sorted({canon_tree_edge(a, b) for a, b in edges},
                                  key=lambda e: (_node_key(e[0]), _node_key(e[1]))))
        tree = cls(node_tuple, edge_tuple)
        tree._validate()
        return tree

    def _validate(self) -> None:
        node_set = set(self.nodes)
        if len(self.nodes) < 2:
            raise InvalidInputError("a ternary tree needs at least two nodes")
        degree: dict[NodeId, int] = {v: 0 for v in self.nodes}
        for a, b in self.edges:
            if a == b or a not in node_set or b not in node_set:
                raise InvalidInputError(f"bad tree edge ({a!r}, {b!r})")
            degree[a] += 1
            degree[b] += 1
        if len(self.edges) != len(self.nodes) - 1:
            raise InvalidInputError("edge count does not match a tree")
        bad = [v for v, d in degree.items() if d not in (1, 3)]
        if bad:
            raise InvalidInputError(f"nodes with degree not in {{1,3}}: {bad!r}")
        if len(self._component(self.nodes[0])) != len(self.nodes):
            raise InvalidInputError("tree is not connected")

    def adjacency(self) -> dict[NodeId, list[NodeId]]:
        adj: dict[NodeId, list[NodeId]] = {v: [] for v in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def leaves(self) -> list[NodeId]:
        adj = self.adjacency()
        return [v for v in self.nodes if len(adj[v]) == 1]

    def _component(self, start: NodeId, banned_edge: tuple[NodeId, NodeId] | None = None) -> set:
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if banned_edge is not None and canon_tree_edge(v, w) == banned_edge:
                    continue
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def path(self, a: NodeId, b: NodeId) -> list[NodeId]:
        """The unique node path from a to b."""
        adj = self.adjacency()
        parent: dict[NodeId, NodeId] = {a: a}
        stack = [a]
        while stack:
            v = stack.pop()
            if v == b:
                break
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    stack.append(w)
        if b not in parent:
            raise InvalidInputError(f"no path between {a!r} and {b!r}")
        out = [b]
        while out[-1] != a:
            out.append(parent[out[-1]])
        out.reverse()
        return out


@dataclass(frozen=True)
class BranchDecomposition:
    """A ternary tree with a bijection from its leaves to a ground set."""

    tree: TernaryTree
    leaf_labels: tuple[tuple[NodeId, Hashable], ...]

    @classmethod
    def make(cls, tree: TernaryTree, leaf_map: Mapping) -> BranchDecomposition:
        leaves = tree.leaves()
        if set(leaf_map) != set(leaves):
            raise InvalidInputError("leaf map keys must be exactly the tree leaves")
        labels = list(leaf_map.values())
        if len(set(labels)) != len(labels):
            raise InvalidInputError("leaf map must be injective")
        pairs = tuple(sorted(leaf_map.items(), key=lambda kv: _node_key(kv[0])))
        return cls(tree, pairs)

    @property
    def leaf_map(self) -> dict:
        return dict(self.leaf_labels)

    def ground_elements(self) -> list:
        return [label for _, label in self.leaf_labels]

    def to_json_dict(self) -> dict:
        return {
            "tree_edges": [[a, b] for a, b in self.tree.edges],
            "leaf_map": {str(leaf): label for leaf, label in self.leaf_labels},
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> BranchDecomposition:
        try:
            raw_edges = [tuple(e) for e in d["tree_edges"]]
            raw_map = dict(d["leaf_map"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed decomposition JSON: {exc}") from exc
        nodes = {v for e in raw_edges for v in e}

        def parse_node(s):
            return int(s) if isinstance(s, str) and s.lstrip("-").isdigit() else s

        node_map = {str(v): v for v in nodes}
        tree = TernaryTree.make(nodes, raw_edges)
        leaf_map = {}
        for key, label in raw_map.items():
            node = node_map.get(key, parse_node(key))
            leaf_map[node] = tuple(label) if isinstance(label, list) else label
        return cls.make(tree, leaf_map)


@dataclass(frozen=True)
class WidthResult:
    width: int
    witness: BranchDecomposition | None
    critical_edge: tuple[NodeId, NodeId] | None

    def to_json_dict(self) -> dict:
        return {
            "width": self.width,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
            "critical_edge": None if self.critical_edge is None else list(self.critical_edge),
        }


def induced_partition(
    bd: BranchDecomposition, e: tuple[NodeId, NodeId]
) -> tuple[frozenset, frozenset]:
    """The two leaf-label sets obtained by removing tree edge e.

    The first set is the side containing e's canonically-first endpoint.
    """
    edge = canon_tree_edge(*e)
    if edge not in bd.tree.edges:
        raise InvalidInputError(f"{e!r} is not an edge of the decomposition tree")
    side = bd.tree._component(edge[0], banned_edge=edge)
    leaf_map = bd.leaf_map
    first = frozenset(leaf_map[v] for v in side if v in leaf_map)
    second = frozenset(label for leaf, label in bd.leaf_labels if leaf not in side)
    return first, second


def f_width_of(bd: BranchDecomposition, cf: CutFunction) -> WidthResult:
    """Maximum cut value over the tree edges of a branch decomposition.

    The critical edge is the first maximizing edge in canonical edge
    order; the witness is the decomposition itself.
    """
    labels = bd.ground_elements()
    if len(labels) != cf.ground_set_size:
        raise InvalidInputError(
            f"decomposition has {len(labels)} leaves but the cut function "
            f"ground set has {cf.ground_set_size}"
        )
    ground = cf.ground if cf.ground is not None else tuple(range(cf.ground_set_size))
    if set(labels) != set(ground):
        raise InvalidInputError("leaf labels do not match the cut-function ground set")
    index = {e: i for i, e in enumerate(ground)}
    # leaf-side masks per edge via one traversal from an arbitrary root leaf
    best_width = -1
    best_edge = None
    for edge in bd.tree.edges:
        side, _ = induced_partition(bd, edge)
        mask = 0
        for label in side:
            mask |= 1 << index[label]
        value = cf.evaluate(mask)
        if value > best_width:
            best_width = value
            best_edge = edge
    return WidthResult(best_width, bd, best_edge)


def enumerate_decompositions(
    x_size: int, *, cap: int = DEFAULT_MMW_CAP, ground: tuple | None = None
) -> Iterator[BranchDecomposition]:
    """Yield every branch decomposition shape of an x_size ground set once.

    Iterated leaf insertion: the tree on leaves 0..j arises uniquely by
    inserting leaf j into one of the 2j-3 edges of a tree on 0..j-1, so
    the stream has (2n-5)!! entries for n >= 3 and exactly one for n = 2.
    Leaves are nodes 0..x_size-1 labeled by ``ground`` (defaults to the
    leaf indices); internal nodes are numbered from x_size upward.
    """
    if x_size < 2:
        raise InvalidInputError("branch decompositions need a ground set of size >= 2")
    if x_size > cap:
        raise CapExceededError(f"decomposition enumeration capped at {cap}, got {x_size}")
    if ground is None:
        ground = tuple(range(x_size))
    if len(ground) != x_size:
        raise InvalidInputError("ground tuple length must equal x_size")
    leaf_map = {i: ground[i] for i in range(x_size)}

    def emit(edges: list[tuple[int, int]]) -> BranchDecomposition:
        nodes = {v for e in edges for v in e}
        return BranchDecomposition.make(TernaryTree.make(nodes, edges), leaf_map)

    def grow(edges: list[tuple[int, int]], next_leaf: int, next_internal: int):
        if next_leaf == x_size:
            yield emit(edges)
            return
        for i in range(len(edges)):
            a, b = edges[i]
            c = next_internal
            new_edges = edges[:i] + edges[i + 1 :] + [(a, c), (c, b), (c, next_leaf)]
            yield from grow(new_edges, next_leaf + 1, next_internal + 1)

    yield from grow([(0, 1)], 2, x_size)


def _witness_from_splits(
    x: int, best: list[int], ground: tuple
) -> BranchDecomposition:
    """Rebuild the optimal decomposition tree recorded by the DP."""
    full = (1 << x) - 1
    edges: list[tuple[int, int]] = []
    counter = [x]  # internal node ids start after the leaf ids

    def build(mask: int) -> int:
        if mask & (mask - 1) == 0:
            return mask.bit_length() - 1
        sub = best[mask]
        left = build(sub)
        right = build(mask ^ sub)
        node = counter[0]
        counter[0] += 1
        edges.append((node, left))
        edges.append((node, right))
        return node

    if x == 2:
        edges.append((0, 1))
    else:
        top = best[full]
        left = build(top)
        right = build(full ^ top)
        edges.append((left, right))
    nodes = {v for e in edges for v in e}
    leaf_map = {i: ground[i] for i in range(x)}
    return BranchDecomposition.make(TernaryTree.make(nodes, edges), leaf_map)


def exact_f_width(cf: CutFunction, *, cap: int = DEFAULT_MMW_CAP) -> WidthResult:
    """Minimum f-width over all branch decompositions of the ground set.

    Subset DP over the materialized cut table; the reconstructed witness
    is re-evaluated by :func:`f_width_of` as an internal cross-check.
    """
    x = cf.ground_set_size
    if x < 2:
        raise InvalidInputError("f-width needs a ground set of size >= 2")
    if x > cap:
        raise CapExceededError(f"exact f-width capped at ground sets of {cap}, got {x}")
    if x > kernels.GROUND_SET_LIMIT:
        raise CapExceededError(
            f"ground sets beyond {kernels.GROUND_SET_LIMIT} elements are not supported"
        )
    table = cf.materialize_table()
    width, best = kernels.fwidth_dp(x, list(table))
    ground = cf.ground if cf.ground is not None else tuple(range(x))
    witness = _witness_from_splits(x, best, ground)
    result = f_width_of(witness, cf)
    if result.width != width:
        raise ContradictionError(
            f"witness width {result.width} disagrees with DP width {width}"
        )
    return result


def mmw_exact(g: Graph, *, cap: int = DEFAULT_MMW_CAP) -> WidthResult:
    """Exact maximum matching width of g.

    Graphs with at most one vertex have width 0 by convention (there is no
    nontrivial decomposition); edgeless graphs come out 0 from the solver.
    """
    if g.n <= 1:
        return WidthResult(0, None, None)
    if g.n > cap:
        raise CapExceededError(f"mm-width solver capped at n={cap}, got n={g.n}")
    return exact_f_width(mm_cut_function(g), cap=cap)


def branchwidth_exact(g: Graph, *, cap: int = DEFAULT_BW_CAP) -> int:
    """Exact branchwidth of g (ground set = edges, boundary cut).

    Graphs with at most one edge have branchwidth 0 by convention.
    """
    m = g.edge_count
    if m <= 1:
        return 0
    if m > cap:
        raise CapExceededError(f"branchwidth solver capped at m={cap} edges, got m={m}")
    return exact_f_width(boundary_cut_function(g), cap=cap).width


def treewidth_exact(g: Graph, *, cap: int = DEFAULT_TW_CAP) -> int:
    """Exact treewidth via DP over eliminated vertex subsets.

    The cost of eliminating v after the set S is v's degree in the
    fill-in graph of S: the number of vertices outside S u {v} reachable
    from v through S.  The n = 0 convention is 0.
    """
    n = g.n
    if n > cap:
        raise CapExceededError(f"treewidth solver capped at n={cap}, got n={n}")
    if n == 0:
        return 0
    adj = g.adjacency_masks
    size = 1 << n
    best = [0] * size
    for s in range(1, size):
        b = -1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            w = best[prev]
            d = _elimination_degree(adj, v, prev)
            if d > w:
                w = d
            if b < 0 or w < b:
                b = w
        best[s] = b
    return best[size - 1]


def _elimination_degree(adj: tuple[int, ...], v: int, eliminated: int) -> int:
    # count vertices outside eliminated|{v} reachable from v through eliminated
    seen = 1 << v
    frontier = adj[v]
    external = 0
    while True:
        new = frontier & ~seen
        if not new:
            break
        seen |= new
        external |= new & ~eliminated
        expand = new & eliminated
        nxt = 0
        while expand:
            low = expand & -expand
            expand ^= low
            nxt |= adj[low.bit_length() - 1]
        frontier = nxt
    return bin(external).count("1")


@dataclass(frozen=True)
class ChainReport:
    """The three widths of a graph and the two-sided inequality checks."""

    mmw: int
    bw: int
    tw: int

    @property
    def holds(self) -> bool:
        lo = max(self.bw, 1)
        return self.mmw <= lo <= self.tw + 1 <= 3 * self.mmw

    def to_json_dict(self) -> dict:
        return {"mmw": self.mmw, "bw": self.bw, "tw": self.tw, "chain_ok": self.holds}


def check_inequality_chain(
    g: Graph,
    *,
    mmw_cap: int = DEFAULT_MMW_CAP,
    bw_cap: int = DEFAULT_BW_CAP,
    tw_cap: int = DEFAULT_TW_CAP,
) -> ChainReport:
    """Compute mmw, bw, tw and check mmw <= max(bw,1) <= tw+1 <= 3*mmw.

    Requires a connected graph with at least one edge, where all three
    parameters are standard.
    """
    if g.edge_count < 1 or not g.is_connected():
        raise InvalidInputError("the inequality chain needs a connected graph with an edge")
    return ChainReport(
        mmw=mmw_exact(g, cap=mmw_cap).width,
        bw=branchwidth_exact(g, cap=bw_cap),
        tw=treewidth_exact(g, cap=tw_cap),
    )

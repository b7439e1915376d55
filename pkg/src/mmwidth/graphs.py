"""Immutable graphs, split graphs, small-graph generators, and JSON I/O.

Vertices are dense integers 0..n-1; edges are canonical (u, v) pairs with
u < v.  Graph values are immutable and hashable, so they can be shared
across concurrent workers and used as memo keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    CapExceededError,
    CliqueViolationError,
    IndependenceViolationError,
    InvalidInputError,
    NotAPartitionError,
)

GRAPH_ENUM_CAP = 7


def canon_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertex set 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInputError("vertex count must be nonnegative")
        masks = [0] * self.n
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if not 0 <= u < v < self.n:
                raise InvalidInputError(f"edge ({u},{v}) out of range for n={self.n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "_adj_masks", tuple(masks))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, frozenset(canon_edge(u, v) for u, v in pairs))

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks."""
        return self._adj_masks  # type: ignore[attr-defined]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges in canonical lexicographic order."""
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return canon_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return bin(self._adj_masks[v]).count("1")  # type: ignore[attr-defined]

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return frozenset(_bits(self._adj_masks[v]))  # type: ignore[attr-defined]

    def with_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise InvalidInputError("cannot add a self-loop")
        return Graph(self.n, self.edges | {canon_edge(u, v)})

    def relabeled(self, perm: Iterable[int]) -> Graph:
        """Graph with vertex i renamed to perm[i]; perm must be a permutation."""
        p = list(perm)
        if sorted(p) != list(range(self.n)):
            raise InvalidInputError("relabeling is not a permutation of 0..n-1")
        return Graph.from_edges(self.n, ((p[u], p[v]) for u, v in self.edges))

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = self._adj_masks  # type: ignore[attr-defined]
        seen = 1
        frontier = adj[0]
        while frontier & ~seen:
            seen |= frontier
            nxt = 0
            for u in _bits(frontier):
                nxt |= adj[u]
            frontier = nxt & ~seen
        return seen == (1 << self.n) - 1

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidInputError(f"vertex {v} out of range for n={self.n}")

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edge_list()]}

    @classmethod
    def from_json_dict(cls, d: dict) -> Graph:
        try:
            n = int(d["n"])
            pairs = [(int(u), int(v)) for u, v in d["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed graph JSON: {exc}") from exc
        return cls.from_edges(n, pairs)


@dataclass(frozen=True)
class SplitGraph:
    """A graph together with a certified clique/independent-set partition."""

    graph: Graph
    clique: tuple[int, ...]
    independent: tuple[int, ...]

    def to_json_dict(self) -> dict:
        d = self.graph.to_json_dict()
        d["clique"] = list(self.clique)
        d["independent"] = list(self.independent)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> SplitGraph:
        g = Graph.from_json_dict(d)
        try:
            clique = [int(v) for v in d["clique"]]
            independent = [int(v) for v in d["independent"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed split-graph JSON: {exc}") from exc
        return validate_split(g, clique, independent)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices adjacent to at least one member of ``s``.

    Members of ``s`` themselves appear exactly when they have a neighbor
    inside ``s``.
    """
    mask = 0
    for v in s:
        g._check_vertex(v)
        mask |= 1 << v
    out = 0
    adj = g.adjacency_masks
    for v in _bits(mask):
        out |= adj[v]
    return frozenset(_bits(out))


def complete_graph(n: int) -> Graph:
    if n < 0:
        raise InvalidInputError("vertex count must be nonnegative")
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def all_vertex_pairs(n: int) -> list[tuple[int, int]]:
    """All canonical edges on n vertices in lexicographic order.

    This order defines the edge-bitmask numbering used by
    :func:`enumerate_small_graphs`.
    """
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def enumerate_small_graphs(n: int, *, cap: int = GRAPH_ENUM_CAP) -> Iterator[Graph]:
    """Yield all 2^(n choose 2) labeled graphs on n vertices.

    Ordered by edge bitmask over :func:`all_vertex_pairs`.
    """
    if n < 0:
        raise InvalidInputError("vertex count must be nonnegative")
    if n > cap:
        raise CapExceededError(f"graph enumeration capped at n={cap}, got n={n}")
    pairs = all_vertex_pairs(n)
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in _bits(mask)))


def validate_split(g: Graph, clique: Iterable[int], independent: Iterable[int]) -> SplitGraph:
    """Certify a (clique, independent set) partition of g's vertices.

    Raises the structured error for the first violation found: a broken
    partition, a non-adjacent clique pair, or an adjacent independent pair.
    """
    c = list(clique)
    i = list(independent)
    for v in c + i:
        g._check_vertex(v)
    if sorted(c + i) != list(range(g.n)):
        raise NotAPartitionError(
            "clique and independent lists do not partition the vertex set"
        )
    c_sorted = sorted(c)
    for a_idx, u in enumerate(c_sorted):
        for v in c_sorted[a_idx + 1 :]:
            if not g.has_edge(u, v):
                raise CliqueViolationError(u, v)
    i_sorted = sorted(i)
    for a_idx, u in enumerate(i_sorted):
        for v in i_sorted[a_idx + 1 :]:
            if g.has_edge(u, v):
                raise IndependenceViolationError(u, v)
    return SplitGraph(g, tuple(c_sorted), tuple(i_sorted))

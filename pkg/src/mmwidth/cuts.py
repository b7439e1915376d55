"""Symmetric cut functions on bipartitions of a ground set.

The central one is the maximum-matching cut: mm(A) is the size of a
maximum matching between A and its complement, using crossing edges only.
The boundary cut over edge subsets backs the branchwidth solver.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import kernels
from .errors import CapExceededError, InvalidInputError
from .graphs import Graph, canon_edge

# Exhaustive submodularity checks cover all 4^x (A, B) pairs; beyond this
# ground-set size the auto mode switches to seeded random pairs.
EXHAUSTIVE_PAIRS_LIMIT = 10


@dataclass(frozen=True)
class CutFunction:
    """A symmetric set function evaluated on subsets of a ground set.

    Subsets are bitmasks over ``ground`` (element i <-> bit i); when
    ``ground`` is None the elements are the integers 0..size-1.
    """

    ground_set_size: int
    evaluate: Callable[[int], int]
    ground: tuple | None = None
    name: str = "f"
    table: tuple[int, ...] | None = field(default=None, repr=False)

    @classmethod
    def from_table(
        cls, table: Iterable[int], *, ground: tuple | None = None, name: str = "f"
    ) -> CutFunction:
        t = tuple(table)
        size = len(t).bit_length() - 1
        if 1 << size != len(t):
            raise InvalidInputError("cut table length must be a power of two")
        return cls(size, t.__getitem__, ground=ground, name=name, table=t)

    def value(self, mask: int) -> int:
        if not 0 <= mask < (1 << self.ground_set_size):
            raise InvalidInputError(f"subset mask {mask} out of range")
        return self.evaluate(mask)

    def mask_of(self, elements: Iterable) -> int:
        """Bitmask of a collection of ground elements."""
        if self.ground is None:
            index = {i: i for i in range(self.ground_set_size)}
        else:
            index = {e: i for i, e in enumerate(self.ground)}
        mask = 0
        for e in elements:
            if e not in index:
                raise InvalidInputError(f"{e!r} is not a ground-set element")
            mask |= 1 << index[e]
        return mask

    def value_of(self, elements: Iterable) -> int:
        return self.value(self.mask_of(elements))

    def materialize_table(self) -> tuple[int, ...]:
        if self.table is not None:
            return self.table
        if self.ground_set_size > kernels.GROUND_SET_LIMIT:
            raise CapExceededError(
                f"cannot materialize a cut table over {self.ground_set_size} elements"
            )
        return tuple(self.evaluate(m) for m in range(1 << self.ground_set_size))


def _vertex_mask(g: Graph, vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        g._check_vertex(v)
        mask |= 1 << v
    return mask


def mm_cut(g: Graph, a: Iterable[int]) -> int:
    """Size of a maximum matching between ``a`` and its complement in g."""
    mask = _vertex_mask(g, a)
    full = (1 << g.n) - 1
    return kernels.max_matching_crossing(list(g.adjacency_masks), mask, full ^ mask)


def mm_cut_function(g: Graph) -> CutFunction:
    """The mm cut function of g, table-backed for fast repeated evaluation.

    For ground sets beyond the table limit, falls back to a lazy memo
    keyed by the canonical side (min of mask and complement), halving the
    table via symmetry.
    """
    n = g.n
    adj = list(g.adjacency_masks)
    if n <= kernels.GROUND_SET_LIMIT:
        table = kernels.mm_cut_table(n, adj)
        return CutFunction.from_table(table, ground=tuple(range(n)), name="mm")
    full = (1 << n) - 1
    memo: dict[int, int] = {}

    def evaluate(mask: int) -> int:
        key = min(mask, full ^ mask)
        v = memo.get(key)
        if v is None:
            v = kernels.max_matching_crossing(adj, key, full ^ key)
            memo[key] = v
        return v

    return CutFunction(n, evaluate, ground=tuple(range(n)), name="mm")


def _incidence_masks(g: Graph, ground: tuple[tuple[int, int], ...]) -> list[int]:
    inc = [0] * g.n
    for i, (u, v) in enumerate(ground):
        inc[u] |= 1 << i
        inc[v] |= 1 << i
    return inc


def boundary_cut(g: Graph, f: Iterable[tuple[int, int]]) -> int:
    """Number of vertices incident with an edge in f and an edge outside f."""
    ground = tuple(g.edge_list())
    index = {e: i for i, e in enumerate(ground)}
    mask = 0
    for u, v in f:
        e = canon_edge(u, v)
        if e not in index:
            raise InvalidInputError(f"({u},{v}) is not an edge of the graph")
        mask |= 1 << index[e]
    full = (1 << len(ground)) - 1
    return kernels.boundary_value(_incidence_masks(g, ground), mask, full ^ mask)


def boundary_cut_function(g: Graph) -> CutFunction:
    """The boundary cut function over g's edge set (canonical edge order)."""
    ground = tuple(g.edge_list())
    m = len(ground)
    if m > kernels.GROUND_SET_LIMIT:
        raise CapExceededError(f"boundary cut table capped at {kernels.GROUND_SET_LIMIT} edges")
    table = kernels.boundary_cut_table(m, _incidence_masks(g, ground))
    return CutFunction.from_table(table, ground=ground, name="boundary")


@dataclass(frozen=True)
class SymmetrySubmodularityReport:
    passed: bool
    mode: str
    subsets_checked: int
    pairs_checked: int
    counterexample: dict | None = None

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "subsets_checked": self.subsets_checked,
            "pairs_checked": self.pairs_checked,
            "counterexample": self.counterexample,
        }


def check_symmetric_submodular(
    cf: CutFunction, trials: int | None = None, seed: int = 0
) -> SymmetrySubmodularityReport:
    """Verify f(A) = f(X\\A) and f(A)+f(B) >= f(A|B)+f(A&B).

    ``trials=None`` auto-selects: exhaustive over all (A, B) pairs for
    ground sets up to ``EXHAUSTIVE_PAIRS_LIMIT``, else 10000 seeded random
    pairs.  ``trials=0`` forces exhaustive mode (allowed up to 20
    elements); ``trials>0`` tests that many seeded random pairs.
    Symmetry is always checked on every subset while the ground set fits
    the table limit.  Counterexamples are data, not errors.
    """
    x = cf.ground_set_size
    size = 1 << x
    full = size - 1
    if trials is None:
        trials = 0 if x <= EXHAUSTIVE_PAIRS_LIMIT else 10000
    exhaustive_pairs = trials == 0
    if exhaustive_pairs and x > kernels.GROUND_SET_LIMIT:
        raise InvalidInputError(
            f"exhaustive mode is limited to ground sets of {kernels.GROUND_SET_LIMIT}"
        )

    subsets_checked = 0
    if x <= kernels.GROUND_SET_LIMIT:
        for a in range(size):
            subsets_checked += 1
            va, vc = cf.evaluate(a), cf.evaluate(full ^ a)
            if va != vc:
                return SymmetrySubmodularityReport(
                    False,
                    "exhaustive" if exhaustive_pairs else "randomized",
                    subsets_checked,
                    0,
                    {"kind": "symmetry", "a_mask": a, "f_a": va, "f_complement": vc},
                )

    def submodular_violation(a: int, b: int) -> dict | None:
        lhs = cf.evaluate(a) + cf.evaluate(b)
        rhs = cf.evaluate(a | b) + cf.evaluate(a & b)
        if lhs < rhs:
            return {"kind": "submodularity", "a_mask": a, "b_mask": b, "lhs": lhs, "rhs": rhs}
        return None

    pairs_checked = 0
    if exhaustive_pairs:
        for a in range(size):
            for b in range(a, size):
                pairs_checked += 1
                bad = submodular_violation(a, b)
                if bad is not None:
                    return SymmetrySubmodularityReport(
                        False, "exhaustive", subsets_checked, pairs_checked, bad
                    )
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            pairs_checked += 1
            bad = submodular_violation(rng.randrange(size), rng.randrange(size))
            if bad is not None:
                return SymmetrySubmodularityReport(
                    False, "randomized", subsets_checked, pairs_checked, bad
                )
        mode = "randomized"
    return SymmetrySubmodularityReport(True, mode, subsets_checked, pairs_checked, None)

"""Pure-Python kernels: bitmask matching, cut tables, and the f-width DP.

These are the fallback twins of the compiled routines in ``_speedups``.
Both backends must return identical values (including tie-breaking in the
DP split choice) on identical inputs; the parity tests enforce this.

Subsets of a ground set are plain int bitmasks; cut tables are lists
indexed by bitmask.  Ground sets are limited to 20 elements by the
callers, so masks always fit in 64 bits.
"""

from __future__ import annotations

from typing import Sequence


def max_matching_crossing(adj_masks: Sequence[int], a_mask: int, b_mask: int) -> int:
    """Maximum matching size between disjoint vertex sets a and b.

    Only edges with one endpoint in a and the other in b participate.
    Augmenting-path (Kuhn) search from each left vertex.
    """
    if bin(a_mask).count("1") > bin(b_mask).count("1"):
        a_mask, b_mask = b_mask, a_mask
    match_r = [-1] * len(adj_masks)
    size = 0
    left = a_mask
    while left:
        low = left & -left
        left ^= low
        u = low.bit_length() - 1
        visited = [0]
        if _kuhn_augment(adj_masks, u, b_mask, match_r, visited):
            size += 1
    return size


def _kuhn_augment(adj, u, b_mask, match_r, visited):
    cand = adj[u] & b_mask & ~visited[0]
    while cand:
        low = cand & -cand
        cand ^= low
        v = low.bit_length() - 1
        visited[0] |= low
        w = match_r[v]
        if w < 0 or _kuhn_augment(adj, w, b_mask, match_r, visited):
            match_r[v] = u
            return True
        cand &= ~visited[0]
    return False


def mm_cut_table(n: int, adj_masks: Sequence[int]) -> list[int]:
    """Maximum-matching cut value for every vertex subset, by bitmask.

    Exploits symmetry: each value is computed once for the smaller of
    (mask, complement).
    """
    full = (1 << n) - 1
    table = [0] * (1 << n)
    for mask in range(1, full):
        comp = full ^ mask
        if comp < mask:
            table[mask] = table[comp]
        else:
            table[mask] = max_matching_crossing(adj_masks, mask, comp)
    return table


def boundary_value(incidence_masks: Sequence[int], f_mask: int, rest_mask: int) -> int:
    """Number of vertices incident with an edge in f and an edge in rest.

    ``incidence_masks[v]`` is the bitmask of ground-set edge indices
    incident to vertex v.
    """
    count = 0
    for inc in incidence_masks:
        if inc & f_mask and inc & rest_mask:
            count += 1
    return count


def boundary_cut_table(m: int, incidence_masks: Sequence[int]) -> list[int]:
    """Boundary cut value for every edge subset of an m-edge ground set."""
    full = (1 << m) - 1
    table = [0] * (1 << m)
    for mask in range(1, full):
        comp = full ^ mask
        if comp < mask:
            table[mask] = table[comp]
        else:
            table[mask] = boundary_value(incidence_masks, mask, comp)
    return table


def fwidth_dp(x: int, table: Sequence[int]) -> tuple[int, list[int]]:
    """Minimum f-width over all branch decompositions of an x-element set.

    ``table[mask]`` is the symmetric cut value of the subset ``mask``.
    Rooted formulation: cost(A) is the best width of a rooted binary tree
    over A counting f(A) at its root edge; an unrooted decomposition is a
    top split into two rooted halves.  Subsets are processed in ascending
    bitmask order (every proper subset precedes its superset); split
    candidates are scanned in descending submask order keeping the first
    strict improvement, which fixes the witness deterministically.

    Returns (width, best) where best[mask] is the chosen child submask
    (best[full] is the top-level split); x must be >= 2.
    """
    size = 1 << x
    full = size - 1
    cost = [0] * size
    best = [0] * size
    for i in range(x):
        cost[1 << i] = table[1 << i]
    for mask in range(3, full):
        if mask & (mask - 1) == 0:
            continue
        best_w = -1
        best_sub = 0
        sub = (mask - 1) & mask
        while sub:
            comp = mask ^ sub
            if sub < comp:
                w = cost[sub]
                c = cost[comp]
                if c > w:
                    w = c
                if best_w < 0 or w < best_w:
                    best_w = w
                    best_sub = sub
            sub = (sub - 1) & mask
        f = table[mask]
        cost[mask] = best_w if best_w > f else f
        best[mask] = best_sub
    top_w = -1
    top_sub = 0
    sub = full - 1
    while sub:
        comp = full ^ sub
        if sub < comp:
            w = cost[sub]
            c = cost[comp]
            if c > w:
                w = c
            if top_w < 0 or w < top_w:
                top_w = w
                top_sub = sub
        sub = (sub - 1) & full
    best[full] = top_sub
    return top_w, best

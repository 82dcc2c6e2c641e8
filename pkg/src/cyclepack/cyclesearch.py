"""Exact simple-cycle search inside small vertex subsets, on raw adjacency bitmasks.

Enumeration is anchored at each cycle's minimum vertex and canonicalized by
direction (second vertex below last), so every simple cycle in the window is
produced exactly once. Intended for desk-scale sets (up to ~24 vertices).
"""
from __future__ import annotations

from typing import Iterator

from .graphs import bits


def iter_cycles_window(
    adj: tuple[int, ...], mask: int, lo: int, hi: int
) -> Iterator[tuple[int, ...]]:
    """Yield each simple cycle within ``mask`` whose length is in [lo, hi] once."""
    lo = max(lo, 4)  # simple bipartite cycles have length >= 4
    if hi < lo:
        return
    for a in bits(mask):
        abit = 1 << a
        higher = mask & ~((abit << 1) - 1)
        if higher.bit_count() + 1 < lo:
            break  # later anchors have even fewer vertices available
        yield from _extend(adj, abit, higher, lo, hi, a, 0, [a])


def _extend(
    adj: tuple[int, ...],
    abit: int,
    higher: int,
    lo: int,
    hi: int,
    v: int,
    visited: int,
    path: list[int],
) -> Iterator[tuple[int, ...]]:
    if len(path) >= lo and adj[v] & abit and path[1] < v:
        yield tuple(path)
    if len(path) == hi:
        return
    if len(path) + (higher & ~visited).bit_count() < lo:
        return
    for w in bits(adj[v] & higher & ~visited):
        path.append(w)
        yield from _extend(adj, abit, higher, lo, hi, w, visited | 1 << w, path)
        path.pop()


def find_cycle_at_least(adj: tuple[int, ...], mask: int, lo: int) -> tuple[int, ...] | None:
    """First simple cycle of length >= lo within mask, or None (search is exhaustive)."""
    return next(iter_cycles_window(adj, mask, lo, mask.bit_count()), None)


def hamilton_cycle_on(adj: tuple[int, ...], mask: int) -> tuple[int, ...] | None:
    """A cycle spanning exactly the vertices of mask, or None."""
    size = mask.bit_count()
    if size < 4 or size % 2:
        return None
    return next(iter_cycles_window(adj, mask, size, size), None)


def best_cycle_of_length(
    adj: tuple[int, ...], mask: int, length: int
) -> tuple[int, ...] | None:
    """Among length-``length`` cycles in mask, the one whose vertex set spans the
    most induced edges (first found on ties)."""
    best = None
    best_beta = -1
    for cyc in iter_cycles_window(adj, mask, length, length):
        b = induced_edge_count(adj, mask_of_cycle(cyc))
        if b > best_beta:
            best, best_beta = cyc, b
    return best


def shortest_cycle_in_window(
    adj: tuple[int, ...], mask: int, lo: int, hi_exclusive: int
) -> tuple[int, ...] | None:
    """Shortest cycle with length in [lo, hi_exclusive), beta-maximal at that length."""
    for length in range(max(lo, 4), hi_exclusive, 2):
        cyc = best_cycle_of_length(adj, mask, length)
        if cyc is not None:
            return cyc
    return None


def two_core(adj: tuple[int, ...], mask: int) -> int:
    """Iteratively strip vertices with fewer than two neighbors inside mask."""
    changed = True
    while changed:
        changed = False
        for v in bits(mask):
            if (adj[v] & mask).bit_count() < 2:
                mask &= ~(1 << v)
                changed = True
    return mask


def induced_edge_count(adj: tuple[int, ...], mask: int) -> int:
    return sum((adj[v] & mask).bit_count() for v in bits(mask)) // 2


def mask_of_cycle(cycle: tuple[int, ...]) -> int:
    m = 0
    for v in cycle:
        m |= 1 << v
    return m

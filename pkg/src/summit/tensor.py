"""Flat m-dimensional engine: best-first expansion over the implicit sum tensor.

The tensor of sums is never materialized. A max-heap holds the frontier of
candidate position tuples; popping a tuple pushes its in-bounds, not yet seen
successors, at most one per dimension. A cell is reachable from up to m
predecessors, so an explicit visited set keyed on the position tuple keeps
each cell from entering the frontier twice.
"""

from __future__ import annotations

from .core import (
    NUMBER_BYTES,
    IndexedValue,
    InstrumentationCounters,
    MaxIndexHeap,
    TopKResult,
    as_float_vectors,
    capacity,
    normalize_k,
    sort_descending,
)


def tensor_top_k(vectors, k: int) -> TopKResult:
    """Top k values of X1 + X2 + ... + Xm with their original index tuples.

    Accepts unsorted vectors (each axis is sorted non-increasing internally)
    and clamps k to the number of cells. Returned values are non-increasing;
    index tuples refer to positions in the vectors as given.
    """
    axes = as_float_vectors(vectors)
    want = normalize_k(k, capacity(len(a) for a in axes))
    counters = InstrumentationCounters()
    if want == 0:
        return TopKResult([], counters)

    m = len(axes)
    sorted_axes = []
    perms = []
    for arr in axes:
        values, perm = sort_descending(arr)
        sorted_axes.append(values)
        perms.append(perm)
    lengths = [len(a) for a in sorted_axes]

    fringe = MaxIndexHeap(counters, entry_bytes=(1 + m) * NUMBER_BYTES)
    origin = (0,) * m
    fringe.push(sum(axis[0] for axis in sorted_axes), origin)
    visited = {origin}

    dims = range(m)
    items: list[IndexedValue] = []
    while len(items) < want:
        value, pos = fringe.pop_max()
        items.append(IndexedValue(value, tuple(perms[d][pos[d]] for d in dims)))
        for d in dims:
            nxt = pos[d] + 1
            if nxt == lengths[d]:
                continue
            succ = pos[:d] + (nxt,) + pos[d + 1 :]
            if succ in visited:
                continue
            visited.add(succ)
            # Keys are summed fresh per cell (not updated incrementally), so a
            # reported value is bit-identical to re-adding its entries.
            fringe.push(sum(axis[p] for axis, p in zip(sorted_axes, succ)), succ)
    return TopKResult(items, counters)

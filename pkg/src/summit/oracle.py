"""Brute-force reference engine: materialize every sum, sort, truncate.

Deliberately unoptimized; its value is its obviousness. Every property test
in the suite treats this module as ground truth.
"""

from __future__ import annotations

import numpy as np

from .core import (
    NUMBER_BYTES,
    IndexedValue,
    InputError,
    InstrumentationCounters,
    TopKResult,
    as_float_vectors,
    capacity,
    normalize_k,
)

# The oracle is for desk-scale instances only.
ORACLE_CELL_CAP = 2_000_000


def brute_force_top_k(vectors, k: int, cap: int = ORACLE_CELL_CAP) -> TopKResult:
    """Exact top-k of the Cartesian sum by full enumeration.

    Ties are ordered deterministically: value descending, then lexicographic
    index tuple, so oracle runs are reproducible. Counters report the
    materialized grid as peak occupancy (the oracle holds every cell live at
    once); no heaps are involved, so push/pop counts stay zero.
    """
    axes = as_float_vectors(vectors)
    cells = capacity(len(a) for a in axes)
    if cells > cap:
        raise InputError(
            f"instance too large for oracle: {cells} cells exceed cap {cap}"
        )
    want = normalize_k(k, cells)
    counters = InstrumentationCounters()
    if want == 0:
        return TopKResult([], counters)

    grid = axes[0]
    for arr in axes[1:]:
        grid = np.add.outer(grid, arr)
    flat = grid.reshape(-1)
    if not np.isfinite(flat).all():
        raise InputError("Cartesian sum overflowed the float range")

    # argsort of the negated grid is stable, so equal values keep C order,
    # i.e. lexicographic index tuples.
    order = np.argsort(-flat, kind="stable")[:want]
    shape = grid.shape
    items = [
        IndexedValue(
            float(flat[ix]),
            tuple(int(c) for c in np.unravel_index(int(ix), shape)),
        )
        for ix in order
    ]
    counters.peak_fringe_entries = cells
    counters.peak_entry_bytes_estimate = cells * (1 + len(axes)) * NUMBER_BYTES
    return TopKResult(items, counters)

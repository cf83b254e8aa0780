"""Deterministic enumeration of edge-subset actions.

Subsets are listed in lexicographic order of their sorted edge lists, so the
empty action always comes first and tie handling downstream is reproducible.
The bitmask helpers back the simultaneous-move solver.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .graphs import Edge, WeightMatrix, disagreement, normalize_edge

DEFAULT_ENUMERATION_CAP = 16


class EnumerationCapExceeded(ValueError):
    """Raised when an action pool is too large for exhaustive search."""


def feasible_actions(
    pool: Iterable[Edge],
    max_edges: int,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[frozenset[Edge]]:
    """All subsets of `pool` with at most `max_edges` edges, in lex order."""
    edges = sorted({normalize_edge(i, j) for i, j in pool})
    if len(edges) > enumeration_cap:
        raise EnumerationCapExceeded(
            f"pool of {len(edges)} edges exceeds enumeration cap {enumeration_cap}"
        )
    if max_edges < 0:
        raise ValueError("max_edges must be nonnegative")
    out: list[frozenset[Edge]] = []
    chosen: list[Edge] = []

    def extend(start: int) -> None:
        out.append(frozenset(chosen))
        if len(chosen) >= max_edges:
            return
        for b in range(start, len(edges)):
            chosen.append(edges[b])
            extend(b + 1)
            chosen.pop()

    extend(0)
    return out


def subset_masks(m: int, max_bits: int) -> list[int]:
    """Bitmask subsets of m indexed items, same lex order as feasible_actions."""
    out: list[int] = []

    def extend(mask: int, size: int, start: int) -> None:
        out.append(mask)
        if size >= max_bits:
            return
        for b in range(start, m):
            extend(mask | (1 << b), size + 1, b + 1)

    extend(0, 0, 0)
    return out


def removal_disagreements(
    x: Sequence[float], edges: Sequence[Edge], w: WeightMatrix
) -> np.ndarray:
    """Post-step disagreement for every subset of removed edges.

    Index r is a bitmask over the sorted edge list; bit b set means edge b is
    cut for the step.  The arithmetic mirrors consensus_step term for term so
    solver comparisons agree bitwise with the engine's bookkeeping.
    """
    ordered = sorted(normalize_edge(i, j) for i, j in edges)
    n = len(x)
    m = len(ordered)
    ii = [i - 1 for i, _ in ordered]
    jj = [j - 1 for _, j in ordered]
    ww = [w.get(i, j) for i, j in ordered]
    out = np.empty(1 << m, dtype=np.float64)
    for r in range(1 << m):
        acc = [0.0] * n
        for b in range(m):
            if r >> b & 1:
                continue
            d = ww[b] * (x[jj[b]] - x[ii[b]])
            acc[ii[b]] += d
            acc[jj[b]] -= d
        out[r] = disagreement([xv + av for xv, av in zip(x, acc)])
    return out

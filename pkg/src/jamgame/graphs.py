"""Communication graph, consensus stepping, and the disagreement measure.

Agents hold scalar states and synchronously average with their current
neighbors.  An attack removes edges for one step, a defended edge survives
the attack, and disagreement is the sum of squared pairwise state
differences, which is zero exactly when all agents agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]
StateVector = tuple[float, ...]


def normalize_edge(i: int, j: int) -> Edge:
    """Canonical (small, large) vertex order for an undirected edge."""
    if i == j:
        raise ValueError(f"self-loop ({i},{j}) is not a valid edge")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on agents 1..n."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("agent count must be positive")
        canon = frozenset(normalize_edge(i, j) for i, j in self.edges)
        object.__setattr__(self, "edges", canon)
        for i, j in canon:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n}")

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {1}
        stack = [1]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == self.n


@dataclass(frozen=True)
class WeightMatrix:
    """Symmetric positive averaging weights keyed by canonical edge.

    Per-agent weight sums must stay strictly below one so that a consensus
    step is an averaging contraction.
    """

    n: int
    weights: Mapping[Edge, float]

    def __post_init__(self) -> None:
        canon: dict[Edge, float] = {}
        for (i, j), w in self.weights.items():
            canon[normalize_edge(i, j)] = float(w)
        object.__setattr__(self, "weights", canon)
        row = [0.0] * (self.n + 1)
        for (i, j), w in canon.items():
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"weight edge ({i},{j}) out of range for n={self.n}")
            if w <= 0.0:
                raise ValueError(f"weight on ({i},{j}) must be positive, got {w}")
            row[i] += w
            row[j] += w
        for agent in range(1, self.n + 1):
            if row[agent] >= 1.0:
                raise ValueError(
                    f"weights at agent {agent} sum to {row[agent]}, must stay below 1"
                )

    @classmethod
    def uniform(cls, graph: Graph, value: float | None = None) -> "WeightMatrix":
        """Equal weight on every edge of `graph`, 1/n unless overridden."""
        a = 1.0 / graph.n if value is None else float(value)
        return cls(graph.n, {e: a for e in graph.edges})

    def get(self, i: int, j: int) -> float:
        return self.weights[normalize_edge(i, j)]


def effective_graph(
    base: Graph, attacked: Iterable[Edge], defended: Iterable[Edge]
) -> Graph:
    """Graph the agents actually communicate over after attack and defense.

    Attacked edges drop out unless they are also defended.  Both action sets
    must be drawn from the base edge set; the result need not be connected.
    """
    att = frozenset(normalize_edge(i, j) for i, j in attacked)
    dfd = frozenset(normalize_edge(i, j) for i, j in defended)
    for name, action in (("attacked", att), ("defended", dfd)):
        stray = action - base.edges
        if stray:
            raise ValueError(f"{name} edges not in base graph: {sorted(stray)}")
    return Graph(base.n, (base.edges - att) | dfd)


def consensus_step(x: Sequence[float], g_eff: Graph, w: WeightMatrix) -> StateVector:
    """One synchronous averaging update over the effective graph.

    Weights must cover every effective edge.  Symmetric weights preserve the
    state mean up to rounding.
    """
    if len(x) != g_eff.n:
        raise ValueError(f"state has {len(x)} entries for a {g_eff.n}-agent graph")
    missing = g_eff.edges - set(w.weights)
    if missing:
        raise ValueError(f"no weight defined for edges {sorted(missing)}")
    acc = [0.0] * g_eff.n
    # Fixed edge order keeps repeated runs bitwise reproducible.
    for i, j in sorted(g_eff.edges):
        d = w.weights[(i, j)] * (x[j - 1] - x[i - 1])
        acc[i - 1] += d
        acc[j - 1] -= d
    return tuple(xv + av for xv, av in zip(x, acc))


def disagreement(x: Sequence[float]) -> float:
    """Sum of squared pairwise state differences.

    Computed pairwise rather than with the n*sum(x^2) - sum(x)^2 identity,
    which cancels catastrophically once states are nearly equal and can go
    negative in floating point.  The pairwise form is exact zero at
    consensus and nonnegative always.
    """
    total = 0.0
    for a in range(len(x)):
        for b in range(a + 1, len(x)):
            d = x[a] - x[b]
            total += d * d
    return total


def next_disagreement(
    x: Sequence[float],
    base: Graph,
    attacked: Iterable[Edge],
    defended: Iterable[Edge],
    w: WeightMatrix,
) -> float:
    """Disagreement after one step under the given attack and defense."""
    return disagreement(consensus_step(x, effective_graph(base, attacked, defended), w))

"""Independent reference implementations used to cross-check the solvers.

Everything here is deliberately standalone: states advance through an
explicit update matrix, disagreement is the quadratic form of the
complete-graph Laplacian, subsets come from itertools, and equilibria are
checked directly against their definitions.  Nothing is shared with the
solver modules, so agreement between the two routes is meaningful evidence.
The single-edge case analysis below is the closed form the verification
suites compare enumeration against; its thresholds were derived by direct
expected-utility comparison and validated against brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


def update_matrix(n: int, kept_edges: Iterable[Edge], weights: dict[Edge, float]) -> np.ndarray:
    mat = np.eye(n)
    for i, j in kept_edges:
        a = weights[(i, j)] if (i, j) in weights else weights[(j, i)]
        mat[i - 1, j - 1] += a
        mat[i - 1, i - 1] -= a
        mat[j - 1, i - 1] += a
        mat[j - 1, j - 1] -= a
    return mat


def laplacian_disagreement(x: Sequence[float]) -> float:
    """Quadratic form of the complete-graph Laplacian.

    Counts each unordered agent pair once, matching the pairwise sum of
    squared differences.
    """
    v = np.asarray(x, dtype=np.float64)
    n = len(v)
    lap = n * np.eye(n) - np.ones((n, n))
    return float(v @ lap @ v)


def stage_disagreement(
    x: Sequence[float],
    n: int,
    edges: Sequence[Edge],
    weights: dict[Edge, float],
    attack: frozenset[Edge],
    defend: frozenset[Edge],
) -> float:
    kept = [e for e in edges if e not in attack or e in defend]
    x_next = update_matrix(n, kept, weights) @ np.asarray(x, dtype=np.float64)
    return laplacian_disagreement(x_next)


def subsets_upto(edges: Sequence[Edge], max_size: int) -> list[frozenset[Edge]]:
    out: list[frozenset[Edge]] = []
    for size in range(min(max_size, len(edges)) + 1):
        for combo in itertools.combinations(sorted(edges), size):
            out.append(frozenset(combo))
    return out


# ---------------------------------------------------------------------------
# Single-edge (two-agent) closed forms


@dataclass(frozen=True)
class SingleEdgeView:
    """Disagreement bookkeeping for the one-edge game.

    `frozen` is what remains if the edge is cut, `settled` what one intact
    averaging step leaves, and `gap` their difference, which is what cutting
    the edge is worth before costs.
    """

    frozen: float
    settled: float
    gap: float


def single_edge_view(x: Sequence[float], a: float) -> SingleEdgeView:
    d = x[0] - x[1]
    frozen = d * d
    settled = ((1.0 - 2.0 * a) * d) ** 2
    return SingleEdgeView(frozen=frozen, settled=settled, gap=frozen - settled)


@dataclass(frozen=True)
class SingleEdgeDecisions:
    """Literal case-analysis decisions for the one-edge stage game."""

    simultaneous_defender_idle: bool
    simultaneous_attacker_idle: bool
    screening_case: str
    screening_attack: bool
    screening_defend_low: bool
    screening_defend_high: bool
    signaling_defended: bool
    signaling_attack_low: bool
    signaling_attack_high: bool
    signaling_class: str


def single_edge_decisions(
    x: Sequence[float],
    a: float,
    attacker_types: tuple[float, float],
    defender_types: tuple[float, float],
    attacker_true_cost: float,
    defender_true_cost: float,
    mu_attacker_low: float,
) -> SingleEdgeDecisions:
    """Threshold case analysis for n=2 with one edge.

    A defender of cost t reinforces an attacked edge exactly when the gap
    exceeds t.  In the screening game the attacker compares the gap against
    its own cost when no type would defend, against the belief-weighted
    defender burn when both would, and against the mixed expression when
    only the cheap type would; indifference resolves to not attacking.  In
    the signaling game each attacker type compares its cost against the
    defender's burn (if the defender would reinforce) or against the gap
    (if not); types pool when those comparisons agree.
    """
    gap = single_edge_view(x, a).gap
    ta_lo, ta_hi = attacker_types
    td_lo, td_hi = defender_types

    defend_low = gap > td_lo
    defend_high = gap > td_hi
    if defend_low and defend_high:
        case = "both-defend"
        attack = mu_attacker_low < (td_hi - attacker_true_cost) / (td_hi - td_lo)
    elif defend_low:
        case = "split"
        attack = mu_attacker_low * (gap - td_lo) < gap - attacker_true_cost
    else:
        case = "none-defend"
        attack = gap > attacker_true_cost

    defended = gap > defender_true_cost
    if defended:
        attack_lo = defender_true_cost > ta_lo
        attack_hi = defender_true_cost > ta_hi
    else:
        attack_lo = gap > ta_lo
        attack_hi = gap > ta_hi
    sig_class = "pooling" if attack_lo == attack_hi else "separating"

    return SingleEdgeDecisions(
        simultaneous_defender_idle=defender_types[0] > gap,
        simultaneous_attacker_idle=attacker_types[0] > gap,
        screening_case=case,
        screening_attack=attack,
        screening_defend_low=defend_low,
        screening_defend_high=defend_high,
        signaling_defended=defended,
        signaling_attack_low=attack_lo,
        signaling_attack_high=attack_hi,
        signaling_class=sig_class,
    )


# ---------------------------------------------------------------------------
# Brute-force equilibrium search on tiny instances

MAX_BRUTE_EDGES = 4


def _guard(edges: Sequence[Edge]) -> None:
    if len(edges) > MAX_BRUTE_EDGES:
        raise ValueError(
            f"brute force handles at most {MAX_BRUTE_EDGES} edges, got {len(edges)}"
        )


def brute_force_bne(
    x: Sequence[float],
    n: int,
    edges: Sequence[Edge],
    weights: dict[Edge, float],
    attacker_types: tuple[float, float],
    defender_types: tuple[float, float],
    mu_attacker_low: float,
    mu_defender_low: float,
    attacker_caps: tuple[int, int],
    defender_caps: tuple[int, int],
) -> list[tuple[frozenset, frozenset, frozenset, frozenset]]:
    """Every type-contingent profile that survives all unilateral deviations.

    Profiles are (attack_low, attack_high, defend_low, defend_high).
    """
    _guard(edges)
    ta, td = attacker_types, defender_types
    mu_a = (mu_attacker_low, 1.0 - mu_attacker_low)
    mu_d = (mu_defender_low, 1.0 - mu_defender_low)
    acts_a = [subsets_upto(edges, c) for c in attacker_caps]
    acts_d = [subsets_upto(edges, c) for c in defender_caps]

    def z(attack: frozenset, defend: frozenset) -> float:
        return stage_disagreement(x, n, edges, weights, attack, defend)

    def u_attacker(t_idx: int, attack: frozenset, defend_pair) -> float:
        return sum(
            mu_a[d_idx]
            * (
                z(attack, defend_pair[d_idx])
                + td[d_idx] * len(defend_pair[d_idx])
                - ta[t_idx] * len(attack)
            )
            for d_idx in (0, 1)
        )

    def u_defender(t_idx: int, defend: frozenset, attack_pair) -> float:
        return sum(
            mu_d[a_idx]
            * (
                -z(attack_pair[a_idx], defend)
                - td[t_idx] * len(defend)
                + ta[a_idx] * len(attack_pair[a_idx])
            )
            for a_idx in (0, 1)
        )

    found = []
    for a_pair in itertools.product(acts_a[0], acts_a[1]):
        for d_pair in itertools.product(acts_d[0], acts_d[1]):
            ok = all(
                u_attacker(t, a_pair[t], d_pair)
                >= u_attacker(t, dev, d_pair)
                for t in (0, 1)
                for dev in acts_a[t]
            ) and all(
                u_defender(t, d_pair[t], a_pair)
                >= u_defender(t, dev, a_pair)
                for t in (0, 1)
                for dev in acts_d[t]
            )
            if ok:
                found.append((a_pair[0], a_pair[1], d_pair[0], d_pair[1]))
    return found


def brute_force_screening(
    x: Sequence[float],
    n: int,
    edges: Sequence[Edge],
    weights: dict[Edge, float],
    defender_types: tuple[float, float],
    attacker_cost: float,
    mu_attacker_low: float,
    attacker_cap: int,
    defender_caps: tuple[int, int],
) -> tuple[list[frozenset], dict[float, list[frozenset]]]:
    """Attacker argmax set and per-type defender argmax sets at those attacks.

    Defender responses are searched over every affordable subset of all
    edges, not just of the attack, so the dominance of attack-only defense
    is rediscovered rather than assumed.
    """
    _guard(edges)
    mu = (mu_attacker_low, 1.0 - mu_attacker_low)

    def respond_set(attack: frozenset, cost: float, cap: int) -> list[frozenset]:
        scored = [
            (-stage_disagreement(x, n, edges, weights, attack, d) - cost * len(d), d)
            for d in subsets_upto(edges, cap)
        ]
        best = max(s for s, _ in scored)
        return [d for s, d in scored if s == best]

    def respond_one(attack: frozenset, cost: float, cap: int) -> frozenset:
        return min(respond_set(attack, cost, cap), key=lambda d: (len(d), sorted(d)))

    scored = []
    for attack in subsets_upto(edges, attacker_cap):
        value = 0.0
        for d_idx, cost in enumerate(defender_types):
            r = respond_one(attack, cost, defender_caps[d_idx])
            value += mu[d_idx] * (
                stage_disagreement(x, n, edges, weights, attack, r)
                + cost * len(r)
                - attacker_cost * len(attack)
            )
        scored.append((value, attack))
    best = max(v for v, _ in scored)
    attacks = [a for v, a in scored if v == best]
    responses = {
        cost: sorted(
            {respond_one(a, cost, defender_caps[i]) for a in attacks},
            key=lambda d: (len(d), sorted(d)),
        )
        for i, cost in enumerate(defender_types)
    }
    return attacks, responses


def brute_force_signaling(
    x: Sequence[float],
    n: int,
    edges: Sequence[Edge],
    weights: dict[Edge, float],
    attacker_types: tuple[float, float],
    defender_cost: float,
    attacker_caps: tuple[int, int],
    defender_cap: int,
) -> tuple[dict[float, list[frozenset]], dict[frozenset, frozenset]]:
    """Per-type attacker argmax sets against the defender's response function."""
    _guard(edges)

    def respond(attack: frozenset) -> frozenset:
        scored = [
            (
                -stage_disagreement(x, n, edges, weights, attack, d)
                - defender_cost * len(d),
                d,
            )
            for d in subsets_upto(edges, defender_cap)
        ]
        best = max(s for s, _ in scored)
        return min((d for s, d in scored if s == best), key=lambda d: (len(d), sorted(d)))

    best_sets: dict[float, list[frozenset]] = {}
    response_map: dict[frozenset, frozenset] = {}
    for t_idx, cost in enumerate(attacker_types):
        scored = []
        for attack in subsets_upto(edges, attacker_caps[t_idx]):
            r = respond(attack)
            response_map[attack] = r
            scored.append(
                (
                    stage_disagreement(x, n, edges, weights, attack, r)
                    + defender_cost * len(r)
                    - cost * len(attack),
                    attack,
                )
            )
        best = max(v for v, _ in scored)
        best_sets[cost] = [a for v, a in scored if v == best]
    return best_sets, response_map

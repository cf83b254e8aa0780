"""Exact pure-strategy equilibrium search for the simultaneous-move stage.

Both players act without seeing the other's move, each holding a belief over
the opponent's two candidate costs.  A strategy assigns an action to each of
a player's own candidate types, constrained by what that hypothesized cost
could afford.  The solver enumerates type-contingent profiles and keeps the
ones where every type component is a best response in expectation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beliefs import Belief
from .enumeration import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapExceeded,
    removal_disagreements,
    subset_masks,
)
from .graphs import Edge
from .payoffs import StageContext
from .resources import Ledger, PlayerSpec


@dataclass(frozen=True)
class TypeCaps:
    """Largest affordable edge count per candidate type of one player."""

    low: int
    high: int


@dataclass(frozen=True)
class TypeStrategy:
    """Map from a player's candidate cost to that type's edge action."""

    by_type: dict[float, frozenset[Edge]]


@dataclass(frozen=True)
class BneResult:
    attacker: TypeStrategy
    defender: TypeStrategy
    multiplicity: int
    fallback_used: bool


@dataclass(frozen=True)
class ShortcutFlags:
    """Public-budget facts that pin one side's play in advance.

    `defender_priced_out`: even the cheaper defender candidate cannot afford
    one more strong-signal edge, so no defense is coming and attacking is
    strictly attractive whenever disagreement is worth more than its cost.
    `attacker_priced_out`: even the cheaper attacker candidate cannot afford
    one more attacked edge, so staying idle is optimal for the defender.
    """

    defender_priced_out: bool
    attacker_priced_out: bool


def shortcut_predicates(
    attacker_spec: PlayerSpec,
    attacker_ledger: Ledger,
    defender_spec: PlayerSpec,
    defender_ledger: Ledger,
    k: int,
) -> ShortcutFlags:
    """Evaluate the no-resource conditions at step k from public history."""
    d = defender_spec
    defender_out = (
        d.kappa + d.rho * k
        < d.type_low * defender_ledger.total() + d.type_low
    )
    a = attacker_spec
    attacker_out = (
        a.kappa + a.rho * k - a.type_low * attacker_ledger.total() < a.type_low
    )
    return ShortcutFlags(
        defender_priced_out=defender_out, attacker_priced_out=attacker_out
    )


def _mask_edges(mask: int, edges: list[Edge]) -> frozenset[Edge]:
    return frozenset(edges[b] for b in range(len(edges)) if mask >> b & 1)


def _candidates(all_masks: list[int], cap: int) -> np.ndarray:
    return np.array([mk for mk in all_masks if mk.bit_count() <= cap], dtype=np.int64)


def _popcounts(masks: np.ndarray) -> np.ndarray:
    return np.array([int(v).bit_count() for v in masks], dtype=np.float64)


def _argmax_all(values: np.ndarray) -> np.ndarray:
    return np.flatnonzero(values == values.max())


def _smallest_first(values: np.ndarray, pc: np.ndarray) -> int:
    """Index of the best value, ties broken by fewer edges then lex order."""
    best = _argmax_all(values)
    return int(min(best, key=lambda i: (pc[i], i)))


def solve_bne(
    ctx: StageContext,
    attacker_types: tuple[float, float],
    defender_types: tuple[float, float],
    attacker_belief: Belief,
    defender_belief: Belief,
    attacker_caps: TypeCaps,
    defender_caps: TypeCaps,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> BneResult:
    """Find every pure type-contingent equilibrium and pick one reproducibly.

    Returns the lexicographically smallest equilibrium profile (attacker
    components first, each compared as a sorted edge list).  When no pure
    equilibrium exists, each type instead best-responds to a uniform draw
    over the opponent's feasible actions and the result is flagged.
    """
    edges = sorted(ctx.base.edges)
    m = len(edges)
    if m > enumeration_cap:
        raise EnumerationCapExceeded(
            f"graph has {m} edges, enumeration cap is {enumeration_cap}"
        )
    ztab = removal_disagreements(ctx.x, edges, ctx.w)
    all_masks = subset_masks(m, m)

    ta_lo, ta_hi = attacker_types
    td_lo, td_hi = defender_types
    a_lo = _candidates(all_masks, attacker_caps.low)
    a_hi = _candidates(all_masks, attacker_caps.high)
    d_lo = _candidates(all_masks, defender_caps.low)
    d_hi = _candidates(all_masks, defender_caps.high)
    pc_a_lo, pc_a_hi = _popcounts(a_lo), _popcounts(a_hi)
    pc_d_lo, pc_d_hi = _popcounts(d_lo), _popcounts(d_hi)

    pdl, pdh = attacker_belief.mu_low, attacker_belief.mu_high
    pal, pah = defender_belief.mu_low, defender_belief.mu_high

    def attacker_payoffs(
        cands: np.ndarray, pc: np.ndarray, cost: float, dl: int, dh: int
    ) -> np.ndarray:
        # Terms constant in the attacker's own action are dropped.
        kept_l = np.bitwise_and(cands, ~int(dl))
        kept_h = np.bitwise_and(cands, ~int(dh))
        return pdl * ztab[kept_l] + pdh * ztab[kept_h] - cost * pc

    def defender_payoffs(
        cands: np.ndarray, pc: np.ndarray, cost: float, al: int, ah: int
    ) -> np.ndarray:
        kept_l = np.bitwise_and(int(al), np.bitwise_not(cands))
        kept_h = np.bitwise_and(int(ah), np.bitwise_not(cands))
        return -(pal * ztab[kept_l] + pah * ztab[kept_h]) - cost * pc

    d_index_lo = {int(v): i for i, v in enumerate(d_lo)}
    d_index_hi = {int(v): i for i, v in enumerate(d_hi)}
    defender_br_cache: dict[tuple[int, int], tuple[set[int], set[int]]] = {}

    def defender_best(al: int, ah: int) -> tuple[set[int], set[int]]:
        key = (al, ah)
        hit = defender_br_cache.get(key)
        if hit is None:
            u_lo = defender_payoffs(d_lo, pc_d_lo, td_lo, al, ah)
            u_hi = defender_payoffs(d_hi, pc_d_hi, td_hi, al, ah)
            hit = (
                {int(d_lo[i]) for i in _argmax_all(u_lo)},
                {int(d_hi[i]) for i in _argmax_all(u_hi)},
            )
            defender_br_cache[key] = hit
        return hit

    equilibria: list[tuple[int, int, int, int]] = []
    for idl, dl in enumerate(d_lo):
        for idh, dh in enumerate(d_hi):
            u_a_lo = attacker_payoffs(a_lo, pc_a_lo, ta_lo, int(dl), int(dh))
            u_a_hi = attacker_payoffs(a_hi, pc_a_hi, ta_hi, int(dl), int(dh))
            for ial in _argmax_all(u_a_lo):
                for iah in _argmax_all(u_a_hi):
                    best_lo, best_hi = defender_best(int(a_lo[ial]), int(a_hi[iah]))
                    if int(dl) in best_lo and int(dh) in best_hi:
                        equilibria.append((int(ial), int(iah), idl, idh))

    if equilibria:
        ial, iah, idl, idh = min(equilibria)
        return BneResult(
            attacker=TypeStrategy(
                {
                    ta_lo: _mask_edges(int(a_lo[ial]), edges),
                    ta_hi: _mask_edges(int(a_hi[iah]), edges),
                }
            ),
            defender=TypeStrategy(
                {
                    td_lo: _mask_edges(int(d_lo[idl]), edges),
                    td_hi: _mask_edges(int(d_hi[idh]), edges),
                }
            ),
            multiplicity=len(equilibria),
            fallback_used=False,
        )

    # No pure equilibrium: best-respond to a uniform draw over the opponent's
    # feasible actions, type by type, preferring smaller actions on ties.
    def uniform_kept(cands: np.ndarray, opp: np.ndarray, attacker_side: bool) -> np.ndarray:
        if attacker_side:
            kept = np.bitwise_and(cands[:, None], np.bitwise_not(opp[None, :]))
        else:
            kept = np.bitwise_and(opp[:, None], np.bitwise_not(cands[None, :])).T
        return ztab[kept].mean(axis=1)

    def fallback_attacker(cands: np.ndarray, pc: np.ndarray, cost: float) -> frozenset:
        u = (
            pdl * uniform_kept(cands, d_lo, True)
            + pdh * uniform_kept(cands, d_hi, True)
            - cost * pc
        )
        return _mask_edges(int(cands[_smallest_first(u, pc)]), edges)

    def fallback_defender(cands: np.ndarray, pc: np.ndarray, cost: float) -> frozenset:
        u = (
            -(pal * uniform_kept(cands, a_lo, False) + pah * uniform_kept(cands, a_hi, False))
            - cost * pc
        )
        return _mask_edges(int(cands[_smallest_first(u, pc)]), edges)

    return BneResult(
        attacker=TypeStrategy(
            {
                ta_lo: fallback_attacker(a_lo, pc_a_lo, ta_lo),
                ta_hi: fallback_attacker(a_hi, pc_a_hi, ta_hi),
            }
        ),
        defender=TypeStrategy(
            {
                td_lo: fallback_defender(d_lo, pc_d_lo, td_lo),
                td_hi: fallback_defender(d_hi, pc_d_hi, td_hi),
            }
        ),
        multiplicity=0,
        fallback_used=True,
    )

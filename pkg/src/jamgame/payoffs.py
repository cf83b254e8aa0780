"""Stage utilities for one round of the attack and defense game.

The attacker values the disagreement left after the step and the resource it
forces the defender to burn; the defender values the opposite, plus the
resource the attack burns.  Each side pays its own unit cost per planned
edge.  Utilities conditioned on a hypothesized opponent cost reuse the same
functions with the cost argument swapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .beliefs import Belief
from .graphs import Edge, Graph, StateVector, WeightMatrix, next_disagreement


@dataclass(frozen=True)
class ActionProfile:
    """One step's attack and defense edge sets."""

    attack: frozenset[Edge]
    defend: frozenset[Edge]


@dataclass(frozen=True)
class StageContext:
    """Everything a stage utility needs besides the actions themselves.

    The costs are whichever unit costs the caller wants priced in: the true
    ones when evaluating realized play, hypothesized ones when reasoning
    about a candidate type.
    """

    x: StateVector
    base: Graph
    w: WeightMatrix
    attacker_cost: float
    defender_cost: float

    def __post_init__(self) -> None:
        if self.attacker_cost <= 0.0 or self.defender_cost <= 0.0:
            raise ValueError("unit costs must be positive")


def utility_attacker(ctx: StageContext, theta_d: float, a: ActionProfile) -> float:
    """Post-step disagreement plus the defender's burn, minus own cost."""
    z = next_disagreement(ctx.x, ctx.base, a.attack, a.defend, ctx.w)
    return z + theta_d * len(a.defend) - ctx.attacker_cost * len(a.attack)


def utility_defender(ctx: StageContext, theta_a: float, a: ActionProfile) -> float:
    """Negated post-step disagreement minus own cost, plus the attacker's burn."""
    z = next_disagreement(ctx.x, ctx.base, a.attack, a.defend, ctx.w)
    return -z - ctx.defender_cost * len(a.defend) + theta_a * len(a.attack)


def _two_types(by_type: Mapping[float, frozenset]) -> tuple[float, float]:
    if len(by_type) != 2:
        raise ValueError(
            f"expected actions for exactly two candidate costs, got {len(by_type)}"
        )
    lo, hi = sorted(by_type)
    return lo, hi


def expected_utility_attacker(
    ctx: StageContext,
    belief: Belief,
    defend_by_type: Mapping[float, frozenset],
    attack: frozenset,
) -> float:
    """Belief-weighted attacker utility against type-contingent defenses.

    `defend_by_type` maps each candidate defender cost to the action that
    type would take; the belief's low probability weighs the smaller cost.
    """
    lo, hi = _two_types(defend_by_type)
    u_lo = utility_attacker(ctx, lo, ActionProfile(attack, defend_by_type[lo]))
    u_hi = utility_attacker(ctx, hi, ActionProfile(attack, defend_by_type[hi]))
    return belief.mu_low * u_lo + belief.mu_high * u_hi


def expected_utility_defender(
    ctx: StageContext,
    belief: Belief,
    attack_by_type: Mapping[float, frozenset],
    defend: frozenset,
) -> float:
    """Belief-weighted defender utility against type-contingent attacks."""
    lo, hi = _two_types(attack_by_type)
    u_lo = utility_defender(ctx, lo, ActionProfile(attack_by_type[lo], defend))
    u_hi = utility_defender(ctx, hi, ActionProfile(attack_by_type[hi], defend))
    return belief.mu_low * u_lo + belief.mu_high * u_hi

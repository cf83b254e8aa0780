"""Beliefs over an opponent's two candidate unit costs.

Between steps a player divides the opponent's accrued budget by its observed
activity to get a predicted cost, then maps that prediction onto a belief.
A prediction below the high candidate is only explainable by the low type,
so the belief locks there permanently.  Within a step of the sequential
informed-mover game the observer instead applies Bayes' rule to the observed
action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .resources import Ledger

# Relative tolerance for routing a prediction that sits exactly on the high
# candidate cost; the quotient is float arithmetic.
PREDICTION_RTOL = 1e-9


@dataclass(frozen=True)
class BeliefParams:
    """Tunables of the inter-step update rule."""

    alpha: float = 0.25  # belief pinned on boundary predictions, below 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 0.5:
            raise ValueError(f"alpha must lie in (0, 0.5), got {self.alpha}")


@dataclass(frozen=True)
class Belief:
    """Probability pair over (low cost, high cost), with a permanence flag.

    Once a probability hits one the opponent's type is known for good, so
    later inter-step updates are identities.
    """

    mu_low: float
    mu_high: float
    locked: bool = False

    def __post_init__(self) -> None:
        if not (0.0 <= self.mu_low <= 1.0 and 0.0 <= self.mu_high <= 1.0):
            raise ValueError("belief probabilities must lie in [0, 1]")
        if abs(self.mu_low + self.mu_high - 1.0) > 1e-12:
            raise ValueError("belief probabilities must sum to 1")

    @classmethod
    def from_low(cls, mu_low: float, locked: bool = False) -> "Belief":
        return cls(mu_low, 1.0 - mu_low, locked)

    @classmethod
    def uniform(cls) -> "Belief":
        return cls(0.5, 0.5)


def predicted_cost(
    kappa: float, rho: float, k: int, history: Ledger
) -> float | None:
    """Budget-per-action quotient read off the opponent's public history.

    None when there is no prior activity to divide by; that is an ordinary
    outcome, not an error.
    """
    if k < 1:
        raise ValueError("predicted cost is defined for steps k >= 1")
    acted = sum(history.counts[:k])
    if acted == 0:
        return None
    return (kappa + rho * (k - 1)) / acted


def update_belief(
    prev: Belief,
    pred: float | None,
    type_low: float,
    type_high: float,
    params: BeliefParams,
) -> Belief:
    """Inter-step belief from a predicted cost.

    A prediction below the high candidate proves the low type (that much
    activity is unaffordable at the high cost) and locks the belief.  A
    prediction exactly on the high candidate pins the belief at alpha, and
    larger predictions leave the observer increasingly unsure, approaching
    an even split from below.
    """
    if not type_low < type_high:
        raise ValueError("type_low must be below type_high")
    if prev.locked:
        return prev
    if pred is None:
        return Belief.uniform()
    if math.isclose(pred, type_high, rel_tol=PREDICTION_RTOL):
        return Belief.from_low(params.alpha)
    if pred < type_high:
        return Belief.from_low(1.0, locked=True)
    return Belief.from_low(0.5 * (pred - type_high) / pred)


def bayes_posterior(
    prior: Belief,
    strategy_low: frozenset,
    strategy_high: frozenset,
    observed: frozenset,
) -> Belief:
    """Within-step posterior given each type's equilibrium action.

    Identical strategies reveal nothing, an action matching exactly one type
    identifies it (types never change, so the result locks), and an off-path
    action keeps the prior.
    """
    if prior.locked:
        return prior
    if strategy_low == strategy_high:
        return prior
    if observed == strategy_low:
        return Belief.from_low(1.0, locked=True)
    if observed == strategy_high:
        return Belief.from_low(0.0, locked=True)
    return prior

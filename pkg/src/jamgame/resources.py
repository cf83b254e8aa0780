"""Budget accounting for the attacker and the defender.

Spending is linear in the number of edges acted on, charged per planned edge
whether or not the action succeeds.  Supply accrues linearly, so the budget
available at step k is kappa + rho*k minus what was already spent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Guards floor/accumulation rounding when a plan spends the budget exactly.
BUDGET_RTOL = 1e-9


class BudgetViolation(RuntimeError):
    """An action was recorded that the owner's true cost cannot pay for."""


@dataclass(frozen=True)
class PlayerSpec:
    """A player's private unit cost, public candidate cost pair, and supply.

    The true cost must be one of the two candidates; which one is private
    information.  Budgets and supply rates are public.
    """

    beta_true: float
    type_low: float
    type_high: float
    kappa: float
    rho: float

    def __post_init__(self) -> None:
        if not (self.type_low > 0.0 and self.type_high > 0.0):
            raise ValueError("candidate costs must be positive")
        if not self.type_low < self.type_high:
            raise ValueError(
                f"type_low must be below type_high, got {self.type_low} >= {self.type_high}"
            )
        if self.beta_true not in (self.type_low, self.type_high):
            raise ValueError(
                f"beta_true {self.beta_true} is not one of the candidate costs"
            )
        if self.kappa < 0.0:
            raise ValueError("kappa must be nonnegative")
        if self.rho <= 0.0:
            raise ValueError("rho must be positive")


@dataclass(frozen=True)
class Ledger:
    """Public per-step counts of edges a player acted on."""

    counts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise ValueError("edge counts must be nonnegative")

    def total(self) -> int:
        return sum(self.counts)


def remaining_budget(
    ledger: Ledger, beta: float, kappa: float, rho: float, k: int
) -> float:
    """Budget left at step k under unit cost `beta` given the recorded history.

    Negative values can only arise for a hypothesized (not true) cost: they
    mean the history is unaffordable for that candidate type.
    """
    return kappa + rho * k - beta * ledger.total()


def max_affordable_edges(
    ledger: Ledger,
    beta: float,
    kappa: float,
    rho: float,
    k: int,
    edge_pool_size: int,
) -> int:
    """Largest edge count payable at step k, capped by the action pool."""
    rem = remaining_budget(ledger, beta, kappa, rho, k)
    if rem < beta:
        return 0
    return min(edge_pool_size, math.floor(rem / beta))


def record_action(ledger: Ledger, count: int, spec: PlayerSpec) -> Ledger:
    """Append one step's edge count, re-checking the true-cost budget.

    A violation here is a programming error upstream: actions are supposed
    to be validated feasible before they are played.
    """
    if count < 0:
        raise ValueError("edge count must be nonnegative")
    k = len(ledger.counts)
    spent = spec.beta_true * (ledger.total() + count)
    budget = spec.kappa + spec.rho * k
    if spent > budget * (1.0 + BUDGET_RTOL) + BUDGET_RTOL:
        raise BudgetViolation(
            f"step {k}: spending {spent} exceeds budget {budget} at true cost"
        )
    return Ledger(ledger.counts + (count,))

"""Sequential-move stage solvers.

The attacker moves first and the defender responds after seeing exactly
which edges were hit.  Defending an edge that was not attacked buys nothing
and costs something, so best responses only ever reinforce attacked edges.

Two information patterns are covered.  When the defender's cost is private
(the attacker screens), the attacker weighs each candidate defender type's
response by its belief.  When the attacker's cost is private (the attacker
signals), the defender's response to an observed attack does not depend on
its belief at all, because the attacker-burn term in its utility is fixed by
the observation; each attacker type then best-responds to that response
function, and the observed action feeds Bayes' rule.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .beliefs import Belief, bayes_posterior
from .bne import TypeCaps
from .enumeration import DEFAULT_ENUMERATION_CAP, feasible_actions
from .graphs import Edge, next_disagreement
from .payoffs import ActionProfile, StageContext, utility_attacker

SEPARATING = "separating"
POOLING = "pooling"
NOT_CLASSIFIED = "not-classified"


@dataclass(frozen=True)
class PbeResult:
    """Solution of one sequential stage.

    Screening fills `attacker_action` and `defender_by_type` (the response
    each candidate defender cost would make to that attack).  Signaling
    fills `attacker_by_type`, the materialized on-path `defender_response`
    map, and the on-path `posteriors` map.  `classification` states whether
    the two attacker types make the same attack-or-idle choice (pooling) or
    reveal themselves by differing (separating); it applies to signaling
    and stays "not-classified" for screening.
    """

    classification: str
    attacker_action: frozenset[Edge] | None = None
    defender_by_type: dict[float, frozenset[Edge]] | None = None
    attacker_by_type: dict[float, frozenset[Edge]] | None = None
    defender_response: dict[frozenset[Edge], frozenset[Edge]] | None = None
    posteriors: dict[frozenset[Edge], Belief] | None = None


def _size_lex_key(action: frozenset[Edge]) -> tuple[int, tuple[Edge, ...]]:
    return (len(action), tuple(sorted(action)))


def _argmax_small(options: list[tuple[float, frozenset[Edge]]]) -> frozenset[Edge]:
    """Best-valued action, ties broken toward fewer edges then lex order."""
    best = max(v for v, _ in options)
    return min((a for v, a in options if v == best), key=_size_lex_key)


def defender_best_response(
    ctx: StageContext,
    observed_attack: frozenset[Edge],
    defender_cost: float,
    max_edges: int,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> frozenset[Edge]:
    """Optimal strong-signal set against a known attack.

    Searches subsets of the attack only; reinforcing an untouched edge is
    strictly dominated.  The attacker-burn term is constant across choices
    and is omitted.
    """
    if not observed_attack:
        return frozenset()
    options = []
    for d in feasible_actions(observed_attack, max_edges, enumeration_cap):
        z = next_disagreement(ctx.x, ctx.base, observed_attack, d, ctx.w)
        options.append((-z - defender_cost * len(d), d))
    return _argmax_small(options)


def solve_screening(
    ctx: StageContext,
    defender_types: tuple[float, float],
    defender_caps: TypeCaps,
    attacker_belief: Belief,
    attacker_cap: int,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> PbeResult:
    """Stage solution when the defender's cost is private.

    The attacker's own cost is common knowledge here and comes from the
    context.  For every affordable attack the anticipated response of each
    candidate defender type is computed, and the attack maximizing the
    belief-weighted payoff wins, smaller attacks preferred on ties.
    """
    td_lo, td_hi = defender_types
    caps = {td_lo: defender_caps.low, td_hi: defender_caps.high}

    def responses(attack: frozenset[Edge]) -> dict[float, frozenset[Edge]]:
        return {
            t: defender_best_response(ctx, attack, t, caps[t], enumeration_cap)
            for t in (td_lo, td_hi)
        }

    options = []
    for attack in feasible_actions(ctx.base.edges, attacker_cap, enumeration_cap):
        br = responses(attack)
        value = attacker_belief.mu_low * utility_attacker(
            ctx, td_lo, ActionProfile(attack, br[td_lo])
        ) + attacker_belief.mu_high * utility_attacker(
            ctx, td_hi, ActionProfile(attack, br[td_hi])
        )
        options.append((value, attack))
    chosen = _argmax_small(options)
    return PbeResult(
        classification=NOT_CLASSIFIED,
        attacker_action=chosen,
        defender_by_type=responses(chosen),
    )


def solve_signaling(
    ctx: StageContext,
    attacker_types: tuple[float, float],
    attacker_caps: TypeCaps,
    defender_prior: Belief,
    defender_cap: int,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> PbeResult:
    """Stage solution when the attacker's cost is private.

    The defender's cost is common knowledge and comes from the context; its
    response function is the same under any posterior, so each attacker type
    simply best-responds to it.  Types pool when they make the same
    attack-or-idle choice and separate when exactly one of them attacks.
    """
    ta_lo, ta_hi = attacker_types
    response_cache: dict[frozenset[Edge], frozenset[Edge]] = {}

    def respond(attack: frozenset[Edge]) -> frozenset[Edge]:
        hit = response_cache.get(attack)
        if hit is None:
            hit = defender_best_response(
                ctx, attack, ctx.defender_cost, defender_cap, enumeration_cap
            )
            response_cache[attack] = hit
        return hit

    def best_attack(cost: float, cap: int) -> frozenset[Edge]:
        ctx_t = replace(ctx, attacker_cost=cost)
        options = []
        for attack in feasible_actions(ctx.base.edges, cap, enumeration_cap):
            profile = ActionProfile(attack, respond(attack))
            options.append((utility_attacker(ctx_t, ctx.defender_cost, profile), attack))
        return _argmax_small(options)

    a_lo = best_attack(ta_lo, attacker_caps.low)
    a_hi = best_attack(ta_hi, attacker_caps.high)
    classification = POOLING if bool(a_lo) == bool(a_hi) else SEPARATING
    posteriors = {
        obs: bayes_posterior(defender_prior, a_lo, a_hi, obs) for obs in {a_lo, a_hi}
    }
    return PbeResult(
        classification=classification,
        attacker_by_type={ta_lo: a_lo, ta_hi: a_hi},
        defender_response={obs: respond(obs) for obs in {a_lo, a_hi}},
        posteriors=posteriors,
    )

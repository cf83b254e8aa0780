"""Repeated-game orchestration.

Each step runs in a fixed order: both players refresh their beliefs from the
public action history, per-type affordability is computed, the stage game is
solved for the configured move structure, each player executes its true
type's component, spending is recorded, and the agents take one consensus
step over whatever graph the actions left standing.  A trace record captures
everything observable about the step.

In signaling mode the defender's within-step Bayes posterior both drives the
logged posterior column and becomes the defender's carried belief, so a
type, once revealed, stays revealed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from .beliefs import Belief, BeliefParams, predicted_cost, update_belief
from .bne import TypeCaps, solve_bne
from .graphs import (
    Edge,
    Graph,
    StateVector,
    WeightMatrix,
    consensus_step,
    disagreement,
    effective_graph,
    next_disagreement,
)
from .payoffs import StageContext
from .pbe import solve_screening, solve_signaling
from .resources import Ledger, PlayerSpec, max_affordable_edges, record_action, remaining_budget

if TYPE_CHECKING:  # pragma: no cover
    from .scenario import ScenarioConfig


class GameMode(str, Enum):
    BNE = "bne"
    SCREENING = "screening"
    SIGNALING = "signaling"


@dataclass(frozen=True)
class PlayerState:
    spec: PlayerSpec
    ledger: Ledger
    belief: Belief  # about the opponent's type


@dataclass(frozen=True)
class WorldState:
    k: int
    x: StateVector
    attacker: PlayerState
    defender: PlayerState


@dataclass(frozen=True)
class TraceRecord:
    """One step's observable log; `x` and `z` are post-step values."""

    k: int
    x: StateVector
    z: float
    attack: frozenset[Edge]
    defend: frozenset[Edge]
    mu_att_low: float
    mu_def_low: float
    posterior_def_low: float | None
    budget_att: float
    budget_def: float
    eq_class: str
    fallback: bool


@dataclass(frozen=True)
class EngineConfig:
    graph: Graph
    weights: WeightMatrix
    params: BeliefParams
    enumeration_cap: int = 16


def initial_world(x0: StateVector, attacker: PlayerSpec, defender: PlayerSpec) -> WorldState:
    return WorldState(
        k=0,
        x=tuple(float(v) for v in x0),
        attacker=PlayerState(attacker, Ledger(), Belief.uniform()),
        defender=PlayerState(defender, Ledger(), Belief.uniform()),
    )


def _refresh_belief(
    holder: PlayerState, opponent: PlayerState, k: int, params: BeliefParams
) -> Belief:
    pred = (
        predicted_cost(opponent.spec.kappa, opponent.spec.rho, k, opponent.ledger)
        if k >= 1
        else None
    )
    return update_belief(
        holder.belief, pred, opponent.spec.type_low, opponent.spec.type_high, params
    )


def _caps(spec: PlayerSpec, ledger: Ledger, k: int, pool: int) -> TypeCaps:
    return TypeCaps(
        low=max_affordable_edges(ledger, spec.type_low, spec.kappa, spec.rho, k, pool),
        high=max_affordable_edges(ledger, spec.type_high, spec.kappa, spec.rho, k, pool),
    )


def _true_cap(caps: TypeCaps, spec: PlayerSpec) -> int:
    return caps.low if spec.beta_true == spec.type_low else caps.high


def step(world: WorldState, mode: GameMode, cfg: EngineConfig) -> tuple[WorldState, TraceRecord]:
    """Advance the world by one stage game and emit the step's record."""
    k = world.k
    att, dfd = world.attacker, world.defender
    att_belief = _refresh_belief(att, dfd, k, cfg.params)
    dfd_belief = _refresh_belief(dfd, att, k, cfg.params)

    pool = len(cfg.graph.edges)
    att_caps = _caps(att.spec, att.ledger, k, pool)
    dfd_caps = _caps(dfd.spec, dfd.ledger, k, pool)
    ctx = StageContext(
        x=world.x,
        base=cfg.graph,
        w=cfg.weights,
        attacker_cost=att.spec.beta_true,
        defender_cost=dfd.spec.beta_true,
    )
    att_types = (att.spec.type_low, att.spec.type_high)
    dfd_types = (dfd.spec.type_low, dfd.spec.type_high)

    posterior: Belief | None = None
    fallback = False
    if mode is GameMode.BNE:
        res = solve_bne(
            ctx,
            att_types,
            dfd_types,
            att_belief,
            dfd_belief,
            att_caps,
            dfd_caps,
            cfg.enumeration_cap,
        )
        attack = res.attacker.by_type[att.spec.beta_true]
        defend = res.defender.by_type[dfd.spec.beta_true]
        eq_class, fallback = "bne", res.fallback_used
    elif mode is GameMode.SCREENING:
        res = solve_screening(
            ctx,
            dfd_types,
            dfd_caps,
            att_belief,
            _true_cap(att_caps, att.spec),
            cfg.enumeration_cap,
        )
        attack = res.attacker_action
        defend = res.defender_by_type[dfd.spec.beta_true]
        eq_class = "screening"
    elif mode is GameMode.SIGNALING:
        res = solve_signaling(
            ctx,
            att_types,
            att_caps,
            dfd_belief,
            _true_cap(dfd_caps, dfd.spec),
            cfg.enumeration_cap,
        )
        attack = res.attacker_by_type[att.spec.beta_true]
        defend = res.defender_response[attack]
        posterior = res.posteriors[attack]
        eq_class = res.classification
    else:  # pragma: no cover
        raise ValueError(f"unknown mode {mode}")

    assert defend <= cfg.graph.edges and attack <= cfg.graph.edges
    att_ledger = record_action(att.ledger, len(attack), att.spec)
    dfd_ledger = record_action(dfd.ledger, len(defend), dfd.spec)

    x_next = consensus_step(world.x, effective_graph(cfg.graph, attack, defend), cfg.weights)
    record = TraceRecord(
        k=k,
        x=x_next,
        z=disagreement(x_next),
        attack=attack,
        defend=defend,
        mu_att_low=att_belief.mu_low,
        mu_def_low=dfd_belief.mu_low,
        posterior_def_low=posterior.mu_low if posterior is not None else None,
        budget_att=remaining_budget(att_ledger, att.spec.beta_true, att.spec.kappa, att.spec.rho, k),
        budget_def=remaining_budget(dfd_ledger, dfd.spec.beta_true, dfd.spec.kappa, dfd.spec.rho, k),
        eq_class=eq_class,
        fallback=fallback,
    )
    next_world = WorldState(
        k=k + 1,
        x=x_next,
        attacker=PlayerState(att.spec, att_ledger, att_belief),
        defender=PlayerState(dfd.spec, dfd_ledger, posterior if posterior is not None else dfd_belief),
    )
    return next_world, record


def run(scenario: "ScenarioConfig") -> list[TraceRecord]:
    """Simulate a scenario for its whole horizon; deterministic throughout."""
    cfg = EngineConfig(
        graph=scenario.graph(),
        weights=scenario.weight_matrix(),
        params=BeliefParams(scenario.alpha),
        enumeration_cap=scenario.enumeration_cap,
    )
    world = initial_world(scenario.x0, scenario.attacker, scenario.defender)
    mode = GameMode(scenario.mode)
    records: list[TraceRecord] = []
    for _ in range(scenario.horizon):
        world, record = step(world, mode, cfg)
        records.append(record)
    return records


def consensus_reached(trace: list[TraceRecord], epsilon: float) -> int | None:
    """First step whose post-step disagreement dips below epsilon, if any."""
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    for record in trace:
        if record.z < epsilon:
            return record.k
    return None


@dataclass(frozen=True)
class ConditionReport:
    """Start-of-run evaluation of the known prevention and consensus tests.

    `initial_gap` generalizes the single-edge gap: disagreement kept by
    freezing everything minus disagreement left by one unhindered step.  The
    supply conditions are evaluated under both readings of which attacker
    cost the supply rate must cover (the true one, or the high candidate).
    """

    initial_disagreement: float
    initial_gap: float
    screening_prevention: dict[str, bool]
    signaling_prevention: dict[str, bool]
    consensus_trigger_at_start: bool
    consensus_trigger_step: int | None


def condition_report(scenario: "ScenarioConfig") -> ConditionReport:
    g = scenario.graph()
    w = scenario.weight_matrix()
    x0 = tuple(float(v) for v in scenario.x0)
    z0 = disagreement(x0)
    gap0 = z0 - next_disagreement(x0, g, (), (), w)
    att, dfd = scenario.attacker, scenario.defender

    supply_true = att.beta_true <= att.rho
    supply_high = att.type_high <= att.rho
    screening_window = att.beta_true < gap0 < dfd.type_low
    screening = {
        "supply_covers_true_cost": supply_true,
        "supply_covers_high_cost": supply_high,
        "gap_within_cost_window": screening_window,
        "holds_true_reading": supply_true and screening_window,
        "holds_high_reading": supply_high and screening_window,
    }

    cheaper = att.beta_true < dfd.beta_true
    gap_small = gap0 <= dfd.beta_true
    signaling = {
        "supply_covers_true_cost": supply_true,
        "supply_covers_high_cost": supply_high,
        "attack_cheaper_than_defense": cheaper,
        "gap_at_most_defense_cost": gap_small,
        "holds_true_reading": supply_true and cheaper and gap_small,
        "holds_high_reading": supply_high and cheaper and gap_small,
    }

    trace = run(scenario)
    trigger_step = None
    for record in trace:
        if record.z < att.type_low:
            trigger_step = record.k
            break

    return ConditionReport(
        initial_disagreement=z0,
        initial_gap=gap0,
        screening_prevention=screening,
        signaling_prevention=signaling,
        consensus_trigger_at_start=z0 < att.type_low,
        consensus_trigger_step=trigger_step,
    )

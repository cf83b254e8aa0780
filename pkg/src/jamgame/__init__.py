"""Simulator and exact equilibrium solver for a repeated two-player
jamming and defense game played over a consensus network, where each side
knows the other's budget but not its per-edge cost."""

from .beliefs import Belief, BeliefParams, bayes_posterior, predicted_cost, update_belief
from .bne import (
    BneResult,
    ShortcutFlags,
    TypeCaps,
    TypeStrategy,
    shortcut_predicates,
    solve_bne,
)
from .engine import (
    ConditionReport,
    EngineConfig,
    GameMode,
    PlayerState,
    TraceRecord,
    WorldState,
    condition_report,
    consensus_reached,
    initial_world,
    run,
    step,
)
from .enumeration import EnumerationCapExceeded, feasible_actions
from .graphs import (
    Graph,
    WeightMatrix,
    consensus_step,
    disagreement,
    effective_graph,
    next_disagreement,
)
from .payoffs import (
    ActionProfile,
    StageContext,
    expected_utility_attacker,
    expected_utility_defender,
    utility_attacker,
    utility_defender,
)
from .pbe import PbeResult, defender_best_response, solve_screening, solve_signaling
from .resources import (
    BudgetViolation,
    Ledger,
    PlayerSpec,
    max_affordable_edges,
    record_action,
    remaining_budget,
)
from .scenario import (
    ScenarioConfig,
    ScenarioError,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    write_trace,
)

__version__ = "0.1.0"

__all__ = [
    "ActionProfile",
    "Belief",
    "BeliefParams",
    "BneResult",
    "BudgetViolation",
    "ConditionReport",
    "EngineConfig",
    "EnumerationCapExceeded",
    "GameMode",
    "Graph",
    "Ledger",
    "PbeResult",
    "PlayerSpec",
    "PlayerState",
    "ScenarioConfig",
    "ScenarioError",
    "ShortcutFlags",
    "StageContext",
    "TraceRecord",
    "TypeCaps",
    "TypeStrategy",
    "WeightMatrix",
    "WorldState",
    "bayes_posterior",
    "condition_report",
    "consensus_reached",
    "consensus_step",
    "defender_best_response",
    "disagreement",
    "effective_graph",
    "expected_utility_attacker",
    "expected_utility_defender",
    "feasible_actions",
    "initial_world",
    "load_scenario",
    "max_affordable_edges",
    "next_disagreement",
    "predicted_cost",
    "record_action",
    "remaining_budget",
    "run",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "shortcut_predicates",
    "solve_bne",
    "solve_screening",
    "solve_signaling",
    "step",
    "update_belief",
    "utility_attacker",
    "utility_defender",
    "write_trace",
]

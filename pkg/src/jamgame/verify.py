"""Randomized and constructed verification suites.

Three suites back the `verify` CLI command and the acceptance tests:

* two-agent-oracle: on random one-edge instances, the enumeration solvers
  must reproduce the closed-form case analysis exactly, and the closed form
  itself must sit inside the brute-force argmax sets.
* invariants: random small scenarios across all three move structures; every
  trace must respect budgets, belief normalization, the defendances-attacked-
  edges-only rule in sequential play, and non-increase of disagreement on
  attack-free steps.
* theorems: constructed scenarios where play is fully predictable
  (prevention freezes the state bitwise, a low-value start silences the
  attacker and consensus follows).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .beliefs import Belief
from .bne import TypeCaps, solve_bne
from .engine import GameMode, condition_report, consensus_reached, run
from .graphs import Edge, Graph, WeightMatrix, disagreement
from .payoffs import StageContext
from .pbe import solve_screening, solve_signaling
from .reference import (
    brute_force_screening,
    brute_force_signaling,
    single_edge_decisions,
    single_edge_view,
)
from .resources import PlayerSpec
from .scenario import ScenarioConfig

EDGE: Edge = (1, 2)
PATH6: tuple[Edge, ...] = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6))


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: tuple[str, ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures


def _single_edge_ctx(spread: float, a: float, att_cost: float, dfd_cost: float) -> StageContext:
    return StageContext(
        x=(spread, 0.0),
        base=Graph(2, frozenset({EDGE})),
        w=WeightMatrix(2, {EDGE: a}),
        attacker_cost=att_cost,
        defender_cost=dfd_cost,
    )


def _draw_defender_types(rng: random.Random, gap: float, regime: int) -> tuple[float, float]:
    if regime == 0:  # both candidate costs below the gap
        hi = gap * rng.uniform(0.2, 0.95)
        return hi * rng.uniform(0.2, 0.9), hi
    if regime == 1:  # both above
        lo = gap * rng.uniform(1.05, 3.0)
        return lo, lo * rng.uniform(1.1, 2.0)
    return gap * rng.uniform(0.2, 0.95), gap * rng.uniform(1.05, 3.0)


def two_agent_oracle_suite(trials: int = 1000, seed: int = 0) -> SuiteResult:
    """Solvers versus closed forms versus brute force on one-edge games."""
    rng = random.Random(seed)
    started = time.perf_counter()
    failures: list[str] = []
    weights = {EDGE: 0.0}

    for t in range(trials):
        spread = rng.uniform(0.1, 3.0)
        a = rng.uniform(0.01, 0.49)
        gap = single_edge_view((spread, 0.0), a).gap
        regime = t % 3
        td = _draw_defender_types(rng, gap, regime)
        ta_lo = gap * rng.uniform(0.02, 1.5)
        ta_hi = ta_lo * rng.uniform(1.2, 3.0)
        att_cost = ta_lo if rng.random() < 0.5 else ta_hi
        mu = rng.uniform(0.02, 0.98)
        belief = Belief.from_low(mu)
        weights[EDGE] = a
        oracle = single_edge_decisions(
            (spread, 0.0), a, (ta_lo, ta_hi), td, att_cost, td[1], mu
        )

        # Screening: attacker cost common knowledge, defender type private.
        ctx = _single_edge_ctx(spread, a, att_cost, td[1])
        res = solve_screening(ctx, td, TypeCaps(1, 1), belief, 1)
        want_attack = frozenset({EDGE}) if oracle.screening_attack else frozenset()
        if res.attacker_action != want_attack:
            failures.append(f"trial {t}: screening attack mismatch (case {oracle.screening_case})")
            continue
        if res.attacker_action:
            got_low = bool(res.defender_by_type[td[0]])
            got_high = bool(res.defender_by_type[td[1]])
            if got_low != oracle.screening_defend_low or got_high != oracle.screening_defend_high:
                failures.append(f"trial {t}: screening defense mismatch")
                continue
        attacks, _ = brute_force_screening(
            (spread, 0.0), 2, [EDGE], weights, td, att_cost, mu, 1, (1, 1)
        )
        if res.attacker_action not in attacks:
            failures.append(f"trial {t}: screening attack outside brute-force argmax")
            continue

        # Signaling: defender cost common knowledge, attacker type private.
        dfd_cost = td[1] if rng.random() < 0.5 else td[0]
        ctx2 = _single_edge_ctx(spread, a, ta_lo, dfd_cost)
        res2 = solve_signaling(ctx2, (ta_lo, ta_hi), TypeCaps(1, 1), belief, 1)
        oracle2 = single_edge_decisions(
            (spread, 0.0), a, (ta_lo, ta_hi), td, att_cost, dfd_cost, mu
        )
        if res2.classification != oracle2.signaling_class:
            failures.append(f"trial {t}: signaling class mismatch")
            continue
        want_lo = frozenset({EDGE}) if oracle2.signaling_attack_low else frozenset()
        want_hi = frozenset({EDGE}) if oracle2.signaling_attack_high else frozenset()
        if res2.attacker_by_type[ta_lo] != want_lo or res2.attacker_by_type[ta_hi] != want_hi:
            failures.append(f"trial {t}: signaling action mismatch")
            continue
        if oracle2.signaling_class == "separating":
            if res2.posteriors[want_lo].mu_low != 1.0 or res2.posteriors[want_hi].mu_low != 0.0:
                failures.append(f"trial {t}: separating posterior not degenerate")
                continue
        else:
            post = res2.posteriors[res2.attacker_by_type[ta_lo]]
            if post.mu_low != belief.mu_low:
                failures.append(f"trial {t}: pooling posterior moved off the prior")
                continue
        best_sets, _ = brute_force_signaling(
            (spread, 0.0), 2, [EDGE], weights, (ta_lo, ta_hi), dfd_cost, (1, 1), 1
        )
        if res2.attacker_by_type[ta_lo] not in best_sets[ta_lo] or res2.attacker_by_type[
            ta_hi
        ] not in best_sets[ta_hi]:
            failures.append(f"trial {t}: signaling action outside brute-force argmax")

    return SuiteResult(
        "two-agent-oracle", trials, tuple(failures), time.perf_counter() - started
    )


def bne_shortcut_suite(trials: int = 1000, seed: int = 0) -> SuiteResult:
    """When both low candidate costs exceed the gap, nobody moves."""
    rng = random.Random(seed)
    started = time.perf_counter()
    failures: list[str] = []
    for t in range(trials):
        spread = rng.uniform(0.1, 3.0)
        a = rng.uniform(0.01, 0.49)
        gap = single_edge_view((spread, 0.0), a).gap
        ta_lo = gap * rng.uniform(1.05, 3.0)
        td_lo = gap * rng.uniform(1.05, 3.0)
        ta = (ta_lo, ta_lo * rng.uniform(1.1, 2.0))
        td = (td_lo, td_lo * rng.uniform(1.1, 2.0))
        ctx = _single_edge_ctx(spread, a, ta[0], td[0])
        res = solve_bne(
            ctx,
            ta,
            td,
            Belief.from_low(rng.uniform(0.0, 1.0)),
            Belief.from_low(rng.uniform(0.0, 1.0)),
            TypeCaps(1, 1),
            TypeCaps(1, 1),
        )
        actions = list(res.attacker.by_type.values()) + list(res.defender.by_type.values())
        if res.fallback_used or any(actions):
            failures.append(f"trial {t}: expected an all-idle equilibrium")
    return SuiteResult("bne-shortcuts", trials, tuple(failures), time.perf_counter() - started)


def random_scenario(rng: random.Random) -> ScenarioConfig:
    """A small random scenario satisfying every config invariant."""
    n = rng.randint(2, 5)
    edges = {(rng.randint(1, v - 1), v) for v in range(2, n + 1)}
    possible = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rng.shuffle(possible)
    for e in possible:
        if len(edges) >= min(6, len(possible)):
            break
        edges.add(e)
    edge_list = tuple(sorted(edges))
    weight = rng.uniform(0.05, 0.95 / max(1, n - 1))
    mode = (GameMode.BNE, GameMode.SCREENING, GameMode.SIGNALING)[rng.randint(0, 2)]
    horizon = rng.randint(1, 30)
    if mode is GameMode.BNE and len(edge_list) >= 5:
        horizon = min(horizon, 10)  # keeps the exhaustive solve affordable

    def spec(kappa_floor: float) -> PlayerSpec:
        lo = rng.uniform(0.05, 1.0)
        hi = lo * rng.uniform(1.2, 3.0)
        rho = rng.uniform(0.05, 0.5)
        return PlayerSpec(
            beta_true=lo if rng.random() < 0.5 else hi,
            type_low=lo,
            type_high=hi,
            kappa=max(kappa_floor, rng.uniform(0.1, 2.5)),
            rho=rho,
        )

    attacker = spec(0.0)
    if attacker.kappa < attacker.rho:
        attacker = PlayerSpec(
            attacker.beta_true,
            attacker.type_low,
            attacker.type_high,
            attacker.rho,
            attacker.rho,
        )
    return ScenarioConfig(
        n=n,
        edges=edge_list,
        x0=tuple(rng.uniform(-2.0, 2.0) for _ in range(n)),
        mode=mode,
        horizon=horizon,
        attacker=attacker,
        defender=spec(0.0),
        weights=tuple((i, j, weight) for i, j in edge_list),
        alpha=0.25,
    )


def invariant_fuzz_suite(trials: int = 500, seed: int = 0) -> SuiteResult:
    """Run random scenarios and check every trace-level invariant."""
    rng = random.Random(seed)
    started = time.perf_counter()
    failures: list[str] = []
    for t in range(trials):
        sc = random_scenario(rng)
        try:
            trace = run(sc)
        except Exception as exc:  # any crash is a failure worth reporting
            failures.append(f"scenario {t}: run raised {exc!r}")
            continue
        att_total = 0
        dfd_total = 0
        prev_z = disagreement(sc.x0)
        for r in trace:
            att_total += len(r.attack)
            dfd_total += len(r.defend)
            a, d = sc.attacker, sc.defender
            if a.beta_true * att_total > a.kappa + a.rho * r.k + 1e-9:
                failures.append(f"scenario {t} step {r.k}: attacker budget exceeded")
                break
            if d.beta_true * dfd_total > d.kappa + d.rho * r.k + 1e-9:
                failures.append(f"scenario {t} step {r.k}: defender budget exceeded")
                break
            if not (0.0 <= r.mu_att_low <= 1.0 and 0.0 <= r.mu_def_low <= 1.0):
                failures.append(f"scenario {t} step {r.k}: belief out of range")
                break
            if sc.mode in (GameMode.SCREENING, GameMode.SIGNALING) and not r.defend <= r.attack:
                failures.append(f"scenario {t} step {r.k}: defense outside the attack")
                break
            if not r.attack and r.z > prev_z + 1e-12 * (1.0 + prev_z):
                failures.append(f"scenario {t} step {r.k}: z rose on an attack-free step")
                break
            prev_z = r.z
    return SuiteResult("invariants", trials, tuple(failures), time.perf_counter() - started)


def prevention_signaling_scenario(horizon: int = 100) -> ScenarioConfig:
    """One edge, cheap sustainable attacks, defense never worth its cost."""
    return ScenarioConfig(
        n=2,
        edges=(EDGE,),
        x0=(1.0, 0.0),
        mode=GameMode.SIGNALING,
        horizon=horizon,
        attacker=PlayerSpec(0.1, 0.1, 1.0, 2.0, 0.2),
        defender=PlayerSpec(1.0, 0.5, 1.0, 1.6, 0.1),
        weights=((1, 2, 0.25),),
    )


def prevention_screening_scenario(horizon: int = 100) -> ScenarioConfig:
    """One edge, gap strictly between the attack cost and both defense costs."""
    return ScenarioConfig(
        n=2,
        edges=(EDGE,),
        x0=(1.0, 0.0),
        mode=GameMode.SCREENING,
        horizon=horizon,
        attacker=PlayerSpec(0.1, 0.1, 1.0, 2.0, 0.2),
        defender=PlayerSpec(0.8, 0.8, 1.2, 1.6, 0.1),
        weights=((1, 2, 0.25),),
    )


def consensus_path_scenario(horizon: int = 200) -> ScenarioConfig:
    """Path of six agents where early attacks die out and consensus follows."""
    return ScenarioConfig(
        n=6,
        edges=PATH6,
        x0=(0.8, 0.6, 0.5, 0.5, 0.4, 0.2),
        mode=GameMode.BNE,
        horizon=horizon,
        attacker=PlayerSpec(0.1, 0.1, 0.5, 0.2, 0.05),
        defender=PlayerSpec(1.0, 0.5, 1.0, 0.5, 0.05),
        weights=tuple((i, j, 0.25) for i, j in PATH6),
    )


def quiet_two_agent_scenario(horizon: int = 120) -> ScenarioConfig:
    """Both low candidate costs above the gap, so nobody ever moves."""
    return ScenarioConfig(
        n=2,
        edges=(EDGE,),
        x0=(0.5, 0.0),
        mode=GameMode.BNE,
        horizon=horizon,
        attacker=PlayerSpec(0.5, 0.5, 1.0, 2.0, 0.2),
        defender=PlayerSpec(0.5, 0.5, 1.0, 1.6, 0.1),
        weights=((1, 2, 0.25),),
    )


def theorem_suite() -> SuiteResult:
    """Constructed prevention and consensus scenarios behave as predicted."""
    started = time.perf_counter()
    failures: list[str] = []

    sc = prevention_signaling_scenario()
    trace = run(sc)
    if not all(r.attack for r in trace):
        failures.append("signaling prevention: a step went without an attack")
    if any(r.defend for r in trace):
        failures.append("signaling prevention: the defender moved")
    if not all(r.z == trace[0].z for r in trace):
        failures.append("signaling prevention: disagreement drifted")
    if not condition_report(sc).signaling_prevention["holds_true_reading"]:
        failures.append("signaling prevention: report does not flag the conditions")

    sc = prevention_screening_scenario()
    trace = run(sc)
    if not all(r.attack and not r.defend for r in trace):
        failures.append("screening prevention: unexpected action pattern")
    if not all(r.z == trace[0].z for r in trace):
        failures.append("screening prevention: disagreement drifted")
    if not condition_report(sc).screening_prevention["holds_true_reading"]:
        failures.append("screening prevention: report does not flag the conditions")

    sc = consensus_path_scenario()
    trace = run(sc)
    trigger = next((r.k for r in trace if r.z < sc.attacker.type_low), None)
    if trigger is None:
        failures.append("consensus path: disagreement never fell below the low attack cost")
    elif any(r.attack for r in trace if r.k > trigger):
        failures.append("consensus path: an attack happened after the trigger step")
    if consensus_reached(trace, sc.epsilon_consensus) is None:
        failures.append("consensus path: consensus never reached")

    sc = quiet_two_agent_scenario()
    trace = run(sc)
    if any(r.attack or r.defend for r in trace):
        failures.append("quiet two-agent: someone moved despite costs above the gap")
    if consensus_reached(trace, sc.epsilon_consensus) is None:
        failures.append("quiet two-agent: consensus never reached")

    return SuiteResult("theorems", 4, tuple(failures), time.perf_counter() - started)


SUITES = {
    "two-agent-oracle": two_agent_oracle_suite,
    "invariants": invariant_fuzz_suite,
    "theorems": lambda trials=0, seed=0: theorem_suite(),
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}, choose from {sorted(SUITES)}")
    if name == "theorems":
        return theorem_suite()
    defaults = {"two-agent-oracle": 1000, "invariants": 500}
    return SUITES[name](trials=trials or defaults[name], seed=seed)

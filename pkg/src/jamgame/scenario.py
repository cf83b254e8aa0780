"""Scenario files and trace output.

Scenarios are single JSON documents.  Edges are arrays of two 1-based agent
indices, smaller first; optional weight overrides are [i, j, value] triples.
Traces are CSV with one row per step in a fixed column order, written so
identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .engine import GameMode, TraceRecord
from .graphs import Edge, Graph, WeightMatrix
from .resources import PlayerSpec


class ScenarioError(ValueError):
    """A scenario file failed validation; the message names the constraint."""


MODES = tuple(m.value for m in GameMode)

_PLAYER_KEYS = ("beta_true", "type_low", "type_high", "kappa", "rho")


@dataclass(frozen=True)
class ScenarioConfig:
    n: int
    edges: tuple[Edge, ...]
    x0: tuple[float, ...]
    mode: GameMode
    horizon: int
    attacker: PlayerSpec
    defender: PlayerSpec
    weights: tuple[tuple[int, int, float], ...] | None = None
    alpha: float = 0.25
    epsilon_consensus: float = 1e-6
    enumeration_cap: int = 16
    seed: int | None = None

    def graph(self) -> Graph:
        return Graph(self.n, frozenset(self.edges))

    def weight_matrix(self) -> WeightMatrix:
        g = self.graph()
        if self.weights is None:
            return WeightMatrix.uniform(g)
        return WeightMatrix(self.n, {(i, j): w for i, j, w in self.weights})


def _player_spec(raw: dict, who: str) -> PlayerSpec:
    for key in _PLAYER_KEYS:
        if key not in raw:
            raise ScenarioError(f"{who} is missing required field '{key}'")
    extra = set(raw) - set(_PLAYER_KEYS)
    if extra:
        raise ScenarioError(f"{who} has unknown fields {sorted(extra)}")
    try:
        return PlayerSpec(**{k: float(raw[k]) for k in _PLAYER_KEYS})
    except ValueError as exc:
        raise ScenarioError(f"{who}: {exc}") from exc


def _validated(cfg: ScenarioConfig) -> ScenarioConfig:
    if cfg.n < 2:
        raise ScenarioError("n must be at least 2")
    if len(cfg.x0) != cfg.n:
        raise ScenarioError(f"x0 has {len(cfg.x0)} entries but n={cfg.n}")
    if not all(v == v and abs(v) != float("inf") for v in cfg.x0):
        raise ScenarioError("x0 entries must be finite")
    if cfg.horizon < 0:
        raise ScenarioError("horizon must be nonnegative")
    if cfg.enumeration_cap < 1:
        raise ScenarioError("enumeration_cap must be positive")
    if not 0.0 < cfg.alpha < 0.5:
        raise ScenarioError("alpha must lie in (0, 0.5)")
    if cfg.epsilon_consensus <= 0.0:
        raise ScenarioError("epsilon_consensus must be positive")
    seen = set()
    for e in cfg.edges:
        if not (1 <= e[0] < e[1] <= cfg.n):
            raise ScenarioError(f"edge {list(e)} must list two distinct agents in 1..n, smaller first")
        if e in seen:
            raise ScenarioError(f"edge {list(e)} appears more than once")
        seen.add(e)
    try:
        g = cfg.graph()
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    if not g.is_connected():
        raise ScenarioError("the base graph must be connected")
    if cfg.attacker.kappa < cfg.attacker.rho:
        raise ScenarioError("attacker kappa must be at least rho")
    if cfg.weights is not None:
        for i, j, _ in cfg.weights:
            if (i, j) not in seen:
                raise ScenarioError(f"weight override for ({i},{j}) has no matching edge")
        if len({(i, j) for i, j, _ in cfg.weights}) != len(cfg.edges):
            raise ScenarioError("weight overrides must cover every edge exactly once")
        try:
            cfg.weight_matrix()
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
    return cfg


def scenario_from_dict(raw: dict) -> ScenarioConfig:
    required = ("n", "edges", "x0", "mode", "horizon", "attacker", "defender")
    for key in required:
        if key not in raw:
            raise ScenarioError(f"scenario is missing required field '{key}'")
    known = set(required) | {"weights", "alpha", "epsilon_consensus", "enumeration_cap", "seed"}
    extra = set(raw) - known
    if extra:
        raise ScenarioError(f"scenario has unknown fields {sorted(extra)}")
    if raw["mode"] not in MODES:
        raise ScenarioError(f"mode must be one of {list(MODES)}, got {raw['mode']!r}")
    weights = raw.get("weights")
    cfg = ScenarioConfig(
        n=int(raw["n"]),
        edges=tuple((int(i), int(j)) for i, j in raw["edges"]),
        x0=tuple(float(v) for v in raw["x0"]),
        mode=GameMode(raw["mode"]),
        horizon=int(raw["horizon"]),
        attacker=_player_spec(raw["attacker"], "attacker"),
        defender=_player_spec(raw["defender"], "defender"),
        weights=None
        if weights is None
        else tuple((int(i), int(j), float(w)) for i, j, w in weights),
        alpha=float(raw.get("alpha", 0.25)),
        epsilon_consensus=float(raw.get("epsilon_consensus", 1e-6)),
        enumeration_cap=int(raw.get("enumeration_cap", 16)),
        seed=None if raw.get("seed") is None else int(raw["seed"]),
    )
    return _validated(cfg)


def load_scenario(path: str | Path) -> ScenarioConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario file must hold a single JSON object")
    return scenario_from_dict(raw)


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    raw = {
        "n": cfg.n,
        "edges": [list(e) for e in cfg.edges],
        "x0": list(cfg.x0),
        "mode": cfg.mode.value,
        "horizon": cfg.horizon,
        "attacker": asdict(cfg.attacker),
        "defender": asdict(cfg.defender),
        "alpha": cfg.alpha,
        "epsilon_consensus": cfg.epsilon_consensus,
        "enumeration_cap": cfg.enumeration_cap,
    }
    if cfg.weights is not None:
        raw["weights"] = [list(w) for w in cfg.weights]
    if cfg.seed is not None:
        raw["seed"] = cfg.seed
    return raw


def save_scenario(cfg: ScenarioConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(cfg), indent=2) + "\n")


def _edge_field(edges: Iterable[Edge]) -> str:
    return ";".join(f"{i}-{j}" for i, j in sorted(edges))


def trace_header(n: int) -> list[str]:
    return (
        ["k"]
        + [f"x_{i}" for i in range(1, n + 1)]
        + [
            "z",
            "attack_edges",
            "defend_edges",
            "mu_att_low",
            "mu_def_low",
            "posterior_def_low",
            "budget_att",
            "budget_def",
            "eq_class",
            "fallback",
        ]
    )


def trace_row(record: TraceRecord) -> list[str]:
    return (
        [str(record.k)]
        + [repr(v) for v in record.x]
        + [
            repr(record.z),
            _edge_field(record.attack),
            _edge_field(record.defend),
            repr(record.mu_att_low),
            repr(record.mu_def_low),
            "" if record.posterior_def_low is None else repr(record.posterior_def_low),
            repr(record.budget_att),
            repr(record.budget_def),
            record.eq_class,
            "true" if record.fallback else "false",
        ]
    )


def write_trace(trace: Sequence[TraceRecord], path: str | Path, n: int) -> None:
    """Write the trace CSV; an empty trace still gets its header line."""
    lines = [",".join(trace_header(n))]
    lines.extend(",".join(trace_row(r)) for r in trace)
    Path(path).write_text("\n".join(lines) + "\n")

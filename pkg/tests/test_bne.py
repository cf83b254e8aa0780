import pytest

from jamgame import (
    Belief,
    Graph,
    Ledger,
    PlayerSpec,
    StageContext,
    WeightMatrix,
    shortcut_predicates,
    solve_bne,
)
from jamgame.bne import TypeCaps
from jamgame.enumeration import EnumerationCapExceeded
from jamgame.reference import brute_force_bne

G2 = Graph(2, frozenset({(1, 2)}))
W2 = WeightMatrix(2, {(1, 2): 0.25})
EMPTY = frozenset()
E = frozenset({(1, 2)})


def ctx2(x=(1.0, 0.0), att=0.1, dfd=0.5):
    return StageContext(x=x, base=G2, w=W2, attacker_cost=att, defender_cost=dfd)


def all_idle(result):
    return not any(result.attacker.by_type.values()) and not any(
        result.defender.by_type.values()
    )


def test_defender_idle_when_low_cost_exceeds_gap():
    # gap = 0.75*(0.5)^2 = 0.1875 < 0.5
    res = solve_bne(
        ctx2(x=(0.5, 0.0)),
        (0.05, 0.1),
        (0.5, 1.0),
        Belief.uniform(),
        Belief.uniform(),
        TypeCaps(1, 1),
        TypeCaps(1, 1),
    )
    assert not any(res.defender.by_type.values())
    assert not res.fallback_used


def test_attacker_idle_when_low_cost_exceeds_gap():
    res = solve_bne(
        ctx2(x=(0.5, 0.0)),
        (0.5, 1.0),
        (0.05, 0.1),
        Belief.uniform(),
        Belief.uniform(),
        TypeCaps(1, 1),
        TypeCaps(1, 1),
    )
    assert not any(res.attacker.by_type.values())


def test_both_idle_when_gap_below_both_low_costs():
    res = solve_bne(
        ctx2(x=(0.5, 0.0)),
        (0.5, 1.0),
        (0.5, 1.0),
        Belief.uniform(),
        Belief.uniform(),
        TypeCaps(1, 1),
        TypeCaps(1, 1),
    )
    assert all_idle(res) and res.multiplicity >= 1


def test_attack_happens_when_defense_priced_out():
    # Defender cannot afford an edge in either type; gap 0.75 > attacker cost.
    res = solve_bne(
        ctx2(),
        (0.1, 0.2),
        (0.5, 1.0),
        Belief.uniform(),
        Belief.uniform(),
        TypeCaps(1, 1),
        TypeCaps(0, 0),
    )
    assert res.attacker.by_type[0.1] == E
    assert res.attacker.by_type[0.2] == E
    assert not any(res.defender.by_type.values())


def test_matches_brute_force_on_small_instances():
    for x, ta, td, mu_a, mu_d in [
        ((1.0, 0.0), (0.1, 1.0), (0.5, 1.0), 0.5, 0.5),
        ((1.0, 0.0), (0.3, 0.9), (0.3, 0.9), 0.5, 0.5),
        ((0.7, 0.0), (0.2, 0.6), (0.1, 0.4), 0.3, 0.8),
    ]:
        res = solve_bne(
            ctx2(x=x),
            ta,
            td,
            Belief.from_low(mu_a),
            Belief.from_low(mu_d),
            TypeCaps(1, 1),
            TypeCaps(1, 1),
        )
        found = brute_force_bne(
            x, 2, [(1, 2)], {(1, 2): 0.25}, ta, td, mu_a, mu_d, (1, 1), (1, 1)
        )
        assert res.multiplicity == len(found)
        if found:
            profile = (
                res.attacker.by_type[ta[0]],
                res.attacker.by_type[ta[1]],
                res.defender.by_type[td[0]],
                res.defender.by_type[td[1]],
            )
            assert profile in found
            assert not res.fallback_used
        else:
            assert res.fallback_used


def test_no_pure_equilibrium_uses_fallback():
    # Degenerate beliefs collapse to a complete-information cycling game.
    locked = Belief.from_low(1.0, locked=True)
    res = solve_bne(
        ctx2(att=0.3, dfd=0.3),
        (0.3, 0.9),
        (0.3, 0.9),
        locked,
        locked,
        TypeCaps(1, 1),
        TypeCaps(1, 1),
    )
    assert res.fallback_used and res.multiplicity == 0
    assert brute_force_bne(
        (1.0, 0.0), 2, [(1, 2)], {(1, 2): 0.25}, (0.3, 0.9), (0.3, 0.9), 1.0, 1.0, (1, 1), (1, 1)
    ) == []


def test_determinism():
    args = (
        ctx2(),
        (0.1, 1.0),
        (0.5, 1.0),
        Belief.uniform(),
        Belief.uniform(),
        TypeCaps(1, 1),
        TypeCaps(1, 1),
    )
    assert solve_bne(*args) == solve_bne(*args)


def test_larger_graph_respects_caps():
    g = Graph(3, frozenset({(1, 2), (2, 3), (1, 3)}))
    w = WeightMatrix.uniform(g)
    ctx = StageContext((2.0, 0.0, -1.0), g, w, 0.05, 0.4)
    res = solve_bne(
        ctx,
        (0.05, 0.5),
        (0.4, 0.9),
        Belief.uniform(),
        Belief.uniform(),
        TypeCaps(2, 1),
        TypeCaps(1, 0),
    )
    assert len(res.attacker.by_type[0.05]) <= 2
    assert len(res.attacker.by_type[0.5]) <= 1
    assert len(res.defender.by_type[0.4]) <= 1
    assert res.defender.by_type[0.9] == EMPTY


def test_enumeration_cap_guard():
    g = Graph(5, frozenset({(i, j) for i in range(1, 6) for j in range(i + 1, 6)}))
    ctx = StageContext((1.0, 0.0, 0.5, 0.2, 0.9), g, WeightMatrix.uniform(g), 0.1, 0.5)
    with pytest.raises(EnumerationCapExceeded):
        solve_bne(
            ctx,
            (0.1, 1.0),
            (0.5, 1.0),
            Belief.uniform(),
            Belief.uniform(),
            TypeCaps(1, 1),
            TypeCaps(1, 1),
            enumeration_cap=5,
        )


def test_shortcut_predicates():
    fresh_defender = PlayerSpec(0.5, 0.5, 1.0, 1.6, 0.1)
    attacker = PlayerSpec(0.1, 0.1, 1.0, 2.0, 0.2)
    flags = shortcut_predicates(attacker, Ledger(), fresh_defender, Ledger(), 0)
    assert not flags.defender_priced_out
    assert not flags.attacker_priced_out

    poor_attacker = PlayerSpec(0.1, 0.1, 1.0, 0.05, 0.05)
    flags = shortcut_predicates(poor_attacker, Ledger(), fresh_defender, Ledger(), 0)
    assert flags.attacker_priced_out

    exhausted = shortcut_predicates(
        attacker, Ledger((20,)), fresh_defender, Ledger(), 1
    )
    assert exhausted.attacker_priced_out

import pytest

from jamgame import (
    Belief,
    Graph,
    StageContext,
    WeightMatrix,
    defender_best_response,
    solve_screening,
    solve_signaling,
)
from jamgame.bne import TypeCaps
from jamgame.pbe import POOLING, SEPARATING

G2 = Graph(2, frozenset({(1, 2)}))
W2 = WeightMatrix(2, {(1, 2): 0.25})
E = frozenset({(1, 2)})
EMPTY = frozenset()


def ctx2(x=(1.0, 0.0), att=0.1, dfd=1.0):
    return StageContext(x=x, base=G2, w=W2, attacker_cost=att, defender_cost=dfd)


def test_best_response_to_no_attack_is_idle():
    assert defender_best_response(ctx2(), EMPTY, 0.5, 1) == EMPTY


def test_best_response_recovers_when_gap_beats_cost():
    # gap = 0.75 > 0.5
    assert defender_best_response(ctx2(), E, 0.5, 1) == E


def test_best_response_idles_when_cost_beats_gap():
    assert defender_best_response(ctx2(), E, 1.0, 1) == EMPTY


def test_best_response_subset_of_attack():
    g = Graph(3, frozenset({(1, 2), (2, 3)}))
    w = WeightMatrix.uniform(g)
    ctx = StageContext((3.0, 0.0, -3.0), g, w, 0.1, 0.2)
    attack = frozenset({(1, 2)})
    br = defender_best_response(ctx, attack, 0.2, 2)
    assert br <= attack


def test_screening_both_types_defend_regime():
    # gap = 1.6875 > 1.0 = high defender cost; threshold (1-0.1)/(1-0.5) = 1.8
    ctx = ctx2(x=(1.5, 0.0))
    res = solve_screening(ctx, (0.5, 1.0), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.attacker_action == E
    assert res.defender_by_type == {0.5: E, 1.0: E}


def test_screening_no_defense_regime():
    # gap = 0.1875 < 0.5; attack still pays since 0.1875 > 0.1
    ctx = ctx2(x=(0.5, 0.0))
    res = solve_screening(ctx, (0.5, 1.0), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.attacker_action == E
    assert res.defender_by_type == {0.5: EMPTY, 1.0: EMPTY}


def test_screening_split_regime():
    # gap = 0.75 between the defender candidates 0.5 and 1.0
    res = solve_screening(ctx2(), (0.5, 1.0), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.defender_by_type[0.5] == E
    assert res.defender_by_type[1.0] == EMPTY
    # attack iff mu*(gap - 0.5) < gap - 0.1: 0.5*0.25 < 0.65
    assert res.attacker_action == E


def test_screening_split_regime_belief_can_deter():
    # attack iff mu*(gap - td_lo) < gap - att_cost; pick numbers that flip it
    ctx = StageContext((1.0, 0.0), G2, W2, attacker_cost=0.6, defender_cost=1.0)
    res_hi = solve_screening(ctx, (0.5, 1.0), TypeCaps(1, 1), Belief.from_low(0.9), 1)
    assert res_hi.attacker_action == EMPTY  # 0.9*0.25 = 0.225 > 0.15
    res_lo = solve_screening(ctx, (0.5, 1.0), TypeCaps(1, 1), Belief.from_low(0.3), 1)
    assert res_lo.attacker_action == E  # 0.3*0.25 = 0.075 < 0.15


def test_signaling_separating():
    # defender cost 0.5 < gap 0.75: defends on attack; attack iff 0.5 > type
    res = solve_signaling(ctx2(dfd=0.5), (0.1, 1.0), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.classification == SEPARATING
    assert res.attacker_by_type == {0.1: E, 1.0: EMPTY}
    assert res.defender_response[E] == E
    assert res.posteriors[E].mu_low == 1.0
    assert res.posteriors[EMPTY].mu_low == 0.0


def test_signaling_pooling_on_attack():
    # defender cost 2 > gap 0.75: never defends; attack iff gap > type.
    # Both candidate costs sit below the gap, so both types attack.
    res = solve_signaling(ctx2(dfd=2.0), (0.1, 0.5), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.classification == POOLING
    assert res.attacker_by_type == {0.1: E, 0.5: E}
    assert res.defender_response[E] == EMPTY
    assert res.posteriors[E].mu_low == 0.5  # prior preserved


def test_signaling_pooling_on_idle():
    # defender would defend (gap 0.75 > 0.5) and both attacker costs exceed
    # the defender burn, so neither type attacks.
    res = solve_signaling(ctx2(dfd=0.5), (0.8, 1.5), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.classification == POOLING
    assert res.attacker_by_type == {0.8: EMPTY, 1.5: EMPTY}
    assert defender_best_response(ctx2(dfd=0.5), E, 0.5, 1) == E


def test_signaling_outcome_straddling_gap_separates():
    # No defense coming (gap 0.75 < cost 2); types straddle the gap.
    res = solve_signaling(ctx2(dfd=2.0), (0.1, 1.0), TypeCaps(1, 1), Belief.uniform(), 1)
    assert res.classification == SEPARATING
    assert res.attacker_by_type == {0.1: E, 1.0: EMPTY}
    assert res.defender_response[E] == EMPTY


def test_signaling_response_prior_invariant():
    results = [
        solve_signaling(ctx2(dfd=0.5), (0.1, 1.0), TypeCaps(1, 1), Belief.from_low(mu), 1)
        for mu in (0.05, 0.3, 0.5, 0.77, 0.95)
    ]
    first = results[0]
    for res in results[1:]:
        assert res.attacker_by_type == first.attacker_by_type
        assert res.defender_response == first.defender_response
        assert res.classification == first.classification


def test_sequential_defenses_stay_inside_attacks():
    g = Graph(4, frozenset({(1, 2), (2, 3), (3, 4)}))
    w = WeightMatrix.uniform(g)
    ctx = StageContext((4.0, 1.0, -1.0, -4.0), g, w, 0.1, 0.3)
    res = solve_screening(ctx, (0.3, 0.8), TypeCaps(3, 2), Belief.uniform(), 3)
    for action in res.defender_by_type.values():
        assert action <= res.attacker_action
    res2 = solve_signaling(ctx, (0.1, 0.6), TypeCaps(3, 3), Belief.uniform(), 2)
    for observed, response in res2.defender_response.items():
        assert response <= observed


def test_multi_edge_participation_classification():
    # Both types attack but with different budgets and hence different sets;
    # that still counts as pooling on the attack decision.
    g = Graph(4, frozenset({(1, 2), (2, 3), (3, 4)}))
    w = WeightMatrix.uniform(g)
    ctx = StageContext((9.0, 3.0, -3.0, -9.0), g, w, 0.1, 1.0)
    res = solve_signaling(ctx, (0.1, 1.0), TypeCaps(3, 1), Belief.uniform(), 1)
    low, high = res.attacker_by_type[0.1], res.attacker_by_type[1.0]
    assert low and high and low != high
    assert res.classification == POOLING
    # The set-level difference still identifies the type via Bayes.
    assert res.posteriors[low].mu_low == 1.0

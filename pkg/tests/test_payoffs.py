import pytest

from jamgame import (
    ActionProfile,
    Belief,
    Graph,
    StageContext,
    WeightMatrix,
    expected_utility_attacker,
    expected_utility_defender,
    utility_attacker,
    utility_defender,
)

G2 = Graph(2, frozenset({(1, 2)}))
W2 = WeightMatrix(2, {(1, 2): 0.25})
E = frozenset({(1, 2)})
EMPTY = frozenset()


def ctx(att=0.1, dfd=1.0, x=(1.0, 0.0)):
    return StageContext(x=x, base=G2, w=W2, attacker_cost=att, defender_cost=dfd)


def test_attacker_utility_undefended_attack():
    assert utility_attacker(ctx(), 0.5, ActionProfile(E, EMPTY)) == pytest.approx(0.9)


def test_attacker_utility_empty_profile():
    assert utility_attacker(ctx(), 0.5, ActionProfile(EMPTY, EMPTY)) == pytest.approx(0.25)


def test_attacker_utility_defended_attack():
    u = utility_attacker(ctx(dfd=0.5), 0.5, ActionProfile(E, E))
    assert u == pytest.approx(0.65)


def test_defender_utility_undefended_attack():
    assert utility_defender(ctx(), 0.1, ActionProfile(E, EMPTY)) == pytest.approx(-0.9)


def test_defender_utility_empty_profile():
    assert utility_defender(ctx(), 0.1, ActionProfile(EMPTY, EMPTY)) == pytest.approx(-0.25)


def test_defender_utility_defended_attack():
    u = utility_defender(ctx(dfd=0.5), 0.1, ActionProfile(E, E))
    assert u == pytest.approx(-0.65)


def test_expected_attacker_utility():
    u = expected_utility_attacker(ctx(), Belief.uniform(), {0.5: E, 1.0: E}, E)
    assert u == pytest.approx(0.9)


def test_expected_attacker_degenerate_belief_collapses():
    b = Belief.from_low(1.0, locked=True)
    u = expected_utility_attacker(ctx(dfd=0.5), b, {0.5: E, 1.0: EMPTY}, E)
    assert u == pytest.approx(utility_attacker(ctx(dfd=0.5), 0.5, ActionProfile(E, E)))


def test_expected_attacker_identical_actions_type_independent_z():
    for mu in (0.2, 0.5, 0.9):
        u = expected_utility_attacker(ctx(), Belief.from_low(mu), {0.5: E, 1.0: E}, E)
        # z and own-cost terms fixed, only the burn bonus varies with belief
        assert u == pytest.approx(0.25 + (mu * 0.5 + (1 - mu) * 1.0) - 0.1)


def test_expected_defender_utility():
    u = expected_utility_defender(ctx(), Belief.uniform(), {0.1: E, 1.0: E}, EMPTY)
    assert u == pytest.approx(-0.45)


def test_expected_defender_degenerate_belief():
    b = Belief(0.0, 1.0)
    u = expected_utility_defender(ctx(), b, {0.1: E, 1.0: E}, EMPTY)
    assert u == pytest.approx(-1.0 + 1.0)


def test_defender_choice_gap_belief_free_when_attacks_pool():
    # With both attacker types taking the same action, the defend-vs-idle
    # utility difference does not depend on the belief.
    attacks = {0.1: E, 1.0: E}
    diffs = []
    for mu in (0.1, 0.5, 0.9):
        b = Belief.from_low(mu)
        diffs.append(
            expected_utility_defender(ctx(), b, attacks, E)
            - expected_utility_defender(ctx(), b, attacks, EMPTY)
        )
    assert diffs[0] == pytest.approx(diffs[1]) == pytest.approx(diffs[2])


def test_expected_utilities_affine_in_belief():
    attacks = {0.1: E, 1.0: EMPTY}
    lo = expected_utility_defender(ctx(), Belief.from_low(1.0, locked=True), attacks, E)
    hi = expected_utility_defender(ctx(), Belief(0.0, 1.0), attacks, E)
    for mu in (0.25, 0.6):
        u = expected_utility_defender(ctx(), Belief.from_low(mu), attacks, E)
        assert u == pytest.approx(mu * lo + (1 - mu) * hi)


def test_extra_defense_strictly_hurts_defender():
    # Defending an unattacked edge pays full cost and recovers nothing.
    base = utility_defender(ctx(), 0.1, ActionProfile(EMPTY, EMPTY))
    worse = utility_defender(ctx(), 0.1, ActionProfile(EMPTY, E))
    assert worse < base


def test_expected_utility_requires_both_types():
    with pytest.raises(ValueError):
        expected_utility_attacker(ctx(), Belief.uniform(), {0.5: E}, E)


def test_profile_validation_propagates():
    with pytest.raises(ValueError):
        utility_attacker(ctx(), 0.5, ActionProfile(frozenset({(1, 3)}), EMPTY))

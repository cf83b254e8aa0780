import pytest

from jamgame import (
    BudgetViolation,
    Ledger,
    PlayerSpec,
    max_affordable_edges,
    record_action,
    remaining_budget,
)


def test_remaining_budget_no_spending():
    assert remaining_budget(Ledger(), 0.1, 2.0, 0.2, 0) == 2.0


def test_remaining_budget_after_history():
    assert remaining_budget(Ledger((5,)), 0.1, 2.0, 0.2, 1) == pytest.approx(1.7)


def test_remaining_budget_hypothesized_type_can_go_negative():
    assert remaining_budget(Ledger((5,)), 1.0, 1.6, 0.1, 1) == pytest.approx(-3.3)


def test_max_affordable_pool_cap():
    assert max_affordable_edges(Ledger(), 0.1, 2.0, 0.2, 0, 5) == 5


def test_max_affordable_insufficient_for_one():
    assert max_affordable_edges(Ledger(), 0.1, 0.09, 1.0, 0, 5) == 0


def test_max_affordable_floor():
    assert max_affordable_edges(Ledger(), 0.5, 1.0, 1.0, 0, 10) == 2


def test_max_affordable_negative_budget_clamps():
    assert max_affordable_edges(Ledger((5,)), 1.0, 1.6, 0.1, 1, 5) == 0


def test_max_affordable_monotone_in_k():
    ledger = Ledger((3,))
    caps = [max_affordable_edges(ledger, 0.2, 1.0, 0.15, k, 50) for k in range(1, 12)]
    assert caps == sorted(caps)


def test_feasibility_type_monotone():
    ledger = Ledger((2, 1))
    for k in range(2, 8):
        hi = max_affordable_edges(ledger, 0.8, 1.5, 0.2, k, 10)
        lo = max_affordable_edges(ledger, 0.3, 1.5, 0.2, k, 10)
        assert lo >= hi


def test_record_action_appends():
    led = record_action(Ledger(), 5, PlayerSpec(0.1, 0.1, 1.0, 2.0, 0.2))
    assert led.counts == (5,)
    led = record_action(led, 0, PlayerSpec(0.1, 0.1, 1.0, 2.0, 0.2))
    assert led.counts == (5, 0)


def test_record_action_rejects_overspend():
    spec = PlayerSpec(1.0, 0.5, 1.0, 2.0, 0.2)
    with pytest.raises(BudgetViolation):
        record_action(Ledger(), 3, spec)


def test_player_spec_validation():
    with pytest.raises(ValueError):
        PlayerSpec(0.3, 0.1, 1.0, 2.0, 0.2)  # beta_true not a candidate
    with pytest.raises(ValueError):
        PlayerSpec(0.5, 0.5, 0.5, 2.0, 0.2)  # candidates not ordered
    with pytest.raises(ValueError):
        PlayerSpec(0.5, 0.5, 1.0, -1.0, 0.2)
    with pytest.raises(ValueError):
        PlayerSpec(0.5, 0.5, 1.0, 2.0, 0.0)


def test_ledger_rejects_negative_counts():
    with pytest.raises(ValueError):
        Ledger((-1,))

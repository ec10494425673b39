import json

import pytest

import deckbal


def test_random_deck_is_valid_and_scored():
    deck = deckbal.random_valid_deck(32, 4, seed=7)
    assert len(deck) == 32 and all(len(row) == 4 for row in deck)
    assert deckbal.deck_is_valid(deck)
    fd = deckbal.dominance_objective(deck)
    assert -31.0 <= fd <= 0.0
    hv, sd = deckbal.surrogate_objectives(deck)
    assert hv < 0.0 and sd <= 0.0


def test_simulate_is_deterministic():
    deck = deckbal.random_valid_deck(seed=3)
    a = deckbal.simulate(deck, games=300, seed=11)
    b = deckbal.simulate(deck, games=300, seed=11)
    assert a == b
    assert a["games"] == 300
    assert a["win_rate4"] + a["draw_rate"] + a["loss_rate"] == pytest.approx(1.0)


def test_hypervolume_hand_values():
    pts = [[1, 3], [2, 2], [3, 1]]
    assert deckbal.hypervolume(pts, [4, 4]) == 6.0
    assert deckbal.hv_contributions(pts, [4, 4]) == [1.0, 1.0, 1.0]
    assert deckbal.nondominated_sort([[1, 1], [2, 2], [0, 3]]) == [1, 2, 1]


def test_indicators_zero_on_reference():
    ref = [[1.0, 4.0], [2.0, 2.0], [4.0, 1.0]]
    v = deckbal.normalized_indicators(ref, ref)
    assert v["hv"] == pytest.approx(0.0)
    assert v["eps"] == pytest.approx(0.0)


def test_eaf_identical_groups():
    fronts = [[[1.0, 2.0], [2.0, 1.0]], [[1.5, 1.5]]]
    assert deckbal.attainment_surface(fronts[:1], 0.5) == fronts[0]
    res = deckbal.eaf_test(fronts, fronts, permutations=200, seed=5)
    assert res["statistic"] == 0
    assert not res["reject"]


def test_optimize_dominance_run():
    run = deckbal.optimize("D", mu=10, evals=400, seed=2)
    assert run["n_evals"] <= 400
    assert len(run["population"]) == 10
    assert all(len(ind["genome"]) == 128 for ind in run["population"])


def test_sample_size_rows():
    deck = deckbal.random_valid_deck(seed=9)
    rows = deckbal.sample_size_study(deck, [50, 200], repeats=10, seed=1)
    assert {r[1] for r in rows} == {"win_rate4", "mean_tc", "mean_tightness"}
    by_metric = {}
    for size, metric, hw in rows:
        by_metric.setdefault(metric, []).append((size, hw))
    for series in by_metric.values():
        assert series[0][1] > series[1][1]


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        deckbal.simulate([[1.0, 2.0, 3.0]], games=10)
    with pytest.raises(ValueError):
        deckbal.optimize("X")

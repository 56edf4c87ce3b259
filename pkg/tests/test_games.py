import numpy as np
import pytest

from efgsolve.games import (
    BET_RAISE_GAME_VALUE,
    GameParams,
    UnsupportedParameters,
    asymmetric_reference,
    bet_raise_reference,
    build_asymmetric,
    build_bet_raise,
    hand_position,
)
from efgsolve.tree import LEAF, validate_game


def find_leaf(tree, deal_index, *labels):
    """Follow labelled actions from the post-deal decision node."""
    v = tree.children_of(0)[deal_index]
    for want in labels:
        s = tree.infosets[tree.infoset_id[v]]
        v = tree.children_of(v)[s.action_labels.index(want)]
    assert tree.kind[v] == LEAF
    return float(tree.leaf_util[v])


class TestGameParams:
    def test_pot_is_twice_ante(self):
        assert GameParams(10, 0.5, 1.0).pot == 1.0
        assert GameParams.from_pot(10, 1.0, 1.0).ante == 0.5

    @pytest.mark.parametrize("kwargs", [
        dict(n_hands=1, ante=0.5, bet=1.0),
        dict(n_hands=10, ante=0.0, bet=1.0),
        dict(n_hands=10, ante=0.5, bet=-1.0),
        dict(n_hands=10, ante=0.5, bet=1.0, raise_size=0.0),
        dict(n_hands=10, ante=0.5, bet=1.0, epsilon=-0.1),
    ])
    def test_rejects_bad_params(self, kwargs):
        with pytest.raises(ValueError):
            GameParams(**kwargs)

    def test_epsilon_caps(self):
        with pytest.raises(ValueError):
            build_asymmetric(GameParams(5, 0.5, 1.0, epsilon=0.5))
        with pytest.raises(ValueError):
            build_bet_raise(GameParams(5, 0.5, 1.0, 1.0, epsilon=1 / 3))
        build_asymmetric(GameParams(5, 0.5, 1.0, epsilon=0.49))

    def test_bet_raise_needs_raise_size(self):
        with pytest.raises(ValueError):
            build_bet_raise(GameParams(5, 0.5, 1.0))


class TestBuilders:
    @pytest.mark.parametrize("n", [2, 3, 7, 20])
    def test_both_games_validate(self, n):
        assert validate_game(build_asymmetric(GameParams(n, 0.5, 1.0))).ok
        assert validate_game(build_bet_raise(GameParams(n, 0.5, 1.0, 1.0))).ok

    def test_infoset_counts(self):
        asym = build_asymmetric(GameParams(7, 0.5, 1.0))
        assert len(asym.infosets_of(1)) == 7
        assert len(asym.infosets_of(2)) == 7
        # one set per hand for each decision context: root, facing check,
        # facing bet, facing check-bet, facing raise (two per player beyond
        # the opening)
        br = build_bet_raise(GameParams(7, 0.5, 1.0, 1.0))
        assert len(br.infosets_of(1)) == 21
        assert len(br.infosets_of(2)) == 21

    def test_asym_payoffs(self):
        t = build_asymmetric(GameParams(2, 0.5, 1.0))
        deal_21 = 2  # (i-1)*N + (j-1) with i=2, j=1
        assert find_leaf(t, deal_21, "bet", "call") == 1.5
        assert find_leaf(t, deal_21, "bet", "fold") == 0.5
        assert find_leaf(t, deal_21, "check") == 0.5
        assert find_leaf(t, 0, "check") == 0.0  # tie splits the pot
        assert find_leaf(t, 1, "bet", "call") == -1.5

    def test_bet_raise_payoffs(self):
        t = build_bet_raise(GameParams(2, 0.5, 1.0, 1.0))
        deal_21 = 2  # i=2 > j=1
        assert find_leaf(t, deal_21, "bet", "raise", "call") == 2.5
        assert find_leaf(t, deal_21, "check", "bet", "fold") == -0.5
        assert find_leaf(t, deal_21, "bet", "fold") == 0.5
        assert find_leaf(t, deal_21, "check", "bet", "raise", "fold") == 1.5
        assert find_leaf(t, 0, "check", "check") == 0.0

    def test_leaf_payoff_conservation(self):
        a, b, r = 0.5, 1.0, 1.0
        allowed_asym = {0.0, a, -a, a + b, -(a + b)}
        allowed_br = allowed_asym | {a + b + r, -(a + b + r)}
        asym = build_asymmetric(GameParams(3, a, b))
        br = build_bet_raise(GameParams(3, a, b, r))
        assert set(np.round(asym.leaf_util[asym.leaf_nodes], 12)) <= allowed_asym
        assert set(np.round(br.leaf_util[br.leaf_nodes], 12)) <= allowed_br

    def test_showdown_antisymmetry_in_hands(self):
        # swapping the dealt hands negates the check-showdown payoff
        t = build_asymmetric(GameParams(2, 0.5, 1.0))
        for i in range(2):
            for j in range(2):
                assert (find_leaf(t, 2 * i + j, "check")
                        == -find_leaf(t, 2 * j + i, "check"))


class TestReferences:
    def test_asymmetric_thresholds_at_default_stakes(self):
        ref = asymmetric_reference(0.5, 1.0)
        assert ref.p1_thresholds["x1"] == pytest.approx(1 / 9, abs=1e-15)
        assert ref.p1_thresholds["x2"] == pytest.approx(7 / 9, abs=1e-15)
        assert ref.p2_thresholds["vs_bet"]["y1"] == pytest.approx(5 / 9, abs=1e-15)

    def test_asymmetric_equal_stakes(self):
        ref = asymmetric_reference(1.0, 1.0)
        assert ref.p1_thresholds["x1"] == pytest.approx(0.1, abs=1e-15)

    @pytest.mark.parametrize("a,b", [(0.5, 1.0), (1.0, 1.0), (0.2, 3.0), (2.0, 0.7)])
    def test_asymmetric_thresholds_ascending(self, a, b):
        ref = asymmetric_reference(a, b)
        x1, x2 = ref.p1_thresholds["x1"], ref.p1_thresholds["x2"]
        assert 0 < x1 < x2 < 1

    def test_asymmetric_call_region_mean(self):
        # the equilibrium requires the average call rate over (x1, x2) to be
        # exactly ante/(ante+bet); a single threshold at y1 achieves it
        for a, b in [(0.5, 1.0), (1.0, 1.0), (0.3, 2.0)]:
            ref = asymmetric_reference(a, b)
            x1, x2 = ref.p1_thresholds["x1"], ref.p1_thresholds["x2"]
            y1 = ref.p2_thresholds["vs_bet"]["y1"]
            assert (x2 - y1) / (x2 - x1) == pytest.approx(a / (a + b), abs=1e-12)

    def test_bet_raise_reference_values(self):
        ref = bet_raise_reference()
        p1 = ref.p1_thresholds
        assert p1["x1"] == pytest.approx(64 / 1083, abs=1e-15)
        assert p1["x2"] == pytest.approx(369 / 722, abs=1e-15)
        assert p1["x3"] == pytest.approx(10 / 19, abs=1e-15)
        assert p1["x6"] == pytest.approx(307 / 361, abs=1e-15)
        assert ref.tied_thresholds["x4"] == ("x5", pytest.approx(-32 / 1083))
        assert ref.tied_thresholds["x7"] == ("x8", pytest.approx(-22 / 361))
        vs_check = ref.p2_thresholds["vs_check"]
        assert [vs_check[k] for k in ("y1_check", "y2_check", "y3_check")] \
            == pytest.approx([8 / 57, 41 / 57, 15 / 19])
        vs_bet = ref.p2_thresholds["vs_bet"]
        assert [vs_bet[k] for k in ("y1_bet", "y2_bet", "y3_bet")] \
            == pytest.approx([1 / 2, 10 / 19, 17 / 19])
        assert ref.free_thresholds == ("x5", "x8")
        assert ref.game_value == pytest.approx(-44 / 1083)
        assert BET_RAISE_GAME_VALUE == pytest.approx(-0.0406, abs=5e-5)

    def test_bet_raise_reference_rejects_other_stakes(self):
        with pytest.raises(UnsupportedParameters):
            bet_raise_reference(0.5, 2.0, 1.0)
        with pytest.raises(UnsupportedParameters):
            bet_raise_reference(1.0, 1.0, 1.0)


def test_hand_position_midpoints():
    assert hand_position(1, 100) == pytest.approx(0.005)
    assert hand_position(50, 100) == pytest.approx(0.495)
    assert hand_position(100, 100) == pytest.approx(0.995)

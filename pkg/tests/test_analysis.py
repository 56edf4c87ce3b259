import numpy as np
import pytest

import oracles
from conftest import matching_pennies, matrix_game
from efgsolve.analysis import (
    best_response_values,
    exploitability,
    find_crossings,
    hand_curve,
    matrix_fp,
    nearest_crossing,
    normal_form_fp_oracle,
    payoff_matrix,
    utility_gap_report,
)
from efgsolve.evaluate import StrategySpaceTooLarge, expected_value
from efgsolve.solvers import make_solver, reportable_profile
from efgsolve.tree import BehaviorProfile, GameTree, decision, leaf


def test_exploitability_nonnegative(betraise2, rng):
    for _ in range(10):
        prof = BehaviorProfile.random(betraise2, rng)
        assert exploitability(betraise2, prof) >= -1e-9


def test_matching_pennies_uniform_is_exact():
    t = matching_pennies()
    assert exploitability(t, BehaviorProfile.uniform(t)) == pytest.approx(0.0, abs=1e-12)


def test_one_sided_deviation_matches_enumeration(asym2):
    prof = BehaviorProfile.uniform(asym2)
    prof["P2|h=1|b"] = [1.0, 0.0]  # always fold
    prof["P2|h=2|b"] = [1.0, 0.0]
    got = exploitability(asym2, prof)
    want = oracles.exploitability(asym2, prof.probs)
    assert got == pytest.approx(want, abs=1e-12)
    assert got > 0.1


def test_value_sandwiched_by_best_responses(betraise2, rng):
    for _ in range(5):
        prof = BehaviorProfile.random(betraise2, rng)
        v = expected_value(betraise2, prof)
        br1, br2 = best_response_values(betraise2, prof)
        assert -br2 - 1e-12 <= v <= br1 + 1e-12


def test_constrained_exploitability_is_no_larger(asym3, rng):
    prof = BehaviorProfile.random(asym3, rng)
    assert (exploitability(asym3, prof, epsilon=0.05)
            <= exploitability(asym3, prof) + 1e-12)


def test_zero_exploitability_implies_zero_gaps():
    t = matching_pennies()
    prof = BehaviorProfile.uniform(t)
    pairs = {s.key: (s.action_labels[0], s.action_labels[1]) for s in t.infosets}
    rep = utility_gap_report(t, prof, pairs)
    for row in rep.rows:
        assert row.reachable
        assert row.gap == pytest.approx(0.0, abs=1e-12)


def test_gap_positive_for_call_against_value_bet(asym2):
    # P1 bets only the best hand; holding the same top hand, P2's call is
    # worth more than folding (ties split, folding forfeits the ante)
    prof = BehaviorProfile.uniform(asym2)
    prof["P1|h=1|"] = [1.0, 0.0]
    prof["P1|h=2|"] = [0.0, 1.0]
    rep = utility_gap_report(asym2, prof, {"P2|h=2|b": ("call", "fold")})
    (row,) = rep.rows
    assert row.reachable
    assert row.gap > 0


def test_gap_flags_unreachable(asym2):
    prof = BehaviorProfile.uniform(asym2)
    prof["P1|h=1|"] = [1.0, 0.0]
    prof["P1|h=2|"] = [1.0, 0.0]
    rep = utility_gap_report(asym2, prof, {"P2|h=1|b": ("call", "fold")})
    assert not rep.rows[0].reachable
    assert rep.rows[0].gap is None


def test_all_zero_payoffs_all_gaps_zero():
    t = GameTree.from_root(
        decision(1, "P1|h=0|", ("a", "b"),
                 [decision(2, "P2|h=0|", ("c", "d"), [leaf(0.0), leaf(0.0)]),
                  decision(2, "P2|h=0|", ("c", "d"), [leaf(0.0), leaf(0.0)])]))
    prof = BehaviorProfile.uniform(t)
    rep = utility_gap_report(t, prof, {"P1|h=0|": ("a", "b"), "P2|h=0|": ("c", "d")})
    assert all(r.gap == 0.0 for r in rep.rows)


class TestNormalFormOracle:
    def test_payoff_matrix_matches_bilinear_oracle(self, asym2):
        m = payoff_matrix(asym2)
        assert m.shape == (4, 4)

    def test_matrix_fp_matching_pennies(self):
        v, x, y = matrix_fp(np.array([[1.0, -1.0], [-1.0, 1.0]]), 10**5)
        assert v == pytest.approx(0.0, abs=0.01)
        assert np.allclose(x, 0.5, atol=0.01)
        assert np.allclose(y, 0.5, atol=0.01)

    def test_matrix_fp_dominant_strategy(self):
        # row 0 dominates; column 1 is the minimizer's reply
        m = np.array([[3.0, 1.0], [0.0, -1.0]])
        v, x, y = matrix_fp(m, 2000)
        assert x[0] > 0.99
        assert y[1] > 0.99
        assert v == pytest.approx(1.0, abs=0.01)

    def test_oracle_agrees_with_all_solvers(self, asym2):
        ov, _ = normal_form_fp_oracle(asym2, 10**5)
        for alg in ("gxfp", "xfp", "cfr"):
            state = make_solver(alg, asym2)
            for _ in range(5000):
                state.step("alternating")
            prof = reportable_profile(state)
            assert expected_value(asym2, prof) == pytest.approx(ov, abs=0.01)
            assert exploitability(asym2, prof) <= 0.01

    def test_size_cap(self):
        big = matrix_game(np.zeros((5, 5)))
        with pytest.raises(StrategySpaceTooLarge):
            normal_form_fp_oracle(big, 10, cap=4)


class TestCurves:
    def test_hand_curve_reads_profile(self, asym2):
        prof = BehaviorProfile.uniform(asym2)
        prof["P1|h=2|"] = [0.2, 0.8]
        curve = hand_curve(prof, 1, "", "bet", 2)
        assert curve == pytest.approx([0.5, 0.8])

    def test_find_crossings_interpolates(self):
        vals = np.array([0.0, 0.25, 0.75, 1.0])
        (c,) = find_crossings(vals)
        # crossing between hands 2 and 3, halfway
        assert c == pytest.approx(2.5)

    def test_find_crossings_multiple(self):
        vals = np.array([0.9, 0.1, 0.9])
        assert len(find_crossings(vals)) == 2

    def test_nearest_crossing(self):
        vals = np.array([0.9, 0.1, 0.9, 0.1])
        assert nearest_crossing(vals, target=3.0) == pytest.approx(2.5)
        assert nearest_crossing(np.array([0.6, 0.7]), target=1.0) is None

import numpy as np
import pytest

from efgsolve.games import GameParams, build_asymmetric, build_bet_raise
from efgsolve.tree import BehaviorProfile, GameTree, chance, decision, leaf


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def asym2():
    return build_asymmetric(GameParams(2, 0.5, 1.0))


@pytest.fixture(scope="session")
def asym3():
    return build_asymmetric(GameParams(3, 0.5, 1.0))


@pytest.fixture(scope="session")
def betraise2():
    return build_bet_raise(GameParams(2, 0.5, 1.0, 1.0))


@pytest.fixture(scope="session")
def betraise3():
    return build_bet_raise(GameParams(3, 0.5, 1.0, 1.0))


def matrix_game(m) -> GameTree:
    """Embed a matrix game: P1 picks a row, P2 picks a column blind."""
    m = np.asarray(m, dtype=float)
    rows, cols = m.shape
    col_labels = tuple(f"c{j}" for j in range(cols))
    branches = [
        decision(2, "P2|h=0|", col_labels, [leaf(m[i, j]) for j in range(cols)])
        for i in range(rows)
    ]
    return GameTree.from_root(
        decision(1, "P1|h=0|", tuple(f"r{i}" for i in range(rows)), branches))


def matching_pennies() -> GameTree:
    return matrix_game([[1.0, -1.0], [-1.0, 1.0]])


def random_profile(tree: GameTree, rng) -> BehaviorProfile:
    return BehaviorProfile.random(tree, rng)

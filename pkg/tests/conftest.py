"""Shared fixtures and seeded random-instance generators."""

from fractions import Fraction

import pytest

from credal import (
    Assessment,
    DecisionProblem,
    Gamble,
    LowerPrevisionModel,
    PossibilitySpace,
)


def rational(rng, span=4, max_den=6):
    """Small random Fraction; modest denominators keep exact pivots fast."""
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * den, span * den), den)


def mass_function(rng, n):
    weights = [rng.randint(0, 5) for _ in range(n)]
    if not any(weights):
        weights[rng.randrange(n)] = 1
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


def random_space(rng, max_states=4):
    n = rng.randint(2, max_states)
    return PossibilitySpace(tuple(f"s{i}" for i in range(1, n + 1)))


def random_gamble(rng, space):
    return Gamble(space, tuple(rational(rng) for _ in space.states))


def anchored_model(rng, space, max_assessments=3):
    """Random model that avoids sure loss by construction.

    A hidden anchor mass function satisfies every assessment with
    nonnegative slack, so the credal set always contains the anchor.
    Zero slack leaves assessments tight; the models are not necessarily
    coherent, which is exactly the variety the properties need.
    """
    anchor = mass_function(rng, len(space))
    assessments = []
    for _ in range(rng.randint(0, max_assessments)):
        gamble = random_gamble(rng, space)
        value = sum((p * v for p, v in zip(anchor, gamble.values)), Fraction(0))
        slack = Fraction(rng.randint(0, 4), 4)
        assessments.append(Assessment(gamble, value - slack))
    return LowerPrevisionModel(space, assessments)


def random_problem(rng, space, max_decisions=6):
    count = rng.randint(1, max_decisions)
    return DecisionProblem(
        space, {f"d{i}": random_gamble(rng, space) for i in range(1, count + 1)}
    )


@pytest.fixture
def coin_space():
    return PossibilitySpace(("H", "T"))


@pytest.fixture
def coin_model(coin_space):
    heads = Gamble.indicator(coin_space, "H")
    return LowerPrevisionModel(
        coin_space,
        (
            Assessment(heads, Fraction(7, 25)),
            Assessment.from_upper(heads, Fraction(7, 10)),
        ),
    )


@pytest.fixture
def coin_problem(coin_space):
    return DecisionProblem(
        coin_space,
        {
            "1": Gamble(coin_space, (4, 0)),
            "2": Gamble(coin_space, (0, 4)),
            "3": Gamble(coin_space, (3, 2)),
            "4": Gamble(coin_space, (Fraction(1, 2), 3)),
            "5": Gamble(coin_space, (Fraction(47, 20), Fraction(47, 20))),
            "6": Gamble(coin_space, (Fraction(41, 10), Fraction(-3, 10))),
        },
    )

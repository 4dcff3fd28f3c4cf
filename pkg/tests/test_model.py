import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from credal import (
    DecisionProblem,
    Gamble,
    ModelError,
    PossibilitySpace,
    admissible_set,
    as_scalar,
    gamble_combine,
    pointwise_dominates,
)

from conftest import random_gamble, random_problem, random_space


class TestAsScalar:
    def test_exact_decimal_string(self):
        assert as_scalar("0.28") == Fraction(7, 25)

    def test_rational_string(self):
        assert as_scalar("47/20") == Fraction(47, 20)

    def test_scientific_string(self):
        assert as_scalar("1e-2") == Fraction(1, 100)

    def test_int_and_fraction_pass_through(self):
        assert as_scalar(3) == Fraction(3)
        assert as_scalar(Fraction(-2, 7)) == Fraction(-2, 7)

    @pytest.mark.parametrize("bad", [True, False, 0.28, "abc", "1/0", None, [1]])
    def test_rejects_non_exact_values(self, bad):
        with pytest.raises(ModelError):
            as_scalar(bad)


class TestPossibilitySpace:
    def test_order_and_index(self):
        space = PossibilitySpace(("H", "T"))
        assert len(space) == 2
        assert space.index("T") == 1

    def test_unknown_state(self):
        with pytest.raises(ModelError):
            PossibilitySpace(("H", "T")).index("X")

    @pytest.mark.parametrize("states", [(), ("H", "H"), ("H", ""), ("H", 2)])
    def test_invalid_spaces(self, states):
        with pytest.raises(ModelError):
            PossibilitySpace(states)


class TestGamble:
    def test_from_mapping_orders_by_space(self, coin_space):
        g = Gamble.from_mapping(coin_space, {"T": 2, "H": "1/2"})
        assert g.values == (Fraction(1, 2), Fraction(2))

    def test_from_mapping_missing_state(self, coin_space):
        with pytest.raises(ModelError, match="missing value for state 'T'"):
            Gamble.from_mapping(coin_space, {"H": 1})

    def test_from_mapping_unknown_state(self, coin_space):
        with pytest.raises(ModelError, match="unknown state 'X'"):
            Gamble.from_mapping(coin_space, {"H": 1, "T": 0, "X": 2})

    def test_wrong_arity(self, coin_space):
        with pytest.raises(ModelError):
            Gamble(coin_space, (1, 2, 3))

    def test_constant_and_indicator(self, coin_space):
        assert Gamble.constant(coin_space, "47/20").values == (Fraction(47, 20),) * 2
        assert Gamble.indicator(coin_space, "H").values == (1, 0)
        assert Gamble.indicator(coin_space, ("H", "T")).values == (1, 1)
        with pytest.raises(ModelError):
            Gamble.indicator(coin_space, ("X",))

    def test_indicator_treats_a_bare_string_as_one_state(self):
        space = PossibilitySpace(("s1", "s2"))
        assert Gamble.indicator(space, "s1").values == (1, 0)
        with pytest.raises(ModelError):
            Gamble.indicator(space, "Q")

    def test_arithmetic(self, coin_space):
        f = Gamble(coin_space, (4, 0))
        g = Gamble(coin_space, (3, 2))
        assert (f - g).values == (1, -2)
        assert (f + g).values == (7, 2)
        assert (-f).values == (-4, 0)
        assert (Fraction(1, 2) * f).values == (2, 0)
        assert f.shift(1).values == (5, 1)
        assert gamble_combine(f, g, 2, -1).values == (5, -2)

    def test_cross_space_arithmetic_rejected(self, coin_space):
        other = PossibilitySpace(("A", "B"))
        with pytest.raises(ModelError):
            Gamble(coin_space, (1, 0)) + Gamble(other, (1, 0))

    def test_value_and_mapping(self, coin_space):
        g = Gamble(coin_space, ("4.1", "-0.3"))
        assert g.value("T") == Fraction(-3, 10)
        assert g.as_mapping() == {"H": Fraction(41, 10), "T": Fraction(-3, 10)}


class TestDominance:
    def test_strict_everywhere(self, coin_space):
        assert pointwise_dominates(Gamble(coin_space, (2, 2)), Gamble(coin_space, (1, 1)))

    def test_weak_with_one_strict(self, coin_space):
        assert pointwise_dominates(Gamble(coin_space, (2, 1)), Gamble(coin_space, (1, 1)))

    def test_equal_never_dominates(self, coin_space):
        g = Gamble(coin_space, (1, 1))
        assert not pointwise_dominates(g, g)

    def test_incomparable(self, coin_space):
        f = Gamble(coin_space, (4, 0))
        g = Gamble(coin_space, (0, 4))
        assert not pointwise_dominates(f, g)
        assert not pointwise_dominates(g, f)


class TestDecisionProblem:
    def test_ids_keep_insertion_order(self, coin_problem):
        assert coin_problem.ids == ("1", "2", "3", "4", "5", "6")

    def test_unknown_id(self, coin_problem):
        with pytest.raises(ModelError):
            coin_problem.gamble("7")

    def test_restrict_keeps_problem_order(self, coin_problem):
        sub = coin_problem.restrict(("5", "1", "3"))
        assert sub.ids == ("1", "3", "5")

    def test_empty_rejected(self, coin_space):
        with pytest.raises(ModelError):
            DecisionProblem(coin_space, {})

    def test_cross_space_decision_rejected(self, coin_space):
        other = PossibilitySpace(("A", "B"))
        with pytest.raises(ModelError):
            DecisionProblem(coin_space, {"d": Gamble(other, (1, 0))})


class TestAdmissibleSet:
    def test_coin_problem_has_no_dominated_decisions(self, coin_problem):
        assert admissible_set(coin_problem) == ("1", "2", "3", "4", "5", "6")

    def test_dominated_decision_removed(self, coin_space):
        problem = DecisionProblem(
            coin_space,
            {"a": Gamble(coin_space, (1, 1)), "b": Gamble(coin_space, (2, 1))},
        )
        assert admissible_set(problem) == ("b",)

    def test_identical_gambles_survive_together(self, coin_space):
        g = Gamble(coin_space, (1, 1))
        problem = DecisionProblem(coin_space, {"a": g, "b": g, "c": Gamble(coin_space, (0, 0))})
        assert admissible_set(problem) == ("a", "b")

    def test_never_empty_on_random_problems(self):
        rng = random.Random(1905)
        for _ in range(200):
            space = random_space(rng)
            problem = random_problem(rng, space)
            ids = admissible_set(problem)
            assert ids
            # nothing admissible is dominated by anything in the problem
            for d in ids:
                assert not any(
                    pointwise_dominates(problem.gamble(e), problem.gamble(d))
                    for e in problem.ids
                )


@st.composite
def gamble_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    space = PossibilitySpace(tuple(f"s{i}" for i in range(n)))
    nums = st.integers(min_value=-8, max_value=8)
    dens = st.integers(min_value=1, max_value=5)
    values = st.tuples(*([st.builds(Fraction, nums, dens)] * n))
    return space, Gamble(space, draw(values)), Gamble(space, draw(values))


@given(gamble_pairs())
def test_dominance_is_a_strict_partial_order(pair):
    space, f, g = pair
    assert not pointwise_dominates(f, f)
    # antisymmetry
    assert not (pointwise_dominates(f, g) and pointwise_dominates(g, f))


@given(gamble_pairs())
def test_dominance_respects_shift_and_scale(pair):
    space, f, g = pair
    before = pointwise_dominates(f, g)
    assert pointwise_dominates(f.shift(3), g.shift(3)) == before
    assert pointwise_dominates(Fraction(2, 3) * f, Fraction(2, 3) * g) == before


def test_random_gamble_generator_respects_space():
    rng = random.Random(7)
    space = random_space(rng)
    g = random_gamble(rng, space)
    assert g.space == space and len(g.values) == len(space)

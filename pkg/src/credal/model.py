"""Possibility spaces, gambles, decision problems, and admissibility.

All payoffs are exact rationals (:class:`fractions.Fraction`); there is no
floating point anywhere in the pipeline, so set-valued answers can be
compared with ``==`` and never flip on rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

ScalarLike = Union[Fraction, int, str]


class ModelError(ValueError):
    """Invalid model construction or mismatched spaces."""


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce to an exact rational.

    Accepts Fraction, int, or an exact string ("3", "0.28", "47/20").
    Floats are rejected: they carry binary rounding and would poison the
    exact arithmetic downstream.
    """
    if isinstance(value, bool):
        raise ModelError(f"expected a number, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"not an exact rational: {value!r}") from exc
    if isinstance(value, float):
        raise ModelError(
            f"refusing float {value!r}: pass an int, Fraction, or decimal string"
        )
    raise ModelError(f"expected a number, got {type(value).__name__}")


@dataclass(frozen=True)
class PossibilitySpace:
    """Finite set of mutually exclusive states, in a fixed order."""

    states: tuple[str, ...]

    def __init__(self, states: Iterable[str]):
        object.__setattr__(self, "states", tuple(states))
        if not self.states:
            raise ModelError("possibility space must have at least one state")
        seen = set()
        for label in self.states:
            if not isinstance(label, str) or not label:
                raise ModelError(f"state labels must be non-empty strings, got {label!r}")
            if label in seen:
                raise ModelError(f"duplicate state label {label!r}")
            seen.add(label)

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise ModelError(f"unknown state {state!r}") from None


@dataclass(frozen=True)
class Gamble:
    """An uncertain payoff: one exact utility per state of a space."""

    space: PossibilitySpace
    values: tuple[Fraction, ...]

    def __init__(self, space: PossibilitySpace, values: Iterable[ScalarLike]):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in values))
        if len(self.values) != len(space):
            raise ModelError(
                f"gamble has {len(self.values)} values for {len(space)} states"
            )

    @classmethod
    def from_mapping(
        cls, space: PossibilitySpace, mapping: Mapping[str, ScalarLike]
    ) -> "Gamble":
        """Build from a state-label map; every state must be covered."""
        for state in mapping:
            if state not in space.states:
                raise ModelError(f"unknown state {state!r}")
        missing = [s for s in space.states if s not in mapping]
        if missing:
            raise ModelError(f"missing value for state {missing[0]!r}")
        return cls(space, (mapping[s] for s in space.states))

    @classmethod
    def constant(cls, space: PossibilitySpace, value: ScalarLike) -> "Gamble":
        c = as_scalar(value)
        return cls(space, (c,) * len(space))

    @classmethod
    def indicator(
        cls, space: PossibilitySpace, event: Union[str, Iterable[str]]
    ) -> "Gamble":
        """1 on the given state (or states), 0 elsewhere."""
        inside = {event} if isinstance(event, str) else set(event)
        unknown = inside - set(space.states)
        if unknown:
            raise ModelError(f"unknown state {sorted(unknown)[0]!r}")
        return cls(space, (Fraction(int(s in inside)) for s in space.states))

    def value(self, state: str) -> Fraction:
        return self.values[self.space.index(state)]

    def as_mapping(self) -> dict[str, Fraction]:
        return dict(zip(self.space.states, self.values))

    def __neg__(self) -> "Gamble":
        return Gamble(self.space, (-v for v in self.values))

    def __add__(self, other: "Gamble") -> "Gamble":
        return gamble_combine(self, other, Fraction(1), Fraction(1))

    def __sub__(self, other: "Gamble") -> "Gamble":
        return gamble_combine(self, other, Fraction(1), Fraction(-1))

    def __rmul__(self, scalar: ScalarLike) -> "Gamble":
        a = as_scalar(scalar)
        return Gamble(self.space, (a * v for v in self.values))

    def shift(self, constant: ScalarLike) -> "Gamble":
        c = as_scalar(constant)
        return Gamble(self.space, (v + c for v in self.values))


def _check_same_space(f: Gamble, g: Gamble) -> None:
    if f.space != g.space:
        raise ModelError("gambles are defined on different possibility spaces")


def gamble_combine(f: Gamble, g: Gamble, a: ScalarLike, b: ScalarLike) -> Gamble:
    """Pointwise linear combination a*f + b*g on a shared space."""
    _check_same_space(f, g)
    a = as_scalar(a)
    b = as_scalar(b)
    return Gamble(f.space, (a * x + b * y for x, y in zip(f.values, g.values)))


def pointwise_dominates(f: Gamble, g: Gamble) -> bool:
    """True iff f >= g in every state and f > g in at least one.

    Equality is not dominance: a gamble never dominates itself.
    """
    _check_same_space(f, g)
    return all(x >= y for x, y in zip(f.values, g.values)) and f.values != g.values


@dataclass(frozen=True)
class DecisionProblem:
    """Named decisions with their gain gambles over one shared space.

    The state's distribution does not depend on the chosen decision, so a
    decision is fully described by its gamble.
    """

    space: PossibilitySpace
    decisions: dict[str, Gamble]

    def __init__(self, space: PossibilitySpace, decisions: Mapping[str, Gamble]):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "decisions", dict(decisions))
        if not self.decisions:
            raise ModelError("decision problem must have at least one decision")
        for name, gamble in self.decisions.items():
            if not isinstance(name, str) or not name:
                raise ModelError(f"decision ids must be non-empty strings, got {name!r}")
            if gamble.space != space:
                raise ModelError(f"decision {name!r} uses a different space")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self.decisions)

    def gamble(self, decision_id: str) -> Gamble:
        try:
            return self.decisions[decision_id]
        except KeyError:
            raise ModelError(f"unknown decision id {decision_id!r}") from None

    def restrict(self, ids: Iterable[str]) -> "DecisionProblem":
        """Sub-problem keeping only the given ids, in problem order."""
        keep = set(ids)
        return DecisionProblem(
            self.space, {d: g for d, g in self.decisions.items() if d in keep}
        )


def admissible_set(problem: DecisionProblem) -> tuple[str, ...]:
    """Ids whose gambles no other decision pointwise-dominates.

    Decisions with identical gambles survive together, so the result is
    never empty. Ids come back in the problem's insertion order.
    """
    gambles = problem.decisions
    return tuple(
        d
        for d in gambles
        if not any(pointwise_dominates(gambles[e], gambles[d]) for e in gambles)
    )

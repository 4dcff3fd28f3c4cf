"""Optimality criteria for decision problems under a lower prevision model.

Every criterion first restricts attention to the admissible decisions and
returns the full set of optimal ids, never breaking ties. Expected-utility
maximization needs a single mass function; the other criteria rank by lower
and upper natural extensions or by feasibility over the credal set, so each
answer comes with a checkable certificate: an expectation interval, a
dominating rival with its margin, or a credal measure.

The pipeline entry point can run the cheap interval-dominance elimination
first; that prefilter never changes the resulting optimal set, only the
amount of linear programming spent in the criterion stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .lp import EQ, GE, Constraint, LinearProgram, count_solves, solve
from .model import DecisionProblem, Gamble, ModelError, ScalarLike, admissible_set
from .prevision import (
    LowerPrevisionModel,
    SureLossError,
    build_credal_set,
    expectation,
    natural_extension_lower,
    natural_extension_upper,
    probability_vector,
    sure_loss_certificate,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PrefilterError(ModelError):
    """Prefilter requested for a criterion it cannot speed up."""


@dataclass(frozen=True)
class CredalMeasure:
    """A mass function in the credal set certifying a criterion verdict."""

    mu: tuple[Fraction, ...]


@dataclass(frozen=True)
class DominatingPair:
    """A rival decision preferred to the rejected one by a positive margin."""

    winner: str
    margin: Fraction


@dataclass(frozen=True)
class Bounds:
    """Lower and upper expectation of one decision's gamble."""

    lower: Fraction
    upper: Fraction


Witness = Union[CredalMeasure, DominatingPair, Bounds]


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one criterion run.

    optimal and pruned are lexicographically sorted id tuples; witnesses
    maps ids (members or rejects, depending on the criterion) to their
    certificates. lp_solves counts simplex runs in the criterion stage,
    prefilter_solves those spent in the elimination stage if one ran.
    """

    criterion: str
    optimal: tuple[str, ...]
    witnesses: dict[str, Witness] = field(default_factory=dict)
    pruned: tuple[str, ...] = ()
    lp_solves: int = 0
    prefilter_solves: int = 0


def _sorted_dict(items: Mapping[str, Witness]) -> dict[str, Witness]:
    return {key: items[key] for key in sorted(items)}


def _guard(model: LowerPrevisionModel) -> None:
    certificate = sure_loss_certificate(model)
    if certificate is not None:
        raise SureLossError(certificate)


def _check_space(problem: DecisionProblem, model: LowerPrevisionModel) -> None:
    if problem.space != model.space:
        raise ModelError("decision problem and model are on different spaces")


def admissible_result(problem: DecisionProblem) -> CriterionResult:
    """Admissibility as a criterion run: pointwise dominance filtering only."""
    ids = admissible_set(problem)
    return CriterionResult("admissible", tuple(sorted(ids)))


def meu_optimal(
    problem: DecisionProblem,
    mu: Union[Mapping[str, ScalarLike], Sequence[ScalarLike]],
) -> CriterionResult:
    """Maximize expected utility under one precise mass function.

    Returns every admissible id attaining the exact maximum expectation;
    each carries a degenerate Bounds witness holding that expectation.
    """
    mass = probability_vector(problem.space, mu)
    ids = admissible_set(problem)
    values = {d: expectation(mass, problem.gamble(d)) for d in ids}
    top = max(values.values())
    optimal = tuple(sorted(d for d in ids if values[d] == top))
    witnesses = {d: Bounds(values[d], values[d]) for d in optimal}
    return CriterionResult("meu", optimal, _sorted_dict(witnesses))


def _bounds_table(
    problem: DecisionProblem,
    ids: Sequence[str],
    model: LowerPrevisionModel,
) -> dict[str, Bounds]:
    table = {}
    for d in ids:
        gamble = problem.gamble(d)
        table[d] = Bounds(
            natural_extension_lower(model, gamble).value,
            natural_extension_upper(model, gamble).value,
        )
    return table


def _extreme_side(
    problem: DecisionProblem,
    model: LowerPrevisionModel,
    tag: str,
    side: str,
) -> CriterionResult:
    with count_solves() as counter:
        _check_space(problem, model)
        _guard(model)
        ids = admissible_set(problem)
        table = _bounds_table(problem, ids, model)
        scores = {
            d: (b.lower if side == "lower" else b.upper) for d, b in table.items()
        }
        top = max(scores.values())
        optimal = tuple(sorted(d for d in ids if scores[d] == top))
    return CriterionResult(
        tag, optimal, _sorted_dict(table), lp_solves=counter.solves
    )


def gamma_maximin(problem: DecisionProblem, model: LowerPrevisionModel) -> CriterionResult:
    """Decisions whose worst expected gain over the credal set is largest."""
    return _extreme_side(problem, model, "maximin", "lower")


def gamma_maximax(problem: DecisionProblem, model: LowerPrevisionModel) -> CriterionResult:
    """Decisions whose best expected gain over the credal set is largest."""
    return _extreme_side(problem, model, "maximax", "upper")


def maximal_set(problem: DecisionProblem, model: LowerPrevisionModel) -> CriterionResult:
    """Undominated decisions in the strict partial preference order.

    A decision d is rejected as soon as some admissible rival e has a
    strictly positive lower expected advantage over it, that is, when the
    lower natural extension of (rival's gamble minus d's gamble) exceeds
    zero; the first such rival in problem order becomes the DominatingPair
    witness. Everything never rejected is maximal.
    """
    with count_solves() as counter:
        _check_space(problem, model)
        _guard(model)
        ids = admissible_set(problem)
        gambles = {d: problem.gamble(d) for d in ids}
        optimal = []
        witnesses: dict[str, Witness] = {}
        for d in ids:
            for e in ids:
                if e == d:
                    continue
                margin = natural_extension_lower(model, gambles[e] - gambles[d]).value
                if margin > 0:
                    witnesses[d] = DominatingPair(e, margin)
                    break
            else:
                optimal.append(d)
    return CriterionResult(
        "maximal",
        tuple(sorted(optimal)),
        _sorted_dict(witnesses),
        lp_solves=counter.solves,
    )


def interval_dominant_set(
    problem: DecisionProblem, model: LowerPrevisionModel
) -> CriterionResult:
    """Decisions whose upper expectation reaches the best lower expectation.

    Keeps d exactly when no rival's expectation interval lies entirely
    above d's; every admissible id carries its Bounds witness.
    """
    with count_solves() as counter:
        _check_space(problem, model)
        _guard(model)
        ids = admissible_set(problem)
        table = _bounds_table(problem, ids, model)
        threshold = max(b.lower for b in table.values())
        optimal = tuple(sorted(d for d in ids if table[d].upper >= threshold))
    return CriterionResult(
        "interval", optimal, _sorted_dict(table), lp_solves=counter.solves
    )


def e_admissible_set(
    problem: DecisionProblem, model: LowerPrevisionModel
) -> CriterionResult:
    """Decisions optimal in expectation under at least one credal measure.

    One feasibility program per admissible decision d: find a mass
    function in the credal set under which d's expectation is at least
    every admissible rival's. Members carry the found measure as witness.
    """
    with count_solves() as counter:
        _check_space(problem, model)
        _guard(model)
        ids = admissible_set(problem)
        gambles = {d: problem.gamble(d) for d in ids}
        credal = build_credal_set(model)
        base = list(credal.constraints.constraints)
        nonneg = credal.constraints.nonneg
        n = len(problem.space)
        optimal = []
        witnesses: dict[str, Witness] = {}
        for d in ids:
            rows = base + [
                Constraint(
                    tuple(gambles[d].values[x] - gambles[e].values[x] for x in range(n)),
                    GE,
                    _ZERO,
                )
                for e in ids
                if e != d
            ]
            out = solve(LinearProgram((_ZERO,) * n, "max", rows, nonneg))
            if out.is_optimal:
                optimal.append(d)
                witnesses[d] = CredalMeasure(out.point)
    return CriterionResult(
        "eadmissible",
        tuple(sorted(optimal)),
        _sorted_dict(witnesses),
        lp_solves=counter.solves,
    )


@dataclass(frozen=True)
class MixtureDominance:
    """A randomized strategy beating the target in every credal vertex.

    weights is a sparse probability vector over admissible decision ids;
    margin is the least expected advantage of the mixture over the target
    across the credal set's vertices, and is strictly positive.
    """

    target: str
    weights: dict[str, Fraction]
    margin: Fraction


def mixture_dominance(
    problem: DecisionProblem,
    model: LowerPrevisionModel,
    target: str,
) -> Optional[MixtureDominance]:
    """Best randomized rival to the target, or None when none beats it.

    Solves the zero-sum game of mixture weights against credal vertices:
    maximize the worst-vertex expected advantage of the mixture over the
    target. A strictly positive value certifies the target leaves the
    optimal set once randomized strategies are allowed; value zero or
    less (always attainable via the target itself) returns None.
    """
    _check_space(problem, model)
    _guard(model)
    target_gamble = problem.gamble(target)
    ids = admissible_set(problem)
    if target not in ids:
        raise ModelError(f"target {target!r} is not admissible")
    vertices = build_credal_set(model).vertices()
    # variables: one weight per admissible id, then the game value (free)
    rows = [
        Constraint(
            tuple(expectation(v, problem.gamble(e)) for e in ids) + (-_ONE,),
            GE,
            expectation(v, target_gamble),
        )
        for v in vertices
    ]
    rows.append(Constraint((_ONE,) * len(ids) + (_ZERO,), EQ, _ONE))
    out = solve(
        LinearProgram(
            objective=(_ZERO,) * len(ids) + (_ONE,),
            sense="max",
            constraints=rows,
            nonneg=(True,) * len(ids) + (False,),
        )
    )
    if not out.is_optimal:
        raise ModelError("mixture game failed to solve")
    if out.value <= 0:
        return None
    weights = {e: w for e, w in zip(ids, out.point) if w != 0}
    return MixtureDominance(target, {k: weights[k] for k in sorted(weights)}, out.value)


_PIPELINE = {
    "maximin": gamma_maximin,
    "maximax": gamma_maximax,
    "maximal": maximal_set,
    "interval": interval_dominant_set,
    "eadmissible": e_admissible_set,
}

_PREFILTERABLE = ("maximal", "eadmissible")


def run_pipeline(
    problem: DecisionProblem,
    model: LowerPrevisionModel,
    criterion: str,
    prefilter: bool = False,
) -> CriterionResult:
    """Run one criterion, optionally after interval-dominance elimination.

    The prefilter drops every admissible decision whose upper expectation
    falls short of the best lower expectation, then runs the criterion on
    the survivors. It is only available for the two criteria whose work
    it can reduce without changing the answer; the optimal set is always
    identical with and without it. Pruned ids keep Bounds witnesses from
    the elimination stage.
    """
    if criterion not in _PIPELINE:
        raise ModelError(f"unknown criterion tag {criterion!r}")
    if not prefilter:
        return _PIPELINE[criterion](problem, model)
    if criterion not in _PREFILTERABLE:
        raise PrefilterError(
            f"prefilter applies to {' and '.join(_PREFILTERABLE)}, not {criterion!r}"
        )
    _check_space(problem, model)
    with count_solves() as pre:
        ids = admissible_set(problem)
        table = _bounds_table(problem, ids, model)
        threshold = max(b.lower for b in table.values())
        survivors = [d for d in ids if table[d].upper >= threshold]
    pruned = tuple(sorted(d for d in ids if table[d].upper < threshold))
    result = _PIPELINE[criterion](problem.restrict(survivors), model)
    witnesses: dict[str, Witness] = {d: table[d] for d in pruned}
    witnesses.update(result.witnesses)
    return replace(
        result,
        pruned=pruned,
        prefilter_solves=pre.solves,
        witnesses=_sorted_dict(witnesses),
    )

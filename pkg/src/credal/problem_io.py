"""Problem file parsing and serialization.

A problem file is one JSON document: a possibility space, an optional list
of price assessments, and a map of decisions to gain gambles. All numbers
are read exactly: integers, decimal strings like "0.28", rational strings
like "47/20", and bare JSON decimals (intercepted before any float is
built). Binary floating point never enters.

Serialization is canonical (integers as JSON numbers, everything else as
"p/q" strings, upper assessments normalized away), so serialize(parse(x))
is idempotent after the first round.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Optional, Union

from .model import Gamble, ModelError, PossibilitySpace
from .prevision import Assessment, LowerPrevisionModel
from .model import DecisionProblem


class ProblemError(ValueError):
    """Malformed or invalid problem input."""


def _reject_constant(name: str) -> Fraction:
    raise ProblemError(f"non-finite number {name!r} is not allowed")


def _decode(text: str, what: str) -> object:
    try:
        return json.loads(text, parse_float=Fraction, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ProblemError(
            f"invalid JSON in {what} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _scalar(node: object, where: str) -> Fraction:
    if isinstance(node, bool):
        raise ProblemError(f"{where}: booleans are not numbers")
    if isinstance(node, (int, Fraction)):
        return Fraction(node)
    if isinstance(node, str):
        try:
            return Fraction(node)
        except (ValueError, ZeroDivisionError):
            raise ProblemError(f"{where}: not an exact rational: {node!r}") from None
    if isinstance(node, float):
        raise ProblemError(f"{where}: floats are not accepted, use a decimal string")
    raise ProblemError(f"{where}: expected a number or rational string")


def _parse_gamble(space: PossibilitySpace, node: object, where: str) -> Gamble:
    if not isinstance(node, dict):
        raise ProblemError(f"{where}: expected an object mapping states to numbers")
    values = {}
    for state, raw in node.items():
        if state not in space.states:
            raise ProblemError(f"{where}: unknown state {state!r}")
        values[state] = _scalar(raw, f"{where}, state {state!r}")
    for state in space.states:
        if state not in values:
            raise ProblemError(f"{where}: missing value for state {state!r}")
    return Gamble(space, (values[s] for s in space.states))


def _parse_assessment(space: PossibilitySpace, entry: object, index: int) -> Assessment:
    where = f"assessment {index}"
    if not isinstance(entry, dict):
        raise ProblemError(f"{where}: expected an object")
    unknown = set(entry) - {"gamble", "lower", "upper"}
    if unknown:
        raise ProblemError(f"{where}: unknown key {sorted(unknown)[0]!r}")
    if "gamble" not in entry:
        raise ProblemError(f"{where}: missing 'gamble'")
    if ("lower" in entry) == ("upper" in entry):
        raise ProblemError(f"{where}: exactly one of 'lower' or 'upper' is required")
    gamble = _parse_gamble(space, entry["gamble"], where)
    if "lower" in entry:
        return Assessment(gamble, _scalar(entry["lower"], f"{where}: lower"))
    return Assessment.from_upper(gamble, _scalar(entry["upper"], f"{where}: upper"))


@dataclass(frozen=True)
class ProblemFile:
    """A validated problem: space, normalized assessments, decisions."""

    space: PossibilitySpace
    assessments: tuple[Assessment, ...]
    decisions: dict[str, Gamble]

    @property
    def model(self) -> LowerPrevisionModel:
        return LowerPrevisionModel(self.space, self.assessments)

    @property
    def problem(self) -> DecisionProblem:
        return DecisionProblem(self.space, self.decisions)


def parse_problem_text(text: str, what: str = "problem file") -> ProblemFile:
    doc = _decode(text, what)
    if not isinstance(doc, dict):
        raise ProblemError(f"{what} must be a JSON object")
    unknown = set(doc) - {"space", "assessments", "decisions"}
    if unknown:
        raise ProblemError(f"unknown top-level key {sorted(unknown)[0]!r}")
    for key in ("space", "decisions"):
        if key not in doc:
            raise ProblemError(f"missing top-level key {key!r}")

    raw_space = doc["space"]
    if not isinstance(raw_space, list):
        raise ProblemError("'space' must be a list of state labels")
    try:
        space = PossibilitySpace(raw_space)
    except ModelError as exc:
        raise ProblemError(f"space: {exc}") from None

    raw_assessments = doc.get("assessments", [])
    if not isinstance(raw_assessments, list):
        raise ProblemError("'assessments' must be a list")
    assessments = tuple(
        _parse_assessment(space, entry, k) for k, entry in enumerate(raw_assessments)
    )

    raw_decisions = doc["decisions"]
    if not isinstance(raw_decisions, dict) or not raw_decisions:
        raise ProblemError("'decisions' must be a non-empty object")
    decisions = {}
    for name, node in raw_decisions.items():
        if not name:
            raise ProblemError("decision ids must be non-empty strings")
        decisions[name] = _parse_gamble(space, node, f"decision {name!r}")
    return ProblemFile(space, assessments, decisions)


def parse_problem(source: Union[str, os.PathLike, IO[str]]) -> ProblemFile:
    """Parse a problem file from a path or a readable text stream."""
    if hasattr(source, "read"):
        return parse_problem_text(source.read())
    path = os.fspath(source)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_problem_text(text, what=str(path))


def parse_gamble_arg(space: PossibilitySpace, text: str, what: str = "gamble") -> Gamble:
    """Parse a CLI-style JSON map of state to number into a gamble."""
    return _parse_gamble(space, _decode(text, what), what)


def scalar_to_json(value: Fraction) -> Union[int, str]:
    """Canonical JSON form: plain integer, or exact "p/q" string."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def _gamble_to_json(gamble: Gamble) -> dict[str, Union[int, str]]:
    return {s: scalar_to_json(v) for s, v in zip(gamble.space.states, gamble.values)}


def serialize_problem(pf: ProblemFile) -> str:
    doc = {
        "space": list(pf.space.states),
        "assessments": [
            {"gamble": _gamble_to_json(a.gamble), "lower": scalar_to_json(a.lower)}
            for a in pf.assessments
        ],
        "decisions": {d: _gamble_to_json(g) for d, g in pf.decisions.items()},
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def exact_decimal(value: Fraction) -> Optional[str]:
    """Shortest exact decimal rendering, or None when none terminates.

    >>> exact_decimal(Fraction(7, 25))
    '0.28'
    >>> exact_decimal(Fraction(1, 3)) is None
    True
    """
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    digits = max(twos, fives)
    if digits == 0:
        return str(value.numerator)
    scaled = abs(value.numerator) * 10**digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:].rstrip("0")
    sign = "-" if value < 0 else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def format_scalar(value: Fraction) -> str:
    """Rational first, exact decimal in parentheses when one exists.

    >>> format_scalar(Fraction(57, 25))
    '57/25 (2.28)'
    >>> format_scalar(Fraction(4))
    '4'
    >>> format_scalar(Fraction(1, 3))
    '1/3'
    """
    if value.denominator == 1:
        return str(value.numerator)
    decimal = exact_decimal(value)
    return f"{value} ({decimal})" if decimal else str(value)

"""Deterministic report building and rendering.

Everything here is pure string assembly: identical inputs give
byte-identical output. Values render as exact rationals, with the exact
decimal alongside whenever one terminates. Timing never appears in a
report; callers that want it print to stderr themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .criteria import Bounds, CredalMeasure, CriterionResult, DominatingPair, Witness
from .model import Gamble, PossibilitySpace
from .prevision import (
    ExtensionValue,
    LowerPrevisionModel,
    SureLossCertificate,
    coherence_report,
    sure_loss_certificate,
)
from .problem_io import ProblemFile, format_scalar, scalar_to_json


@dataclass(frozen=True)
class Diagnostics:
    """Model health: sure-loss verdict, and coherence gaps when it holds."""

    sure_loss: bool
    certificate: Optional[SureLossCertificate] = None
    gaps: tuple[tuple[int, Fraction], ...] = ()

    @property
    def coherent(self) -> bool:
        return not self.sure_loss and all(gap == 0 for _, gap in self.gaps)


@dataclass(frozen=True)
class Report:
    diagnostics: Diagnostics
    criteria: tuple[CriterionResult, ...] = ()


def build_diagnostics(model: LowerPrevisionModel) -> Diagnostics:
    certificate = sure_loss_certificate(model)
    if certificate is not None:
        return Diagnostics(True, certificate)
    return Diagnostics(False, None, tuple(coherence_report(model)))


def _point(space: PossibilitySpace, values: Sequence[Fraction]) -> str:
    return " ".join(f"{s}={v}" for s, v in zip(space.states, values))


def _certificate_lines(certificate: SureLossCertificate) -> list[str]:
    weights = ", ".join(
        f"assessment {k} -> {w}" for k, w in enumerate(certificate.weights)
    )
    return [
        f"  weights: {weights}",
        f"  guaranteed shortfall: {format_scalar(certificate.margin)}",
    ]


def _diagnostics_lines(diag: Diagnostics, verbose: bool) -> list[str]:
    if diag.sure_loss:
        lines = ["sure loss: YES"]
        assert diag.certificate is not None
        lines.extend(_certificate_lines(diag.certificate))
        return lines
    lines = ["sure loss: no"]
    bad = [(k, gap) for k, gap in diag.gaps if gap != 0]
    if not bad:
        lines.append("coherence: ok")
    else:
        lines.append("coherence: INCOHERENT")
    if verbose:
        lines.extend(
            f"  assessment {k}: gap {format_scalar(gap)}" for k, gap in diag.gaps
        )
    elif bad:
        lines.extend(
            f"  assessment {k}: gap {format_scalar(gap)}" for k, gap in bad
        )
    return lines


def render_check_text(pf: ProblemFile, diag: Diagnostics) -> str:
    lines = [
        f"space: {' '.join(pf.space.states)}",
        f"assessments: {len(pf.assessments)}",
        f"decisions: {len(pf.decisions)}",
    ]
    lines.extend(_diagnostics_lines(diag, verbose=True))
    return "\n".join(lines) + "\n"


def render_extend_text(
    gamble: Gamble, sides: dict[str, ExtensionValue]
) -> str:
    lines = [f"gamble: {_point(gamble.space, gamble.values)}"]
    for side in ("lower", "upper"):
        if side in sides:
            ext = sides[side]
            lines.append(f"{side}: {format_scalar(ext.value)}")
            lines.append(f"  witness: {_point(gamble.space, ext.witness)}")
    return "\n".join(lines) + "\n"


def _witness_text(space: PossibilitySpace, witness: Witness) -> str:
    if isinstance(witness, Bounds):
        if witness.lower == witness.upper:
            return f"expectation {format_scalar(witness.lower)}"
        return (
            f"bounds [{format_scalar(witness.lower)}, "
            f"{format_scalar(witness.upper)}]"
        )
    if isinstance(witness, DominatingPair):
        return (
            f"dominated by {witness.winner} "
            f"with margin {format_scalar(witness.margin)}"
        )
    assert isinstance(witness, CredalMeasure)
    return f"measure {_point(space, witness.mu)}"


def render_optimal_text(
    space: PossibilitySpace,
    report: Report,
    show_witnesses: bool = False,
    show_work: bool = False,
) -> str:
    lines = _diagnostics_lines(report.diagnostics, verbose=False)
    lines.append("")
    if report.diagnostics.sure_loss:
        lines.append("no criteria evaluated")
        return "\n".join(lines) + "\n"
    for result in report.criteria:
        lines.append(f"{result.criterion}: {' '.join(result.optimal)}")
        if result.pruned:
            lines.append(f"  pruned: {' '.join(result.pruned)}")
        if show_work and (result.lp_solves or result.prefilter_solves):
            work = f"  lp solves: {result.lp_solves}"
            if result.prefilter_solves:
                work += f" (+ {result.prefilter_solves} in prefilter)"
            lines.append(work)
        if show_witnesses:
            lines.extend(
                f"  witness {d}: {_witness_text(space, w)}"
                for d, w in result.witnesses.items()
            )
    return "\n".join(lines) + "\n"


def _witness_json(space: PossibilitySpace, witness: Witness) -> dict:
    if isinstance(witness, Bounds):
        return {
            "type": "bounds",
            "lower": scalar_to_json(witness.lower),
            "upper": scalar_to_json(witness.upper),
        }
    if isinstance(witness, DominatingPair):
        return {
            "type": "dominating_pair",
            "winner": witness.winner,
            "margin": scalar_to_json(witness.margin),
        }
    assert isinstance(witness, CredalMeasure)
    return {
        "type": "credal_measure",
        "mu": {s: scalar_to_json(v) for s, v in zip(space.states, witness.mu)},
    }


def render_optimal_json(
    space: PossibilitySpace,
    report: Report,
    show_witnesses: bool = False,
) -> str:
    diag = report.diagnostics
    if diag.sure_loss:
        assert diag.certificate is not None
        diag_doc: dict = {
            "sure_loss": True,
            "certificate": {
                "weights": [scalar_to_json(w) for w in diag.certificate.weights],
                "margin": scalar_to_json(diag.certificate.margin),
            },
        }
    else:
        diag_doc = {
            "sure_loss": False,
            "coherent": diag.coherent,
            "gaps": [
                {"assessment": k, "gap": scalar_to_json(gap)} for k, gap in diag.gaps
            ],
        }
    criteria_doc = []
    for result in report.criteria:
        doc = {
            "criterion": result.criterion,
            "optimal": list(result.optimal),
            "pruned": list(result.pruned),
            "lp_solves": result.lp_solves,
            "prefilter_solves": result.prefilter_solves,
        }
        if show_witnesses:
            doc["witnesses"] = {
                d: _witness_json(space, w) for d, w in result.witnesses.items()
            }
        criteria_doc.append(doc)
    return (
        json.dumps({"diagnostics": diag_doc, "criteria": criteria_doc}, indent=2)
        + "\n"
    )

"""Exact decision making under imprecise probability models.

Build a lower prevision model from price assessments, check it for sure
loss and coherence, extend it to lower and upper expectations of arbitrary
gambles, and compute optimal decision sets under the classical criteria:
admissibility, maximum expected utility, Gamma-maximin, Gamma-maximax,
maximality, interval dominance, and E-admissibility. Every number is a
:class:`fractions.Fraction`; every verdict comes with an exact certificate.
"""

from importlib import resources
from pathlib import Path

from .model import (
    DecisionProblem,
    Gamble,
    ModelError,
    PossibilitySpace,
    admissible_set,
    as_scalar,
    gamble_combine,
    pointwise_dominates,
)
from .lp import (
    CapacityError,
    Constraint,
    LinearProgram,
    LpOutcome,
    Polytope,
    count_solves,
    dual_program,
    enumerate_vertices,
    solve,
)
from .prevision import (
    Assessment,
    CredalSet,
    ExtensionValue,
    LowerPrevisionModel,
    SureLossCertificate,
    SureLossError,
    avoids_sure_loss,
    build_credal_set,
    coherence_report,
    expectation,
    is_coherent,
    natural_extension_lower,
    natural_extension_upper,
    probability_vector,
    sure_loss_certificate,
)
from .criteria import (
    Bounds,
    CredalMeasure,
    CriterionResult,
    DominatingPair,
    MixtureDominance,
    PrefilterError,
    Witness,
    admissible_result,
    e_admissible_set,
    gamma_maximax,
    gamma_maximin,
    interval_dominant_set,
    maximal_set,
    meu_optimal,
    mixture_dominance,
    run_pipeline,
)
from .problem_io import (
    ProblemError,
    ProblemFile,
    exact_decimal,
    format_scalar,
    parse_gamble_arg,
    parse_problem,
    parse_problem_text,
    scalar_to_json,
    serialize_problem,
)
from .report import Diagnostics, Report, build_diagnostics

__version__ = "0.1.0"


def fixture_path(name: str) -> Path:
    """Filesystem path of a shipped example problem file.

    Shipped fixtures: coin.json, sureloss.json, incoherent.json.
    """
    return Path(str(resources.files(__package__).joinpath("fixtures", name)))


__all__ = [
    "Assessment",
    "Bounds",
    "CapacityError",
    "Constraint",
    "CredalMeasure",
    "CredalSet",
    "CriterionResult",
    "DecisionProblem",
    "Diagnostics",
    "DominatingPair",
    "ExtensionValue",
    "Gamble",
    "LinearProgram",
    "LowerPrevisionModel",
    "LpOutcome",
    "MixtureDominance",
    "ModelError",
    "Polytope",
    "PossibilitySpace",
    "PrefilterError",
    "ProblemError",
    "ProblemFile",
    "Report",
    "SureLossCertificate",
    "SureLossError",
    "Witness",
    "admissible_result",
    "admissible_set",
    "as_scalar",
    "avoids_sure_loss",
    "build_credal_set",
    "build_diagnostics",
    "coherence_report",
    "count_solves",
    "dual_program",
    "e_admissible_set",
    "enumerate_vertices",
    "exact_decimal",
    "expectation",
    "fixture_path",
    "format_scalar",
    "gamble_combine",
    "gamma_maximax",
    "gamma_maximin",
    "interval_dominant_set",
    "is_coherent",
    "maximal_set",
    "meu_optimal",
    "mixture_dominance",
    "natural_extension_lower",
    "natural_extension_upper",
    "parse_gamble_arg",
    "parse_problem",
    "parse_problem_text",
    "pointwise_dominates",
    "probability_vector",
    "run_pipeline",
    "scalar_to_json",
    "serialize_problem",
    "solve",
    "sure_loss_certificate",
    "__version__",
]

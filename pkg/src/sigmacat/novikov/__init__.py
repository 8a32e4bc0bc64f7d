from .checks import (
    ExactSequenceReport,
    LipschitzReport,
    les_consistency,
    lipschitz_check,
)
from .homology import (
    OBSTRUCTION,
    UNKNOWN,
    VANISHES,
    NovikovChain,
    NovikovUnknown,
    ObstructionClass,
    TorResult,
    Vanishes,
    novikov_boundary,
    obstruction_from_json,
    tor_vanishing_test,
    transcript_digest,
    verify_obstruction,
)
from .ring import (
    NonUnitError,
    NovikovError,
    NovikovRing,
    TruncatedNovikovElem,
    UnsupportedDirectionError,
    invert_if_unit,
    nov_add,
    nov_mul,
    truncate,
)

__all__ = [
    "OBSTRUCTION",
    "UNKNOWN",
    "VANISHES",
    "ExactSequenceReport",
    "LipschitzReport",
    "NonUnitError",
    "NovikovChain",
    "NovikovError",
    "NovikovRing",
    "NovikovUnknown",
    "ObstructionClass",
    "TorResult",
    "TruncatedNovikovElem",
    "UnsupportedDirectionError",
    "Vanishes",
    "invert_if_unit",
    "les_consistency",
    "lipschitz_check",
    "nov_add",
    "nov_mul",
    "novikov_boundary",
    "obstruction_from_json",
    "tor_vanishing_test",
    "transcript_digest",
    "truncate",
    "verify_obstruction",
]

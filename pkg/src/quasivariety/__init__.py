"""Closure spaces presented by recursive Horn rule streams."""

from .certify import Witness, complement_witness, find_derivation, sequence_code
from .engine import ClosureResult, SaturationEngine, closure
from .enumeration import AtomEnumeration, enumeration_of
from .errors import GuardError, ParseError, PreconditionError, QuasivarietyError
from .operators import (
    EnumerationOperator,
    FiniteFamily,
    FunctionOperator,
    GMapEntry,
    PresentationOperator,
    TableOperator,
    apply_operator,
    complement_op_below_family,
    complement_op_discriminated,
    complement_op_maximal,
    complement_op_uniform,
    converse_maximal_rules,
    converse_presentation_rules,
    derivation_decode,
    family_from_sets,
    g_map,
    identity_operator,
    presentation_operator,
    recover_from_bound,
    replay_rules,
)
from .pairing import pair, unpair
from .rules import HornRule, RuleStream, rule, stream_from_rules
from .verify import SUITES, SuiteResult, run_suite, run_suites

__all__ = [
    "AtomEnumeration",
    "ClosureResult",
    "EnumerationOperator",
    "FiniteFamily",
    "FunctionOperator",
    "GMapEntry",
    "GuardError",
    "HornRule",
    "ParseError",
    "PreconditionError",
    "PresentationOperator",
    "QuasivarietyError",
    "RuleStream",
    "SUITES",
    "SaturationEngine",
    "SuiteResult",
    "TableOperator",
    "Witness",
    "apply_operator",
    "closure",
    "complement_op_below_family",
    "complement_op_discriminated",
    "complement_op_maximal",
    "complement_op_uniform",
    "complement_witness",
    "converse_maximal_rules",
    "converse_presentation_rules",
    "derivation_decode",
    "enumeration_of",
    "family_from_sets",
    "find_derivation",
    "g_map",
    "identity_operator",
    "pair",
    "presentation_operator",
    "recover_from_bound",
    "replay_rules",
    "rule",
    "run_suite",
    "run_suites",
    "sequence_code",
    "stream_from_rules",
    "unpair",
]

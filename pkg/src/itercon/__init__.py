"""Workbench for iterated consistency over a provability oracle.

Sentences with modal consistency operators, ordinal notations below
epsilon-zero, a tableau decision procedure with countermodel extraction for
the decidable fragment, canonical letterless forms, executable proof
constructions, and a staged enumerator, all behind one HTTP service and CLI.
"""

from .errors import (
    HypothesisNotMet,
    IterconError,
    NonCanonical,
    NotALimit,
    NotASuccessor,
    NotLetterless,
    ParseError,
    SizeCapExceeded,
    StageCapExceeded,
    UnknownSchematicAtom,
)
from .oracle import (
    Countermodel,
    Verdict,
    decide,
    letterless_nf,
    proves,
    strictly_proves,
    truth_letterless,
)
from .ordinals import Kind, Order, Ordinal, compare, parse_ordinal
from .sentences import Sentence, parse_sentence, render

__version__ = "0.1.0"

__all__ = [
    "Countermodel",
    "HypothesisNotMet",
    "IterconError",
    "Kind",
    "NonCanonical",
    "NotALimit",
    "NotASuccessor",
    "NotLetterless",
    "Order",
    "Ordinal",
    "ParseError",
    "Sentence",
    "SizeCapExceeded",
    "StageCapExceeded",
    "UnknownSchematicAtom",
    "Verdict",
    "compare",
    "decide",
    "letterless_nf",
    "parse_ordinal",
    "parse_sentence",
    "proves",
    "render",
    "strictly_proves",
    "truth_letterless",
]

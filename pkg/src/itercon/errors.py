"""Exception types shared across the workbench.

The CLI maps these to exit codes: parse/usage problems exit 1, resource-cap
problems exit 3.
"""


class IterconError(Exception):
    pass


class ParseError(IterconError):
    """Malformed ordinal or sentence text."""


class NonCanonical(ParseError):
    """Well-formed text that is not in canonical form (term order, *1, ^1)."""


class NotASuccessor(IterconError):
    pass


class NotALimit(IterconError):
    pass


class SizeCapExceeded(IterconError):
    """A notation or sentence grew past the configured node cap."""


class UnknownSchematicAtom(ParseError):
    """An @name whose name is not in the registered schematic vocabulary."""


class NotLetterless(IterconError):
    """Letterless-only operation applied to a sentence with atoms or opaque
    operators."""


class StageCapExceeded(IterconError):
    pass


class HypothesisNotMet(IterconError):
    """A construction's precondition was refuted by the oracle."""

    def __init__(self, message, countermodel=None):
        super().__init__(message)
        self.countermodel = countermodel

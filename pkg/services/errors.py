"""Exception hierarchy shared by every service module."""


class StarRamseyError(Exception):
    """Base class for all domain errors."""


class GraphError(StarRamseyError):
    """Malformed graph data (self-loop, repeated edge, bad edge list)."""


class Graph6DecodeError(GraphError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CanonicalFormError(StarRamseyError):
    pass


class EnumerationBudgetError(StarRamseyError):
    pass


class ForestSpecError(StarRamseyError):
    pass


class ColorIndexError(StarRamseyError):
    pass


class OddDegreeError(StarRamseyError):
    pass


class NotRegularError(StarRamseyError):
    pass


class NotBipartiteError(StarRamseyError):
    pass


class DecompositionHypothesisError(StarRamseyError):
    """The degree hypotheses of the decomposition lemma do not hold.

    This says nothing about whether a free coloring exists; only that the
    constructive lemma cannot be applied.
    """


class ArityError(StarRamseyError):
    pass


class InconsistentVerdictError(StarRamseyError):
    """A search returned a certificate that fails independent verification."""


class NoCharacterizationError(StarRamseyError):
    pass


class SearchBudgetError(StarRamseyError):
    pass


class UsageError(StarRamseyError):
    """Bad command line; reported with the usage text."""

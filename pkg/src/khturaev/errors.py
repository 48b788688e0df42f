"""Exception hierarchy shared by every module of the package."""


class KhError(Exception):
    """Base class for all errors raised by :mod:`khturaev`."""


class ParseError(KhError):
    """Malformed PD text (wrong arity, non-integer labels, unknown record)."""


class ValidationError(KhError):
    """PD data that parses but does not describe a planar link diagram."""


class DisconnectedDiagram(ValidationError):
    """The diagram is split into several pieces on the sphere."""


class EmbeddingError(KhError):
    """A rotation system that does not describe a sphere embedding."""


class BadCrossing(KhError):
    """A crossing index outside ``1..c(D)``."""


class LengthMismatch(KhError):
    """A resolution word whose length differs from the crossing count."""


class NotAdequate(KhError):
    """An operation that needs an A-adequate diagram got something else."""


class CapExceeded(KhError):
    """The diagram has more crossings than the configured cap."""


class NotAComplex(KhError):
    """A pair of maps whose composite is nonzero."""


class EmptyHomology(KhError):
    """Extremal gradings were requested for the zero group."""


class AlreadyAlternating(KhError):
    """Dealternator search on a diagram that is already alternating."""


class NotADealternator(KhError):
    """The crossing does not turn the diagram alternating when changed."""


class AlternatingInput(KhError):
    """Classification was requested for an alternating diagram."""


class HypothesisNotMet(KhError):
    """None of the closed-form cases applies to the diagram."""

    def __init__(self, message, failed=None):
        super().__init__(message)
        self.failed = dict(failed or {})


class NotAKnot(KhError):
    """The diagram has more than one component."""


class NotPositiveDiagram(KhError):
    """The diagram has a negative crossing."""

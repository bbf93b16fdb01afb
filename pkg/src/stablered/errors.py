"""Exception hierarchy.

Every domain failure derives from :class:`StableReductionError`, which the CLI
maps to exit code 1.
"""


class StableReductionError(Exception):
    pass


class InvalidGraph(StableReductionError):
    pass


class NonIntegralSelfIntersection(StableReductionError):
    pass


class UndefinedSelfIntersection(StableReductionError):
    """Raised for a one-component fiber, whose self-intersection is 0 by convention."""


class NonIntegralGenus(StableReductionError):
    pass


class InvalidParams(StableReductionError):
    pass


class TameAssumptionViolated(StableReductionError):
    pass


class WildDegree(StableReductionError):
    pass


class NonIntegralMultiplicity(StableReductionError):
    pass


class NonPositiveMultiplicity(StableReductionError):
    pass


class NoPrincipalComponents(StableReductionError):
    pass


class SaitoViolated(StableReductionError):
    pass


class InconsistentChain(StableReductionError):
    pass


class InconsistentSplitting(StableReductionError):
    pass


class DisconnectedResult(StableReductionError):
    pass


class EmptyResult(StableReductionError):
    pass


class NotContractible(StableReductionError):
    pass


class PreconditionViolated(StableReductionError):
    pass


class GenusTooSmall(StableReductionError):
    pass


class AmbiguousSplitting(StableReductionError):
    def __init__(self, message, stable_graphs=()):
        super().__init__(message)
        self.stable_graphs = list(stable_graphs)


class DocumentError(StableReductionError):
    """Base for problems with an input document."""


class ParseError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass


class InvariantError(DocumentError):
    pass

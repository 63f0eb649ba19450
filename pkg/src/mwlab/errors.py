"""Exception hierarchy shared by every mwlab module."""


class MwlabError(Exception):
    """Base class for all errors raised by mwlab."""


class MatroidError(MwlabError):
    pass


class EmptyBases(MatroidError):
    pass


class MixedCardinality(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    """Basis-exchange axiom fails; ``witness`` holds ``(b1, b2, e)`` as element tuples."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RankOutOfRange(MatroidError):
    pass


class BadEndpoint(MatroidError):
    pass


class RankZero(MatroidError):
    pass


class InvariantViolation(MwlabError):
    """An internal cross-check between two independent computations disagreed."""


class GroundSetTooLarge(MwlabError):
    pass


class EngineMismatch(InvariantViolation):
    pass


class BadRange(MwlabError):
    pass


class RankTooSmall(MwlabError):
    pass


class HypothesisUnmet(MwlabError):
    pass


class DomainError(MwlabError):
    pass


class CatalogError(MwlabError):
    pass


class FileSyntaxError(CatalogError):
    """Malformed input file; carries the 1-based ``line`` number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(CatalogError):
    pass


class CountMismatch(CatalogError):
    pass


class SinkError(CatalogError):
    pass


class ConfigError(MwlabError):
    pass

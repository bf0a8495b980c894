from __future__ import annotations


class QTFlowsError(Exception):
    """Base class for every error raised by qtflows."""


class InvalidNetflowError(QTFlowsError):
    """Netflow vector has the wrong length or a nonpositive entry."""


class NotThresholdError(QTFlowsError):
    """Degree sequence cannot be built by adding dominating/isolated vertices."""


class DisconnectedGraphError(QTFlowsError):
    pass


class UnsupportedGraphError(QTFlowsError):
    """Operation is only defined for a narrower class of host graphs."""


class IncomparableError(QTFlowsError):
    pass


class SupportTooSmallError(QTFlowsError):
    """Flow has fewer than n nonzero entries, so its weight needs division."""


class LaurentError(QTFlowsError):
    """Laurent polynomial with negative exponents used where a polynomial is required."""


class PolynomialSyntaxError(QTFlowsError):
    pass


class ConfigurationError(QTFlowsError):
    pass


class UsageError(QTFlowsError):
    """Command line could not be parsed."""

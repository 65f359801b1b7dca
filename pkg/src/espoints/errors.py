"""Exception types shared across the package."""


class EspointsError(Exception):
    """Base class for all package errors."""


class NotFound(EspointsError):
    """A searched-for structure does not exist in the input.

    This is an ordinary outcome (extremal constructions are built to produce
    it), not a malfunction.
    """


class ContractViolation(EspointsError):
    """A caller-supplied object broke a documented promise (e.g. transitivity)."""


class DegenerateInput(EspointsError, ValueError):
    """Input contains duplicate points or a collinear triple."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class VerificationFailed(EspointsError):
    """A claimed convex-position structure failed exact re-verification."""


class Insufficient(EspointsError):
    """Not enough suitable regions to run the requested case."""


class ScheduleMiss(EspointsError):
    """A strict growth schedule could not be met by the available regions."""


class ThresholdUnmet(EspointsError):
    """Input is smaller than the size the strict argument requires."""

    def __init__(self, message, required_log2=None, actual=None):
        super().__init__(message)
        self.required_log2 = required_log2
        self.actual = actual

class ToricLinkError(Exception):
    """Base class for errors raised by toriclink."""


class ConeError(ToricLinkError, ValueError):
    """Invalid cone input: zero ray, non-pointed, redundant generator."""


class FanAxiomViolation(ToricLinkError):
    """A collection of cones fails the fan axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SignAssignmentError(ToricLinkError):
    """No consistent incidence signs exist (poset is not a regular CW poset)."""


class ConsistencyError(ToricLinkError):
    """Two independent routes to the same invariant disagree."""


class ParseError(ToricLinkError, ValueError):
    """Malformed fan or cone file."""

"""Exception types shared across the package."""


class HullcertError(Exception):
    """Base class for all package errors."""


class DomainError(HullcertError, ValueError):
    """An argument lies outside the operation's domain."""


class InfeasibleWeightError(HullcertError, ValueError):
    """A requested weight exceeds the measure of the host set."""


class PreconditionError(HullcertError, ValueError):
    """A construction routine was called on a point outside its relaxation.

    Carries the violated constraint's description when known.
    """

    def __init__(self, message, violated=None):
        super().__init__(message)
        self.violated = violated


class ModeError(HullcertError, ValueError):
    """An instance does not satisfy the structural hypothesis of the mode."""


class CertificateError(HullcertError, RuntimeError):
    """A certificate operation was used outside its contract
    (e.g. extraction from a certificate that fails verification)."""


class EnumerationTooLargeError(HullcertError, ValueError):
    """The requested enumeration box exceeds the configured cap."""


class InputError(HullcertError, ValueError):
    """Malformed instance, certificate, or point input."""

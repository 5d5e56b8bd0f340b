"""Exception types shared across the package."""


class MetadehnError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(MetadehnError, ValueError):
    """Invalid arguments: rank mismatch, zero divisor, bad parameters."""


class ParseError(UsageError):
    """Malformed polynomial, module element or word text."""


class LeadingTermError(MetadehnError, ValueError):
    """The zero ring element has no leading term."""


class MembershipError(MetadehnError, ValueError):
    """An element is not in the subgroup or submodule it was required to lie in."""


class NotIdentityError(MetadehnError, ValueError):
    """A word does not represent the identity in the given presentation."""


class ResourceLimitError(MetadehnError, RuntimeError):
    """An enumeration exceeded its configured memory or state guard."""


class CertificateError(MetadehnError, ValueError):
    """A certificate is structurally malformed.

    ``index`` is the position of the first offending move, or ``None`` when the
    problem is in the certificate header.
    """

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"move {index}: {message}")
        self.index = index

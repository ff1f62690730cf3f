"""Domain errors raised by the library.  The CLI maps all of them to exit code 2."""


class DomainError(ValueError):
    """Base class for input-domain failures."""


class ZeroTheta(DomainError):
    """The vertical costate vanishes where a nonzero one is required."""


class SingularAt(DomainError):
    """W(t) is not invertible at the requested parameter."""

    def __init__(self, t, msg=None):
        self.t = t
        super().__init__(msg or f"W(t) is singular at t={t!r}")


class InvalidQuery(DomainError):
    """Malformed endpoint query."""


class DegenerateEndpoint(DomainError):
    """Endpoint on a null surface with no Hamiltonian geodesic."""

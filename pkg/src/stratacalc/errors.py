"""Exception types shared across the package."""


class StrataError(Exception):
    """Base class for all package errors."""


class InvalidGraphError(StrataError):
    """A graph violates a structural invariant.

    Carries the list of human-readable diagnostics in ``diagnostics``.
    """

    def __init__(self, diagnostics):
        if isinstance(diagnostics, str):
            diagnostics = [diagnostics]
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class SignatureError(StrataError):
    """An operation was applied across incompatible ambient signatures."""


class SizeGuardError(StrataError):
    """A desk-scale resource guard was exceeded."""

"""Exception types shared across the package."""


class NcgraphError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatchError(NcgraphError):
    pass


class NotHermitianError(NcgraphError):
    pass


class DimensionOverflowError(NcgraphError):
    pass


class NotTracePreservingError(NcgraphError):
    def __init__(self, residual: float):
        super().__init__(f"Kraus operators are not trace preserving (residual {residual:.3e})")
        self.residual = residual


class NotIsometryError(NcgraphError):
    pass


class NotProjectorError(NcgraphError):
    pass


class NotNcGraphError(NcgraphError):
    """Operation requires an operator space containing the identity and closed under adjoints."""


class SolverError(NcgraphError):
    """Raised when an LMI solve does not reach an Optimal status."""

    def __init__(self, status, message=""):
        super().__init__(message or f"solver finished with status {status}")
        self.status = status


class GapTooLargeError(NcgraphError):
    def __init__(self, primal: float, dual: float, tol: float):
        super().__init__(
            f"primal/dual disagreement: primal={primal!r} dual={dual!r} exceeds tolerance {tol!r}"
        )
        self.primal = primal
        self.dual = dual


class InputFormatError(NcgraphError):
    """Unparseable or mistyped JSON artifact."""

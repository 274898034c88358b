"""Exception hierarchy shared across the package.

Domain-level failures (bad operands, violated invariants) derive from
``DomainError`` so callers can gate on a single class; structural problems
with serialized files derive from ``SerializationError`` and are treated as
usage errors by the command line front end.
"""


class EigenschaftError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(EigenschaftError, ValueError):
    """Operand dimensions are incompatible with the requested operation."""


class DomainError(EigenschaftError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class ConstructionError(DomainError):
    """A closed-form construction is infeasible; the message names the
    violated relation."""


class FitError(DomainError):
    """Fringe fit is degenerate or produced unphysical parameters."""


class ConvergenceError(EigenschaftError, RuntimeError):
    """An iterative numerical routine failed to converge within its cap."""


class SerializationError(EigenschaftError, ValueError):
    """A JSON or CSV payload does not match the documented schema."""

"""Exception taxonomy shared by all modules.

DomainError   -> invalid inputs or configuration (CLI exit code 2)
NumericError  -> a numerical routine failed to converge (CLI exit code 3);
                 carries the best partial value computed so far
BoundaryError -> a wavepacket reached the edge of its grid, so further
                 evolution would be contaminated by periodic wrap-around
"""


class DomainError(ValueError):
    """Inputs outside the domain an operation is defined on."""


class NumericError(RuntimeError):
    """A numerical routine did not reach the requested tolerance.

    The ``partial`` attribute holds the best estimate available when the
    routine gave up (may be None).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BoundaryError(NumericError):
    """Significant probability mass reached the outer region of the grid."""

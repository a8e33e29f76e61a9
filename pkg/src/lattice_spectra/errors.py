"""Exception hierarchy shared across the package.

Input/configuration problems derive from ``InputError`` (CLI exit code 2),
failed numerical sanity checks from ``NumericalFailure`` (CLI exit code 3).
Failed theorem assertions are reported, not raised.
"""


class InputError(ValueError):
    """Malformed or inconsistent user input."""


class PotentialFormatError(InputError):
    """Potential file does not parse or violates the schema."""


class EvennessError(PotentialFormatError):
    """A site and its negative carry conflicting values."""


class GridTooSmallError(InputError):
    """Grid cannot faithfully represent the potential support (N < 2R+1)."""


class NegativePotentialError(InputError):
    """Birman-Schwinger construction requires a nonnegative potential."""


class ZNotBelowBandError(InputError):
    """Spectral parameter z is not below the grid-sampled dispersion."""


class ZeroPotentialError(InputError):
    """Operation requires a not-identically-zero potential."""


class PreconditionError(InputError):
    """A documented operation precondition does not hold for these inputs."""


class NumericalFailure(RuntimeError):
    """A numerical invariant (symmetry, positivity, convergence) failed."""


class NonSymmetricError(NumericalFailure):
    """Matrix handed to the symmetric eigensolver is not symmetric."""

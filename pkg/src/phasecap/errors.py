"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` (used verbatim in CLI/service error
objects) and an optional ``location`` naming the offending input.
"""

from __future__ import annotations


class PhasecapError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message)
        self.location = location


class InvalidInput(PhasecapError):
    """Malformed input: wrong shape, non-finite entries, bad parameters."""

    code = "invalid_input"


class NotSymmetric(PhasecapError):
    code = "not_symmetric"


class NotHermitian(PhasecapError):
    code = "not_hermitian"


class NotPositiveDefinite(PhasecapError):
    code = "not_positive_definite"


class OddDimension(PhasecapError):
    code = "odd_dimension"


class SingularL(PhasecapError):
    """The L parameter of a dilation generator is not invertible."""

    code = "singular_l"


class NotSymplectic(PhasecapError):
    code = "not_symplectic"


class DegenerateBlocks(PhasecapError):
    """A A^T + B B^T of a claimed symplectic matrix failed positive
    definiteness; cannot occur for exact symplectic input."""

    code = "degenerate_blocks"


class InconsistentBlob(PhasecapError):
    """Blob carrier does not induce a valid Gaussian parameter tuple."""

    code = "inconsistent_blob"


class NotAFermiEllipsoid(PhasecapError):
    """Ellipsoid is not in the image of the Fermi correspondence."""

    code = "not_a_fermi_ellipsoid"


class PairNotNested(PhasecapError):
    """The momentum body does not contain the polar dual it must cover."""

    code = "pair_not_nested"


class UnsupportedDimension(PhasecapError):
    code = "unsupported_dimension"


class EmptySample(PhasecapError):
    """No Monte-Carlo point landed inside the inner body."""

    code = "empty_sample"


class InvariantViolation(PhasecapError):
    """A certified internal identity failed.  This is a bug in the package,
    not a problem with the input; the CLI exits with status 2 on it."""

    code = "internal_invariant"

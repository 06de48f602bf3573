"""Exception hierarchy shared by all modules."""


class CptKitError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CptKitError):
    """Operands have incompatible dimensions."""


class KindMismatch(CptKitError):
    """A linear operator was supplied where an antilinear one was required,
    or vice versa."""


class NonFiniteEntries(CptKitError):
    """A matrix or vector contains NaN or infinite entries."""


class DefectiveSpectrum(CptKitError):
    """The matrix is numerically defective: its eigenvector matrix is too
    ill-conditioned for eigenvector-based constructions to be trusted.

    The condition-number estimate is kept in ``condition``.
    """

    def __init__(self, message: str, condition: float | None = None):
        super().__init__(message)
        self.condition = condition


class NotHermitian(CptKitError):
    """A Hermitian matrix was required."""


class NotPositiveDefinite(CptKitError):
    """A positive definite matrix was required.  Downstream this usually
    signals a broken frame or an exceptional point."""


class NotInvolution(CptKitError):
    """The supplied matrix does not square to the identity."""


class IsIdentity(CptKitError):
    """The identity matrix is excluded as a parity operator."""


class NonRealEntries(CptKitError):
    """A real-entried matrix was required (a complex parity need not commute
    with entrywise conjugation)."""


class NotPTSymmetric(CptKitError):
    """The operator does not commute with PT."""


class NotPTEigenstate(CptKitError):
    """The vector is not an eigenstate of PT, so no phase can align it."""


class NotUnbroken(CptKitError):
    """C-operator synthesis needs an unbroken symmetry with real spectrum."""


class SelfOrthogonal(CptKitError):
    """A state has (numerically) vanishing indefinite self-product; the
    normalization required by the C construction fails.  This is the
    signature of an exceptional point."""


class GramDefect(CptKitError):
    """The aligned eigenstates cannot be made orthogonal under the indefinite
    inner product, so the orthonormality hypothesis of the C construction
    cannot be met."""


class FrameInvalid(CptKitError):
    """A frame failed axiom validation.  The offending report is attached."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CommutatorViolation(CptKitError):
    """An operator was expected to commute with another and does not."""


class InvalidModel(CptKitError):
    """Model parameters violate the family's constraints (e.g. a zero
    parameter)."""


class DocumentError(CptKitError):
    """A JSON matrix or frame document failed to parse or validate."""

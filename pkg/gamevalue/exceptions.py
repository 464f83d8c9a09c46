__all__ = [
    "GameValueException",
    "CandidateFormatError",
    "NonAffineAbsArgument",
    "VariableIndexOutOfRange",
    "OutsideTimeInterval",
    "UnsupportedDimension",
    "NotInHullError",
    "EmptySampleSet",
    "MissingHamiltonianValue",
    "ConditionNotPassed",
    "MissingRegularityMetadata",
    "IdentityVerificationFailed",
    "CFLViolation",
    "NonFiniteValue",
    "PaddingExceeded",
    "HamiltonianHashMismatch",
    "ConfigurationError",
    "UncoveredPosition",
    "DimensionMismatch",
]


class GameValueException(Exception):
    """General GameValue Exception."""

    pass


class CandidateFormatError(GameValueException):
    """The candidate document is malformed."""

    pass


class NonAffineAbsArgument(CandidateFormatError):
    """An abs node has an argument that is not affine in (t, x)."""

    pass


class VariableIndexOutOfRange(CandidateFormatError):
    """A variable index is outside of the declared dimension."""

    pass


class OutsideTimeInterval(GameValueException):
    """The position is not strictly inside the time interval."""

    pass


class UnsupportedDimension(GameValueException):
    """The spatial dimension exceeds what exact enumeration supports."""

    pass


class NotInHullError(GameValueException):
    """The vector is not a convex combination of the limiting gradients."""

    pass


class EmptySampleSet(GameValueException):
    """No sample is available for a check."""

    pass


class MissingHamiltonianValue(GameValueException):
    """The partial Hamiltonian is not defined at a required vector."""

    pass


class ConditionNotPassed(GameValueException):
    """A prerequisite condition did not pass."""

    pass


class MissingRegularityMetadata(GameValueException):
    """The Hamiltonian carries no growth or Lipschitz constants."""

    pass


class IdentityVerificationFailed(GameValueException):
    """The synthesized dynamics do not reproduce the Hamiltonian."""

    pass


class CFLViolation(GameValueException):
    """The time step breaks the CFL condition."""

    pass


class NonFiniteValue(GameValueException):
    """A NaN or an infinite value appeared in a value field."""

    pass


class PaddingExceeded(GameValueException):
    """A dynamic programming step left the padded grid."""

    pass


class HamiltonianHashMismatch(GameValueException):
    """The game dump references a different Hamiltonian dump."""

    pass


class ConfigurationError(GameValueException):
    """The run configuration is invalid."""

    pass


class UncoveredPosition(GameValueException):
    """No piece of the decomposition covers the position."""

    pass


class DimensionMismatch(GameValueException):
    """The position does not have the spatial dimension of the game."""

    pass

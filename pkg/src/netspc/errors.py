"""Exception types shared across the package."""


class NetspcError(Exception):
    """Base class for all netspc errors."""


class DimensionError(NetspcError):
    """Array shapes do not agree with the declared problem dimensions."""


class InvalidEdgeError(NetspcError):
    """Requested edge does not exist (self-edge or node id out of range)."""


class IncompleteAttributesError(NetspcError):
    """Attribute table does not cover every edge, or covers one inconsistently."""


class UnknownRoleError(NetspcError):
    """A node role is not in the configured role set."""


class EmptyWindowError(NetspcError):
    """An aggregation window contains no snapshots."""


class HomogeneityError(NetspcError):
    """Snapshots in a stream or window disagree on n, directedness, family, or p."""


class SingularDesignError(NetspcError):
    """Design matrix is rank deficient; the weighted least-squares step has no solution."""


class SeparationError(NetspcError):
    """Coefficients diverged past the configured bound (perfect separation)."""


class NonStationaryError(NetspcError):
    """Operation requires |F_ii| < 1 for the addressed coordinate."""


class NumericallySingularError(NetspcError):
    """A covariance solve failed; the matrix is singular to machine precision."""


class InitializationError(NetspcError):
    """Filter or predictor used before valid initialization."""


class InsufficientReferenceError(NetspcError):
    """Reference series too short to estimate the in-control spread."""


class CalibrationRangeError(NetspcError):
    """Target run length is not bracketed by the searched limit range."""


class MonteCarloError(NetspcError):
    """A Monte Carlo routine could not complete (e.g. too many discarded replications)."""


class ConfigError(NetspcError):
    """Invalid or missing configuration value."""

"""Exception types shared across the package."""


class BlanketBayesError(Exception):
    """Base class for all domain errors raised by this package."""


class ConfigError(BlanketBayesError):
    """Bad user-supplied configuration (unknown column, mismatched lengths, ...)."""


class SchemaError(BlanketBayesError):
    """Data does not match the expected schema or pinned value labels."""


class MissingValueError(BlanketBayesError):
    """A case contains a missing cell; these are rejected, never imputed."""


class DatasetTooSmallError(BlanketBayesError):
    """Too few cases for the requested operation."""


class CycleError(BlanketBayesError):
    """An arc insertion would create a directed cycle."""


class DuplicateArcError(BlanketBayesError):
    """The arc is already present."""


class InvalidOrderingError(BlanketBayesError):
    """A node ordering is not a permutation of all nodes."""


class ValueOutOfRangeError(BlanketBayesError):
    """A value index exceeds the arity of its variable."""


class DegenerateLabelsError(BlanketBayesError):
    """ROC analysis needs at least one positive and one negative label."""

"""Exception types shared across the package."""


class InvalidRankError(ValueError):
    """Rank outside the range allowed for the requested root system type."""


class DimensionError(ValueError):
    """A vector or element does not match the ambient dimension."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured resource budget."""


class InvariantError(RuntimeError):
    """An internal consistency check failed.

    A correct build never raises this; the CLI maps it to exit status 4.
    """


class CacheError(RuntimeError):
    """A cache file is malformed or fails its checksum."""

"""Exception types shared across the package.

The CLI maps :class:`ConfigError` to exit code 2 and :class:`DataError`
to exit code 1.
"""


class SynthRiskError(Exception):
    """Base class for all package errors."""


class ConfigError(SynthRiskError, ValueError):
    """Invalid run configuration (bad option, unknown column, bad spec)."""


class DataError(SynthRiskError, ValueError):
    """Malformed or unusable input data."""

"""Exceptions shared across the package.

Every failure mode the CLI maps to a nonzero exit code lives here, so the
mapping stays in one place (see cli.EXIT_CODES).
"""


class BadSieveError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(BadSieveError):
    """Invalid configuration or malformed input (bad R/depth, unparsable theta,
    unknown catalog entry, fingerprint mismatch between inputs)."""


class PrecisionExhausted(BadSieveError):
    """The declared truncation error of theta is too coarse for the requested
    height range: the smallest record zeta does not clear the guard margin.

    Carries an estimate of how many extra decimal digits of theta would be
    needed (extra_digits), when computable.
    """

    def __init__(self, message, extra_digits=None):
        super().__init__(message)
        self.extra_digits = extra_digits


class DegenerateForm(BadSieveError):
    """An exact collision that the record structure cannot arbitrate:
    a candidate with zeta = 0 inside the scanned range, or two distinct
    candidate classes tying a record decision. Correctness over availability:
    the run is rejected instead of picking a side."""


class NoSurvivor(BadSieveError):
    """Every child rectangle at some level was killed by a resonance strip."""

    def __init__(self, level, message=None):
        super().__init__(message or f"no surviving child at level {level}")
        self.level = level


class NoBaseFound(BadSieveError):
    """No base rectangle on the coarse corner grid passed the strip test.
    Impossible for sane configurations; signals misconfiguration."""


class IncompleteSequence(BadSieveError):
    """A best-approximation sequence does not cover the height range the
    caller needs (height_sq_max too small)."""


class InvariantViolation(BadSieveError):
    """A quantity the construction guarantees failed its recheck."""

"""Exception hierarchy shared by every esmean module.

Each class maps to one CLI exit code (see :mod:`esmean.cli`), so library
code must pick the narrowest matching class rather than raising bare
``ValueError``.
"""

from __future__ import annotations


class EsmeanError(Exception):
    """Base class for all package-specific errors."""


class DomainError(EsmeanError):
    """An argument lies outside an operation's mathematical domain."""


class CapacityError(EsmeanError):
    """The request exceeds a configured memory/width/cost budget."""


class ConfigurationError(EsmeanError):
    """Parameters are individually valid but mutually inconsistent."""


class InvariantViolation(EsmeanError):
    """A checked mathematical invariant failed at runtime.

    Raised, for example, if a prime with no unit-fraction solution were
    ever encountered: that is either a bug or a counterexample to the
    conjecture, and both deserve a loud, distinct failure mode.
    """

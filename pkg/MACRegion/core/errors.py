# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
Exceptions raised by MACRegion.

Every class derives from the builtin exception one would otherwise raise,
so code catching :class:`ValueError` or :class:`ArithmeticError` still works.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NoSuperpositionError(ValueError):
    """The stronger user cannot afford a single bit, so nothing is superposed."""


class InfeasibleTargetError(ValueError):
    """A requested rate point lies outside the achievable region."""


class ConstellationError(ValueError):
    """The per-user constellations do not separate into cosets."""


class ConvergenceError(ArithmeticError):
    """A scalar root or fixed-point solve did not converge."""


class RelabelWarning(UserWarning):
    """The users of a scenario were swapped so that user 1 is the stronger one."""


class IntegerLevelWarning(UserWarning):
    """A scenario's powers are off the integer-bit levels the constructions assume."""

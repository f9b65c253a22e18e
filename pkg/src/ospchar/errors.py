"""Exception types shared across the package."""

from __future__ import annotations


class OspError(Exception):
    """Base class for domain errors (bad weights, poles, singular systems)."""


class InvalidIndex(OspError, ValueError):
    pass


class InvalidWeight(OspError, ValueError):
    pass


class InvalidBranch(OspError, ValueError):
    """The parent/child weight pair violates the betweenness conditions."""


class PoleError(OspError, ZeroDivisionError):
    """A closed-form invariant has a vanishing denominator.

    ``pair`` names the colliding quantities, e.g. ``("beta[E1]", "beta[O2]")``.
    """

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class DegenerateDirection(OspError):
    """The chosen deformation direction does not separate the colliding roots."""


class SingularSystem(OspError, ArithmeticError):
    pass

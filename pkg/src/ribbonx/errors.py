"""Exception types shared across the package."""

from .field import DivisionByZero, LevelMismatch, NonDivisorLevel, NotRepresentable
from .linalg import NotInvertible

__all__ = [
    "DivisionByZero", "LevelMismatch", "NonDivisorLevel", "NotRepresentable",
    "NotInvertible", "ParentMismatch", "MissingRMatrix", "FieldTooSmall",
    "NonInvertibleAntipode", "InvalidSpec", "DimensionMismatch", "NotRibbon",
    "InvalidModule", "InvalidRange", "EigenvalueNotInField", "SqrtNotInField",
    "NonIsomorphicRoundtrip", "SizeLimitExceeded", "MissingRibbon",
]


class ParentMismatch(ValueError):
    """Elements of different algebras were combined."""


class MissingRMatrix(ValueError):
    """The operation needs an R-matrix and the algebra has none."""


class FieldTooSmall(ArithmeticError):
    """A required eigenvalue or splitting lies outside the working field."""


class NonInvertibleAntipode(ArithmeticError):
    """The antipode is singular, so the double cannot be formed."""


class InvalidSpec(ValueError):
    """Crossed-product data failed one of its defining conditions."""


class DimensionMismatch(ValueError):
    """A linear map has the wrong shape for its source and target."""


class MissingRibbon(ValueError):
    """The operation needs a ribbon element and the algebra has none."""


class NotRibbon(ValueError):
    """The supplied element is not a ribbon element."""


class InvalidModule(ValueError):
    """Action matrices do not define a module."""


class InvalidRange(ValueError):
    """A basis index range is not a subalgebra block."""


class EigenvalueNotInField(ArithmeticError):
    """An eigenvalue of the operator lies outside the working field."""


class SqrtNotInField(ArithmeticError):
    """An eigenvalue has no square root in the working field."""


class NonIsomorphicRoundtrip(ValueError):
    """A module did not come back isomorphic after a round trip."""


class SizeLimitExceeded(ValueError):
    """A construction would exceed the configured dimension cap."""

"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LieEigError(Exception):
    """Base class for all library errors."""


# fields
class NonSquarefree(LieEigError, ValueError):
    pass


class CompositeP(LieEigError, ValueError):
    pass


class ReducibleGeneratorPolynomial(LieEigError, ValueError):
    pass


class DivisionByZero(LieEigError, ZeroDivisionError):
    pass


# poly
class DivisionByZeroPoly(LieEigError, ZeroDivisionError):
    pass


class SmallCharacteristic(LieEigError, ValueError):
    pass


class DegreeBoundExceeded(LieEigError, ValueError):
    pass


class DoesNotSplit(LieEigError, ValueError):
    pass


# linalg / lie
class DimensionMismatch(LieEigError, ValueError):
    pass


class NotInvariant(LieEigError, ValueError):
    """A·W is not contained in W; ``witness`` is a basis vector w with A·w outside W."""

    def __init__(self, message, witness=None, image=None):
        super().__init__(message)
        self.witness = witness
        self.image = image


class NotInAlgebra(LieEigError, ValueError):
    pass


# decomp
class NotNilpotent(LieEigError, ValueError):
    pass


class InvarianceViolation(LieEigError, RuntimeError):
    pass


class EmptyKernel(LieEigError, ValueError):
    pass


class NotPrimaryScalar(LieEigError, ValueError):
    pass


class BracketClosureViolation(LieEigError, ValueError):
    pass


# eigensolver
class NotApplicable(LieEigError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotADirectSum(LieEigError, ValueError):
    pass


STAGES = (
    "closure",
    "nilpotency",
    "c1",
    "c2",
    "primary",
    "prime-power",
    "root-extraction",
    "engel",
)


class StageFailure(LieEigError, RuntimeError):
    """Certificate for a pipeline stage that failed; ``stage`` is one of STAGES."""

    def __init__(self, stage: str, message: str, witness=None):
        if stage not in STAGES:
            raise ValueError(f"unknown stage {stage!r}")
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.detail = message
        self.witness = witness


# cli / io
class ParseError(LieEigError, ValueError):
    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class ValidationError(LieEigError, ValueError):
    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location

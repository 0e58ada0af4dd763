"""Exception hierarchy.

Validators collect every violated invariant before raising, so a caller can
inspect ``exc.violations`` instead of fixing problems one at a time.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    value: float | None = None


class DomainRDMError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(DomainRDMError, ValueError):
    pass


class ValidationError(DomainRDMError, ValueError):
    """An input failed one or more invariants.

    The concrete subclass matches the first violation found; ``violations``
    lists all of them.
    """

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        if message is None:
            message = "; ".join(v.message for v in self.violations)
        super().__init__(message)


class MalformedInput(ValidationError):
    pass


class NonSymmetric(ValidationError):
    pass


class TraceMismatch(ValidationError):
    pass


class BoundViolation(ValidationError):
    pass


class SymmetryViolation(ValidationError):
    pass


class ContractionMismatch(ValidationError):
    pass


class IdentityResolutionFailure(ValidationError):
    pass


class InvalidPartition(ValidationError):
    pass


class NonOrthonormal(ValidationError):
    pass


class NotDuodempotent(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class NotPSD(DomainRDMError, ValueError):
    def __init__(self, eigenvalue, tol):
        self.eigenvalue = float(eigenvalue)
        super().__init__(
            f"matrix is not positive semidefinite: eigenvalue {self.eigenvalue!r} < -{tol!r}")


class LocalizationError(DomainRDMError):
    pass


class NegativeOccupation(LocalizationError):
    def __init__(self, eigenvalue):
        self.eigenvalue = float(eigenvalue)
        super().__init__(
            f"isopycnic transformation needs nonnegative occupations; got {self.eigenvalue!r}")


class NotRepresentable(LocalizationError):
    def __init__(self, report):
        self.report = report
        codes = ", ".join(f"{f.code} {f.magnitude:.3g}" for f in report.findings)
        super().__init__(f"domain matrix is not representable ({codes})")


class ParseError(DomainRDMError, ValueError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class SchemaVersionMismatch(ParseError):
    pass


_BY_CODE = {
    "MALFORMED": MalformedInput,
    "NON_SYMMETRIC": NonSymmetric,
    "TRACE_MISMATCH": TraceMismatch,
    "BOUND_VIOLATION": BoundViolation,
    "SYMMETRY_VIOLATION": SymmetryViolation,
    "CONTRACTION_MISMATCH": ContractionMismatch,
    "IDENTITY_RESOLUTION": IdentityResolutionFailure,
    "INVALID_PARTITION": InvalidPartition,
    "NON_ORTHONORMAL": NonOrthonormal,
    "NOT_DUODEMPOTENT": NotDuodempotent,
    "TOO_LARGE": TooLarge,
}


def raise_violations(violations):
    """Raise the error class of the first violation, carrying all of them."""
    if violations:
        cls = _BY_CODE.get(violations[0].code, ValidationError)
        raise cls(violations)

from __future__ import annotations

from typing import Any


class TannakitError(ValueError):
    """Base error. ``code`` is a short machine-readable tag used in reports and exit handling."""

    code = "tannakit_error"

    def __init__(self, message: str | None = None, **details: Any) -> None:
        super().__init__(message or self.code)
        self.details = details


class DimensionMismatchError(TannakitError):
    code = "dimension_mismatch"


class SingularMatrixError(TannakitError):
    code = "singular_matrix"


class GroupAxiomError(TannakitError):
    code = "group_axiom_failed"

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str | None = None) -> None:
        super().__init__(message or f"{axiom} fails at {witness}", axiom=axiom, witness=witness)
        self.axiom = axiom
        self.witness = witness


class GroupTooLargeError(TannakitError):
    code = "group_too_large"


class NotSubgroupError(TannakitError):
    code = "not_subgroup"


class NotNormalError(TannakitError):
    code = "not_normal"


class UnknownGroupError(TannakitError):
    code = "unknown_group"


class NonHomomorphismError(TannakitError):
    code = "non_homomorphism"

    def __init__(self, witness: tuple[int, int], message: str | None = None) -> None:
        super().__init__(message or f"M_g M_h != M_gh at {witness}", witness=witness)
        self.witness = witness


class AlgebraMismatchError(TannakitError):
    code = "algebra_mismatch"


class NotCommutativeError(TannakitError):
    code = "not_commutative"


class NotSubcomoduleError(TannakitError):
    code = "not_subcomodule"


class NotColinearError(TannakitError):
    code = "not_colinear"


class ComoduleAxiomError(TannakitError):
    code = "comodule_axiom_failed"


class IntegralError(TannakitError):
    code = "integral_space_not_one_dimensional"


class EtaleHypothesisError(TannakitError):
    code = "etale_hypothesis_violated"


class NotSeparableError(TannakitError):
    code = "not_separable"


class ObjectMismatchError(TannakitError):
    code = "object_mismatch"


class UnknownObjectSpecError(TannakitError):
    code = "unknown_object_spec"


class InvalidScalarError(TannakitError):
    code = "invalid_scalar"


# Raised while preparing a suite; the CLI reports these as configuration errors.
PRECONDITION_ERRORS: tuple[type[TannakitError], ...] = (EtaleHypothesisError, NotSeparableError)

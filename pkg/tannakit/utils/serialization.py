"""JSON-safe encoding of exact scalars and matrices as "p/q" strings."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from tannakit.exactlin import FieldSpec, Matrix, Number
from tannakit.exceptions import DimensionMismatchError, InvalidScalarError


def format_scalar(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(raw: Any, field: FieldSpec) -> Number:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise InvalidScalarError(f"expected an integer or a 'p/q' string, got {raw!r}")
    return field.coerce(raw)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in m.tolist()]


def matrix_from_json(rows: Sequence[Sequence[Any]], field: FieldSpec, cols: int = 0) -> Matrix:
    parsed = [[parse_scalar(v, field) for v in row] for row in rows]
    widths = {len(r) for r in parsed}
    if len(widths) > 1:
        raise DimensionMismatchError(f"ragged matrix with row lengths {sorted(widths)}")
    return Matrix.from_rows(parsed, field, cols=cols)

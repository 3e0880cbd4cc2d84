"""Exact linear algebra over the rationals and prime fields.

Matrices wrap numpy object arrays holding ``fractions.Fraction`` (over Q) or Python ints
reduced into ``[0, p)`` (over F_p). Elimination runs on sparse row dictionaries: the
operators built by the comodule layer are Kronecker products and mostly zero.

Tensor products of spaces use the row-major pairing ``(i, j) -> i * dim2 + j`` everywhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

import numpy as np
import structlog

from tannakit.exceptions import DimensionMismatchError, InvalidScalarError, SingularMatrixError, TannakitError
from tannakit.utils.numbers import is_prime

logger = structlog.get_logger(__name__)

Number = Fraction | int
SparseRow = dict[int, Number]

_FIELD_PATTERN = re.compile(r"(?:F|FP|GF)\(?(\d+)\)?")


class FieldKind(str, Enum):
    RATIONALS = "Q"
    PRIME = "Fp"


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind is FieldKind.PRIME:
            if self.p is None or not is_prime(self.p):
                raise TannakitError(f"prime field needs a prime modulus, got {self.p}")
        elif self.p is not None:
            raise TannakitError("the rational field takes no modulus")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Accepts ``Q``, ``QQ``, ``F5``, ``Fp5``, ``GF(5)``."""
        token = text.strip().replace(" ", "").upper()
        if token in {"Q", "QQ", "RATIONALS"}:
            return cls.rationals()
        match = _FIELD_PATTERN.fullmatch(token)
        if match:
            return cls.prime(int(match.group(1)))
        raise TannakitError(f"unrecognised field spec {text!r}")

    @property
    def characteristic(self) -> int:
        return self.p or 0

    def divides(self, n: int) -> bool:
        """True when the characteristic divides ``n`` (never over Q)."""
        return self.p is not None and n % self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def coerce(self, value: Any) -> Number:
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidScalarError(f"{value!r} is not an exact scalar") from exc
        if self.p is None:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, (int, np.integer)):
                return Fraction(int(value))
            raise TypeError(f"cannot coerce {value!r} into Q")
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise TannakitError(f"{value} has no image in F{self.p}")
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        raise TypeError(f"cannot coerce {value!r} into F{self.p}")

    def reduce(self, value: Number) -> Number:
        return value if self.p is None else value % self.p

    def inverse(self, value: Number) -> Number:
        if value == 0:
            raise SingularMatrixError("division by zero")
        if self.p is None:
            return 1 / Fraction(value)
        return pow(int(value), -1, self.p)

    @property
    def zero(self) -> Number:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Number:
        return Fraction(1) if self.p is None else 1


@dataclass(frozen=True)
class Scalar:
    value: Number
    field: FieldSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)


class Matrix:
    """Immutable dense matrix over a ``FieldSpec``."""

    __slots__ = ("_a", "field")

    def __init__(self, entries: Any, field: FieldSpec, shape: tuple[int, int] | None = None) -> None:
        arr = np.array(entries, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"matrix entries must be 2-dimensional, got {arr.shape}")
        if arr.size:
            arr = np.frompyfunc(field.coerce, 1, 1)(arr).astype(object)
        self._a = _freeze(arr)
        self.field = field

    @classmethod
    def _wrap(cls, arr: np.ndarray, field: FieldSpec) -> Matrix:
        # trusted path: entries already live in the field, up to reduction mod p
        out = object.__new__(cls)
        if field.p is not None and arr.size:
            arr = arr % field.p
        out._a = _freeze(np.asarray(arr, dtype=object))
        out.field = field
        return out

    # constructors

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> Matrix:
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(field.zero)
        return cls._wrap(arr, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> Matrix:
        arr = np.empty((n, n), dtype=object)
        arr.fill(field.zero)
        for i in range(n):
            arr[i, i] = field.one
        return cls._wrap(arr, field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], field: FieldSpec, cols: int = 0) -> Matrix:
        if not rows:
            return cls.zeros(0, cols, field)
        return cls(rows, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Matrix], rows: int, field: FieldSpec) -> Matrix:
        if not columns:
            return cls.zeros(rows, 0, field)
        return hstack(columns)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict[tuple[int, int], Any], field: FieldSpec) -> Matrix:
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(field.zero)
        for (i, j), v in entries.items():
            arr[i, j] = field.coerce(v)
        return cls._wrap(arr, field)

    @classmethod
    def unit_vector(cls, n: int, i: int, field: FieldSpec) -> Matrix:
        return cls.from_entries(n, 1, {(i, 0): 1}, field)

    # shape and access

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return int(self._a.shape[0])

    @property
    def cols(self) -> int:
        return int(self._a.shape[1])

    @property
    def entries(self) -> np.ndarray:
        return self._a

    def __getitem__(self, key: tuple[int, int]) -> Number:
        return self._a[key]  # type: ignore[no-any-return]

    def column(self, j: int) -> Matrix:
        return Matrix._wrap(self._a[:, j : j + 1], self.field)

    def columns(self) -> Iterator[Matrix]:
        for j in range(self.cols):
            yield self.column(j)

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix._wrap(self._a[:, list(idx)], self.field) if idx else Matrix.zeros(self.rows, 0, self.field)

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix._wrap(self._a[list(idx), :], self.field) if idx else Matrix.zeros(0, self.cols, self.field)

    def reshape(self, rows: int, cols: int) -> Matrix:
        """Row-major reshape; a column vector of length r*c becomes an r x c matrix."""
        return Matrix._wrap(self._a.reshape(rows, cols), self.field)

    def flatten(self) -> Matrix:
        """Row-major flattening into a column vector."""
        return Matrix._wrap(self._a.reshape(-1, 1), self.field)

    def regrouped(self, shape: Sequence[int], axes: Sequence[int], rows: int, cols: int) -> Matrix:
        """Read the entries as a tensor of ``shape``, permute ``axes``, flatten to rows x cols."""
        arr = self._a.reshape(tuple(shape)).transpose(tuple(axes)).reshape(rows, cols)
        return Matrix._wrap(arr, self.field)

    def tolist(self) -> list[list[Number]]:
        return self._a.tolist()  # type: ignore[no-any-return]

    # arithmetic

    def _check_field(self, other: Matrix) -> None:
        if other.field != self.field:
            raise DimensionMismatchError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot compose {self.shape} with {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.field)
        return Matrix._wrap(self._a @ other._a, self.field)

    def __add__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self._a + other._a, self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._wrap(self._a - other._a, self.field)

    def __neg__(self) -> Matrix:
        return Matrix._wrap(-self._a, self.field)

    def scale(self, c: Any) -> Matrix:
        return Matrix._wrap(self._a * self.field.coerce(c), self.field)

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self._a.T, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self.field != other.field:
            return False
        return bool(np.all(self._a == other._a)) if self._a.size else True

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self._a.size or not bool(np.any(self._a != 0))

    def first_nonzero(self) -> tuple[int, int] | None:
        """Row-major position of the first nonzero entry, used as a failure witness."""
        if not self._a.size:
            return None
        nz = np.argwhere(self._a != 0)
        return (int(nz[0][0]), int(nz[0][1])) if len(nz) else None

    def rank(self) -> int:
        return len(_echelon(_sparse_rows(self._a), self.field, self.cols))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _sparse_rows(arr: np.ndarray) -> Iterator[SparseRow]:
    if not arr.size:
        return
    mask = arr != 0
    for i in range(arr.shape[0]):
        idx = np.flatnonzero(mask[i])
        if len(idx):
            yield {int(j): arr[i, j] for j in idx}


def _echelon(rows: Iterable[SparseRow], field: FieldSpec, ncols: int, stop_when_full: bool = True) -> dict[int, SparseRow]:
    """Incremental Gauss-Jordan on sparse rows.

    Returns pivot column -> normalized pivot row. Pivot rows are kept mutually reduced, so
    sorting by pivot column yields the reduced row echelon form.
    """
    p = field.p
    pivots: dict[int, SparseRow] = {}
    for row in rows:
        r = dict(row)
        for c in [c for c in r if c in pivots]:
            coef = r.get(c)
            if not coef:
                continue
            for k, v in pivots[c].items():
                nv = r.get(k, 0) - coef * v
                if p is not None:
                    nv %= p
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
        if not r:
            continue
        pc = min(r)
        inv = field.inverse(r[pc])
        r = {k: (v * inv % p if p is not None else v * inv) for k, v in r.items()}
        for prow in pivots.values():
            coef = prow.get(pc)
            if not coef:
                continue
            for k, v in r.items():
                nv = prow.get(k, 0) - coef * v
                if p is not None:
                    nv %= p
                if nv == 0:
                    prow.pop(k, None)
                else:
                    prow[k] = nv
        pivots[pc] = r
        if stop_when_full and len(pivots) == ncols:
            break
    return pivots


def _dense(rows: int, cols: int, sparse: Iterable[tuple[int, SparseRow]], field: FieldSpec) -> Matrix:
    arr = np.empty((rows, cols), dtype=object)
    arr.fill(field.zero)
    for i, row in sparse:
        for j, v in row.items():
            arr[i, j] = v
    return Matrix._wrap(arr, field)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    pivots = _echelon(_sparse_rows(m.entries), m.field, m.cols)
    order = sorted(pivots)
    return _dense(len(order), m.cols, enumerate(pivots[c] for c in order), m.field), tuple(order)


def rank(m: Matrix) -> int:
    return m.rank()


def _kernel_from_pivots(pivots: dict[int, SparseRow], ncols: int, field: FieldSpec) -> Matrix:
    free = [c for c in range(ncols) if c not in pivots]
    position = {f: j for j, f in enumerate(free)}
    entries: dict[int, SparseRow] = {}
    for f, j in position.items():
        entries.setdefault(f, {})[j] = field.one
    for pc, row in pivots.items():
        for k, v in row.items():
            if k in position:
                entries.setdefault(pc, {})[position[k]] = field.reduce(-v)
    basis = _dense(ncols, len(free), entries.items(), field)
    return column_echelon(basis)


def column_echelon(m: Matrix) -> Matrix:
    """Reduced column echelon form of the column span of ``m`` (zero columns dropped)."""
    if m.cols == 0:
        return m
    reduced, _ = rref(m.T)
    return reduced.T if reduced.rows else Matrix.zeros(m.rows, 0, m.field)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{v : m v = 0}`` in reduced column echelon form."""
    pivots = _echelon(_sparse_rows(m.entries), m.field, m.cols)
    basis = _kernel_from_pivots(pivots, m.cols, m.field)
    logger.debug("kernel_computed", shape=m.shape, nullity=basis.cols)
    return basis


def joint_kernel(blocks: Sequence[Matrix], ncols: int, field: FieldSpec) -> Matrix:
    """Kernel of the vertical stack of ``blocks`` without materializing the stack."""
    for b in blocks:
        if b.cols != ncols:
            raise DimensionMismatchError(f"block with {b.cols} columns, expected {ncols}")

    def rows() -> Iterator[SparseRow]:
        for b in blocks:
            yield from _sparse_rows(b.entries)

    pivots = _echelon(rows(), field, ncols)
    return _kernel_from_pivots(pivots, ncols, field)


def image_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the column space of ``m`` in reduced column echelon form."""
    if m.cols == 0:
        return Matrix.zeros(m.rows, 0, m.field)
    return column_echelon(m)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Particular solution of ``a x = b`` with free variables set to zero, or None."""
    if a.rows != b.rows:
        raise DimensionMismatchError(f"solve: {a.shape} against right-hand side {b.shape}")
    a._check_field(b)
    n = a.cols
    if a.rows == 0:
        return Matrix.zeros(n, b.cols, a.field)
    augmented = np.concatenate([a.entries, b.entries], axis=1)
    pivots = _echelon(_sparse_rows(augmented), a.field, n + b.cols, stop_when_full=False)
    if any(pc >= n for pc in pivots):
        return None
    entries: dict[int, SparseRow] = {}
    for pc, row in pivots.items():
        entries[pc] = {k - n: v for k, v in row.items() if k >= n}
    return _dense(n, b.cols, entries.items(), a.field)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row and column pairs (i, j) map to i * dim(b) + j."""
    a._check_field(b)
    r1, c1 = a.shape
    r2, c2 = b.shape
    if not (r1 and c1 and r2 and c2):
        return Matrix.zeros(r1 * r2, c1 * c2, a.field)
    outer = np.multiply.outer(a.entries, b.entries)
    return Matrix._wrap(outer.transpose(0, 2, 1, 3).reshape(r1 * r2, c1 * c2), a.field)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatchError(f"inverse of non-square {m.shape}")
    x = solve(m, Matrix.identity(m.rows, m.field))
    if x is None:
        raise SingularMatrixError(f"{m!r} is singular")
    return x


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and m.rank() == m.rows


def determinant(m: Matrix) -> Number:
    if m.rows != m.cols:
        raise DimensionMismatchError(f"determinant of non-square {m.shape}")
    field = m.field
    rows = [list(r) for r in m.tolist()]
    n = len(rows)
    det: Number = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = field.reduce(-det)
        det = field.reduce(det * rows[col][col])
        inv = field.inverse(rows[col][col])
        for r in range(col + 1, n):
            factor = field.reduce(rows[r][col] * inv)
            if factor:
                rows[r] = [field.reduce(x - factor * y) for x, y in zip(rows[r], rows[col])]
    return det


def hstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    rows = mats[0].rows
    for m in mats:
        if m.rows != rows:
            raise DimensionMismatchError("hstack needs equal row counts")
    return Matrix._wrap(np.concatenate([m.entries for m in mats], axis=1), field)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    cols = mats[0].cols
    for m in mats:
        if m.cols != cols:
            raise DimensionMismatchError("vstack needs equal column counts")
    return Matrix._wrap(np.concatenate([m.entries for m in mats], axis=0), field)


def block_diag(mats: Sequence[Matrix], field: FieldSpec) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    arr = np.empty((rows, cols), dtype=object)
    arr.fill(field.zero)
    r = c = 0
    for m in mats:
        arr[r : r + m.rows, c : c + m.cols] = m.entries
        r += m.rows
        c += m.cols
    return Matrix._wrap(arr, field)


def tensor_permutation(dims: Sequence[int], order: Sequence[int], field: FieldSpec) -> Matrix:
    """Reorders tensor factors: output factor t is input factor ``order[t]``."""
    total = int(np.prod(dims)) if dims else 1
    source = np.arange(total).reshape(tuple(dims)).transpose(tuple(order)).reshape(-1)
    return Matrix.from_entries(total, total, {(t, int(s)): 1 for t, s in enumerate(source)}, field)


def same_column_space(a: Matrix, b: Matrix) -> bool:
    return image_basis(a) == image_basis(b)


def contains_columns(space: Matrix, vectors: Matrix) -> bool:
    """True when every column of ``vectors`` lies in the column span of ``space``."""
    if vectors.cols == 0:
        return True
    if space.cols == 0:
        return vectors.is_zero()
    return solve(space, vectors) is not None


EXHAUSTIVE_SEARCH_LIMIT = 4096
RANDOM_SEARCH_ATTEMPTS = 24
_RATIONAL_COEFFICIENT_BOUND = 2**31


def _combination(mats: Sequence[Matrix], coeffs: Sequence[int], n: int, field: FieldSpec) -> Matrix:
    total = Matrix.zeros(n, n, field)
    for c, m in zip(coeffs, mats):
        if c:
            total = total + m.scale(int(c))
    return total


def _projective_points(p: int, m: int) -> Iterator[tuple[int, ...]]:
    """One coefficient vector per line of F_p^m: the leading nonzero entry is 1."""
    for lead in range(m):
        for tail in itertools.product(range(p), repeat=m - lead - 1):
            yield (0,) * lead + (1,) + tail


def invertible_in_span(
    mats: Sequence[Matrix],
    n: int,
    field: FieldSpec,
    *,
    seed: int = 0,
    attempts: int = RANDOM_SEARCH_ATTEMPTS,
    exhaustive_limit: int = EXHAUSTIVE_SEARCH_LIMIT,
) -> Matrix | None:
    """An invertible n x n matrix in the span of ``mats``, or None when there is none.

    None is exact when the joint column or row span of ``mats`` is deficient, and when the
    span is searched exhaustively: over F_p with at most ``exhaustive_limit`` lines in the
    span, every line is tried. Otherwise seeded random combinations are tried. The
    determinant is a polynomial of degree n in the coefficients, so when it is not
    identically zero a random point with coordinates from a set S misses with probability at
    most n / |S|; S is [1, 2^31) over Q and F_p over a prime field. A negative answer from
    the random branch is logged.
    """
    if n == 0:
        return Matrix.zeros(0, 0, field)
    if not mats or any(m.shape != (n, n) for m in mats):
        return None
    if hstack(list(mats)).rank() < n or vstack(list(mats)).rank() < n:
        return None
    for m in mats:
        if is_invertible(m):
            return m
    k = len(mats)
    if field.p is not None and (field.p**k - 1) // (field.p - 1) <= exhaustive_limit:
        for coeffs in _projective_points(field.p, k):
            candidate = _combination(mats, coeffs, n, field)
            if is_invertible(candidate):
                return candidate
        return None
    rng = np.random.default_rng(seed)
    low, high = (0, field.p) if field.p is not None else (1, _RATIONAL_COEFFICIENT_BOUND)
    for _ in range(attempts):
        coeffs = [int(c) for c in rng.integers(low, high, size=k)]
        candidate = _combination(mats, coeffs, n, field)
        if is_invertible(candidate):
            return candidate
    logger.warning("invertible_search_exhausted", size=n, span=k, field=str(field), attempts=attempts)
    return None

"""Finite-dimensional Hopf algebras stored as structure-constant matrices.

All structure maps act on column vectors: ``mult`` is dim x dim^2, ``unit`` dim x 1,
``comult`` dim^2 x dim, ``counit`` 1 x dim, ``antipode`` dim x dim.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any

import structlog

from tannakit.exactlin import FieldSpec, Matrix, kernel_basis, kron, tensor_permutation, vstack
from tannakit.exceptions import IntegralError, NotNormalError
from tannakit.groups import FiniteGroup, Subgroup, is_normal, quotient_group

logger = structlog.get_logger(__name__)


class HopfKind(str, Enum):
    GROUP_ALGEBRA = "group_algebra"
    FUNCTION_ALGEBRA = "function_algebra"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    dim: int
    field: FieldSpec
    mult: Matrix
    unit: Matrix
    comult: Matrix
    counit: Matrix
    antipode: Matrix
    basis_labels: tuple[str, ...]
    kind: HopfKind = HopfKind.CUSTOM
    group: FiniteGroup | None = field(default=None)

    def same_structure(self, other: HopfAlgebra) -> bool:
        """Exact equality of all five structure tensors."""
        return (
            self.dim == other.dim
            and self.field == other.field
            and self.mult == other.mult
            and self.unit == other.unit
            and self.comult == other.comult
            and self.counit == other.counit
            and self.antipode == other.antipode
        )

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim, self.field)

    def left_multiplication(self, a: Matrix) -> Matrix:
        """Matrix of ``x -> a x`` for a column vector ``a``."""
        return self.mult @ kron(a, self.identity())

    def right_multiplication(self, a: Matrix) -> Matrix:
        return self.mult @ kron(self.identity(), a)

    def basis_vector(self, i: int) -> Matrix:
        return Matrix.unit_vector(self.dim, i, self.field)

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.kind.value}, dim={self.dim}, field={self.field})"


@dataclass(frozen=True)
class IntegralElement:
    vector: Matrix
    algebra: HopfAlgebra


@dataclass(frozen=True)
class AxiomCheck:
    family: str
    passed: bool
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[AxiomCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def family(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.family == name)


AXIOM_FAMILIES: tuple[str, ...] = (
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "comultiplication_is_algebra_map",
    "counit_is_algebra_map",
    "antipode",
)


def group_algebra(g: FiniteGroup, field: FieldSpec) -> HopfAlgebra:
    """k[G]: basis of group elements, Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    n = g.order
    mult = Matrix.from_entries(n, n * n, {(g.mul(i, j), i * n + j): 1 for i in range(n) for j in range(n)}, field)
    comult = Matrix.from_entries(n * n, n, {(i * n + i, i): 1 for i in range(n)}, field)
    return HopfAlgebra(
        dim=n,
        field=field,
        mult=mult,
        unit=Matrix.unit_vector(n, g.identity, field),
        comult=comult,
        counit=Matrix.from_entries(1, n, {(0, i): 1 for i in range(n)}, field),
        antipode=Matrix.from_entries(n, n, {(g.inv(i), i): 1 for i in range(n)}, field),
        basis_labels=g.labels,
        kind=HopfKind.GROUP_ALGEBRA,
        group=g,
    )


def function_algebra(g: FiniteGroup, field: FieldSpec) -> HopfAlgebra:
    """O(G) = k[G]*: indicator basis x^g with x^g x^h = delta x^g and unit sum_g x^g."""
    n = g.order
    mult = Matrix.from_entries(n, n * n, {(i, i * n + i): 1 for i in range(n)}, field)
    # Delta(x^g) = sum_h x^h (x) x^(h^-1 g)
    comult = Matrix.from_entries(
        n * n, n, {(h * n + g.mul(g.inv(h), k), k): 1 for k in range(n) for h in range(n)}, field
    )
    return HopfAlgebra(
        dim=n,
        field=field,
        mult=mult,
        unit=Matrix.from_entries(n, 1, {(i, 0): 1 for i in range(n)}, field),
        comult=comult,
        counit=Matrix.unit_vector(n, g.identity, field).T,
        antipode=Matrix.from_entries(n, n, {(g.inv(i), i): 1 for i in range(n)}, field),
        basis_labels=tuple(f"x^{label}" for label in g.labels),
        kind=HopfKind.FUNCTION_ALGEBRA,
        group=g,
    )


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """Transpose every structure tensor: mult <-> comult, unit <-> counit."""
    if h.kind is HopfKind.GROUP_ALGEBRA:
        kind = HopfKind.FUNCTION_ALGEBRA
        labels = tuple(f"x^{label}" for label in h.basis_labels)
    elif h.kind is HopfKind.FUNCTION_ALGEBRA:
        kind = HopfKind.GROUP_ALGEBRA
        labels = tuple(label[2:] if label.startswith("x^") else label for label in h.basis_labels)
    else:
        kind, labels = HopfKind.CUSTOM, h.basis_labels
    return HopfAlgebra(
        dim=h.dim,
        field=h.field,
        mult=h.comult.T,
        unit=h.counit.T,
        comult=h.mult.T,
        counit=h.unit.T,
        antipode=h.antipode.T,
        basis_labels=labels,
        kind=kind,
        group=h.group,
    )


def _swap(n: int, f: FieldSpec) -> Matrix:
    return tensor_permutation((n, n), (1, 0), f)


def is_commutative(h: HopfAlgebra) -> bool:
    return h.mult @ _swap(h.dim, h.field) == h.mult


def _witness(diff: Matrix, dims: tuple[int, ...]) -> tuple[int, ...] | None:
    pos = diff.first_nonzero()
    if pos is None:
        return None
    row, col = pos
    decoded: list[int] = []
    for d in reversed(dims):
        col, r = divmod(col, d)
        decoded.append(r)
    return (row, *reversed(decoded))


def _family(name: str, lhs: Matrix, rhs: Matrix, dims: tuple[int, ...]) -> AxiomCheck:
    diff = lhs - rhs
    witness = _witness(diff, dims)
    return AxiomCheck(name, witness is None, witness)


def check_axioms(h: HopfAlgebra) -> AxiomReport:
    """Pass/fail for each of the seven axiom families.

    A witness is ``(output row, input basis indices...)`` of the first nonzero entry of the
    difference between the two sides.
    """
    n, f = h.dim, h.field
    one = Matrix.identity(n, f)
    m, u, d, e, s = h.mult, h.unit, h.comult, h.counit, h.antipode
    k1 = Matrix.identity(1, f)
    checks: list[AxiomCheck] = []

    checks.append(_family("associativity", m @ kron(m, one), m @ kron(one, m), (n, n, n)))
    unit_check = _family("unit", m @ kron(u, one), one, (n,))
    if unit_check.passed:
        unit_check = _family("unit", m @ kron(one, u), one, (n,))
    checks.append(unit_check)
    checks.append(_family("coassociativity", kron(d, one) @ d, kron(one, d) @ d, (n,)))
    counit_check = _family("counit", kron(e, one) @ d, one, (n,))
    if counit_check.passed:
        counit_check = _family("counit", kron(one, e) @ d, one, (n,))
    checks.append(counit_check)

    tau23 = tensor_permutation((n, n, n, n), (0, 2, 1, 3), f)
    bialgebra = _family("comultiplication_is_algebra_map", d @ m, kron(m, m) @ tau23 @ kron(d, d), (n, n))
    if bialgebra.passed:
        bialgebra = _family("comultiplication_is_algebra_map", d @ u, kron(u, u), (1,))
    checks.append(bialgebra)
    counit_alg = _family("counit_is_algebra_map", e @ m, kron(e, e), (n, n))
    if counit_alg.passed:
        counit_alg = _family("counit_is_algebra_map", e @ u, k1, (1,))
    checks.append(counit_alg)

    ue = u @ e
    antipode = _family("antipode", m @ kron(s, one) @ d, ue, (n,))
    if antipode.passed:
        antipode = _family("antipode", m @ kron(one, s) @ d, ue, (n,))
    checks.append(antipode)

    report = AxiomReport(tuple(checks))
    if not report.all_passed:
        logger.info("hopf_axioms_failed", algebra=repr(h), failures=[c.family for c in report.failures])
    return report


def find_integral(h: HopfAlgebra) -> IntegralElement:
    """Left integral: a x = eps(a) x for every basis element a, normalized by echelon form."""
    blocks = []
    for i in range(h.dim):
        a = h.basis_vector(i)
        eps_a = (h.counit @ a)[0, 0]
        blocks.append(h.left_multiplication(a) - h.identity().scale(eps_a))
    space = kernel_basis(vstack(blocks))
    if space.cols != 1:
        raise IntegralError(f"integral space of {h!r} has dimension {space.cols}")
    return IntegralElement(space, h)


def is_hopf_map(phi: Matrix, source: HopfAlgebra, target: HopfAlgebra) -> bool:
    """phi: source -> target respects product, unit, coproduct, counit and antipode."""
    return (
        phi @ source.mult == target.mult @ kron(phi, phi)
        and phi @ source.unit == target.unit
        and kron(phi, phi) @ source.comult == target.comult @ phi
        and target.counit @ phi == source.counit
        and phi @ source.antipode == target.antipode @ phi
    )


def hopf_surjection_from_quotient(
    g: FiniteGroup, l: Subgroup, field: FieldSpec
) -> tuple[HopfAlgebra, HopfAlgebra, Matrix, Matrix]:
    """(O(G), O(L), q*, f*) for a normal subgroup L with quotient A = G/L.

    q* restricts functions to L; f* pulls functions on A back along G -> A.
    """
    if not is_normal(g, l):
        raise NotNormalError(f"{l.name or 'subgroup'} is not normal in {g}")
    o_g = function_algebra(g, field)
    o_l = function_algebra(l.as_group(), field)
    q_star = Matrix.from_entries(l.order, g.order, {(k, m): 1 for k, m in enumerate(l.members)}, field)
    quotient = quotient_group(g, l)
    f_star = Matrix.from_entries(
        g.order, quotient.group.order, {(x, quotient.projection[x]): 1 for x in range(g.order)}, field
    )
    return o_g, o_l, q_star, f_star


def perturb(h: HopfAlgebra, tensor: str, row: int, col: int, delta: Any = 1) -> HopfAlgebra:
    """Copy of ``h`` with one structure-tensor entry shifted by ``delta`` (mutation testing)."""
    original: Matrix = getattr(h, tensor)
    entries = {(i, j): original[i, j] for i in range(original.rows) for j in range(original.cols)}
    entries[(row, col)] = original[row, col] + h.field.coerce(delta)
    mutated = Matrix.from_entries(original.rows, original.cols, entries, h.field)
    return replace(h, **{tensor: mutated}, kind=HopfKind.CUSTOM)

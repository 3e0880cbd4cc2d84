"""Right comodules over a Hopf algebra, i.e. representations of the group scheme.

A coaction is a (dim * dim(O)) x dim matrix; the basis of V (x) O is ordered
(i, a) -> i * dim(O) + a. For a function algebra O(G), the coaction of a representation
g -> M_g is rho(v) = sum_g M_g v (x) x^g.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import structlog

from tannakit.exactlin import (
    FieldSpec,
    Matrix,
    block_diag,
    contains_columns,
    hstack,
    image_basis,
    invertible_in_span,
    kernel_basis,
    kron,
    solve,
    tensor_permutation,
)
from tannakit.exceptions import (
    AlgebraMismatchError,
    ComoduleAxiomError,
    NonHomomorphismError,
    NotCommutativeError,
    NotSubcomoduleError,
    TannakitError,
)
from tannakit.groups import FiniteGroup, Subgroup
from tannakit.hopf import AxiomCheck, HopfAlgebra, function_algebra, hopf_surjection_from_quotient, is_commutative

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Comodule:
    dim: int
    algebra: HopfAlgebra
    coaction: Matrix
    name: str = ""

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def __repr__(self) -> str:
        return f"Comodule({self.name or '?'}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class ComoduleMap:
    source: Comodule
    target: Comodule
    matrix: Matrix

    def __matmul__(self, other: ComoduleMap) -> ComoduleMap:
        return ComoduleMap(other.source, self.target, self.matrix @ other.matrix)


def same_algebra(a: HopfAlgebra, b: HopfAlgebra) -> bool:
    return a is b or a.same_structure(b)


def _require_same(x: Comodule, y: Comodule) -> None:
    if not same_algebra(x.algebra, y.algebra):
        raise AlgebraMismatchError(f"{x!r} and {y!r} live over different Hopf algebras")


def comodule_checks(x: Comodule) -> tuple[AxiomCheck, AxiomCheck]:
    """Coassociativity square and counit triangle as exact matrix identities."""
    o, d = x.algebra, x.dim
    i_d = Matrix.identity(d, x.field)
    rho = x.coaction
    coassoc = kron(rho, o.identity()) @ rho - kron(i_d, o.comult) @ rho
    counit = kron(i_d, o.counit) @ rho - i_d
    pos_a, pos_c = coassoc.first_nonzero(), counit.first_nonzero()
    return (
        AxiomCheck("coassociativity", pos_a is None, pos_a),
        AxiomCheck("counit", pos_c is None, pos_c),
    )


def is_comodule(x: Comodule) -> bool:
    return all(c.passed for c in comodule_checks(x))


def make_comodule(algebra: HopfAlgebra, coaction: Matrix, name: str = "") -> Comodule:
    dim = coaction.cols
    if coaction.rows != dim * algebra.dim:
        raise ComoduleAxiomError(f"coaction of shape {coaction.shape} for a {dim}-dimensional space")
    x = Comodule(dim, algebra, coaction, name)
    failed = [c for c in comodule_checks(x) if not c.passed]
    if failed:
        raise ComoduleAxiomError(f"{failed[0].family} fails at {failed[0].witness}")
    return x


def trivial_comodule(o: HopfAlgebra, n: int, name: str = "") -> Comodule:
    """rho(v) = v (x) 1."""
    return Comodule(n, o, kron(Matrix.identity(n, o.field), o.unit), name or ("I" if n == 1 else f"I^{n}"))


def regular_comodule(o: HopfAlgebra, name: str = "regular") -> Comodule:
    return Comodule(o.dim, o, o.comult, name)


def rep_from_matrices(
    g: FiniteGroup,
    images: Sequence[Matrix],
    *,
    algebra: HopfAlgebra | None = None,
    name: str = "",
) -> Comodule:
    """Comodule over O(G) from a representation given on every element of ``g``."""
    if len(images) != g.order:
        raise NonHomomorphismError((g.identity, g.identity), "one matrix per group element required")
    field = images[0].field
    o = algebra if algebra is not None else function_algebra(g, field)
    d = images[0].rows
    if images[g.identity] != Matrix.identity(d, field):
        raise NonHomomorphismError((g.identity, g.identity), "identity does not act trivially")
    for a in range(g.order):
        for b in range(g.order):
            if images[a] @ images[b] != images[g.mul(a, b)]:
                raise NonHomomorphismError((a, b))
    n = g.order
    entries = {
        (i * n + k, j): images[k][i, j]
        for k in range(n)
        for i in range(d)
        for j in range(d)
        if images[k][i, j] != 0
    }
    return Comodule(d, o, Matrix.from_entries(d * n, d, entries, field), name)


def matrices_from_comodule(x: Comodule) -> list[Matrix]:
    """Inverse of ``rep_from_matrices``: the action M_g read off the x^g component."""
    n = x.algebra.dim
    return [x.coaction.select_rows([i * n + k for i in range(x.dim)]) for k in range(n)]


def pushforward(x: Comodule, phi: Matrix, target: HopfAlgebra, name: str = "") -> Comodule:
    """Coaction (id (x) phi) rho along a Hopf algebra map phi: O -> O'."""
    coaction = kron(Matrix.identity(x.dim, x.field), phi) @ x.coaction
    return Comodule(x.dim, target, coaction, name or x.name)


def colinearity_operator(x: Comodule, y: Comodule) -> Matrix:
    """Matrix of T -> rho_y T - (T (x) id) rho_x on row-major vec(T), T of shape dim(y) x dim(x)."""
    _require_same(x, y)
    n, dx, dy = x.algebra.dim, x.dim, y.dim
    f = x.field
    # R[(k, c), j] = rho_x[(j, k), c]
    r = x.coaction.regrouped((dx, n, dx), (1, 2, 0), n * dx, dx)
    return kron(y.coaction, Matrix.identity(dx, f)) - kron(Matrix.identity(dy, f), r)


def hom_space(x: Comodule, y: Comodule) -> Matrix:
    """Basis of colinear maps x -> y; each column is a row-major flattened dim(y) x dim(x) matrix."""
    basis = kernel_basis(colinearity_operator(x, y))
    logger.debug("hom_space_computed", source=x.name, target=y.name, dimension=basis.cols)
    return basis


def hom_maps(x: Comodule, y: Comodule) -> list[ComoduleMap]:
    basis = hom_space(x, y)
    return [ComoduleMap(x, y, col.reshape(y.dim, x.dim)) for col in basis.columns()]


def is_colinear(phi: Matrix, x: Comodule, y: Comodule) -> bool:
    n = x.algebra.dim
    return y.coaction @ phi == kron(phi, Matrix.identity(n, x.field)) @ x.coaction


def identity_map(x: Comodule) -> ComoduleMap:
    return ComoduleMap(x, x, Matrix.identity(x.dim, x.field))


def _require_commutative(o: HopfAlgebra) -> None:
    if not is_commutative(o):
        raise NotCommutativeError(f"{o!r} is not commutative")


def tensor_comodule(x: Comodule, y: Comodule, name: str = "") -> Comodule:
    """Diagonal coaction (id (x) id (x) m) tau_23 (rho_x (x) rho_y)."""
    _require_same(x, y)
    o = x.algebra
    _require_commutative(o)
    n = o.dim
    tau = tensor_permutation((x.dim, n, y.dim, n), (0, 2, 1, 3), o.field)
    coaction = kron(Matrix.identity(x.dim * y.dim, o.field), o.mult) @ tau @ kron(x.coaction, y.coaction)
    return Comodule(x.dim * y.dim, o, coaction, name or f"({x.name}(x){y.name})")


def dual_comodule(x: Comodule, name: str = "") -> Comodule:
    """rho(e^i) = sum_j e^j (x) S(a_ij) where rho(e_j) = sum_i e_i (x) a_ij."""
    o = x.algebra
    _require_commutative(o)
    d, n = x.dim, o.dim
    twisted = kron(Matrix.identity(d, o.field), o.antipode) @ x.coaction
    coaction = twisted.regrouped((d, n, d), (2, 1, 0), d * n, d)
    return Comodule(d, o, coaction, name or f"{x.name}*")


def direct_sum_comodule(x: Comodule, y: Comodule, name: str = "") -> Comodule:
    _require_same(x, y)
    return Comodule(x.dim + y.dim, x.algebra, block_diag([x.coaction, y.coaction], x.field), name or f"({x.name}+{y.name})")


def evaluation(x: Comodule) -> ComoduleMap:
    """ev: x* (x) x -> I."""
    d = x.dim
    unit = trivial_comodule(x.algebra, 1)
    m = Matrix.from_entries(1, d * d, {(0, i * d + i): 1 for i in range(d)}, x.field)
    return ComoduleMap(tensor_comodule(dual_comodule(x), x), unit, m)


def coevaluation(x: Comodule) -> ComoduleMap:
    """coev: I -> x (x) x*."""
    d = x.dim
    unit = trivial_comodule(x.algebra, 1)
    m = Matrix.from_entries(d * d, 1, {(i * d + i, 0): 1 for i in range(d)}, x.field)
    return ComoduleMap(unit, tensor_comodule(x, dual_comodule(x)), m)


def subcomodule(x: Comodule, basis: Matrix, name: str = "") -> tuple[Comodule, ComoduleMap]:
    """Restrict the coaction to the span of ``basis`` (independent columns)."""
    n = x.algebra.dim
    coefficients = solve(kron(basis, Matrix.identity(n, x.field)), x.coaction @ basis)
    if coefficients is None:
        raise NotSubcomoduleError(f"span of {basis!r} is not stable under the coaction of {x!r}")
    sub = Comodule(basis.cols, x.algebra, coefficients, name or f"sub({x.name})")
    return sub, ComoduleMap(sub, x, basis)


def quotient_comodule(x: Comodule, sub_basis: Matrix, name: str = "") -> tuple[Comodule, ComoduleMap]:
    """x / span(sub_basis) with projection P (ker P = span(sub_basis))."""
    n = x.algebra.dim
    f = x.field
    projection = kernel_basis(sub_basis.T).T
    pushed = kron(projection, Matrix.identity(n, f)) @ x.coaction
    if not (pushed @ sub_basis).is_zero():
        raise NotSubcomoduleError(f"span of {sub_basis!r} is not a subcomodule of {x!r}")
    section = solve(projection, Matrix.identity(projection.rows, f))
    if section is None:
        raise TannakitError("projection without a section")
    quotient = Comodule(projection.rows, x.algebra, pushed @ section, name or f"quot({x.name})")
    return quotient, ComoduleMap(x, quotient, projection)


def invariants(x: Comodule) -> tuple[Matrix, Comodule]:
    """Span of {v : rho(v) = v (x) 1} and the trivial comodule of that dimension."""
    o = x.algebra
    fixed = x.coaction - kron(Matrix.identity(x.dim, x.field), o.unit)
    sub = kernel_basis(fixed)
    return sub, trivial_comodule(o, sub.cols)


def _kernel_invariants(x: Comodule, l: Subgroup) -> Matrix:
    g = x.algebra.group
    if g is None:
        raise AlgebraMismatchError("largest S-subobject needs a function algebra of a group")
    _, o_l, q_star, _ = hopf_surjection_from_quotient(g, l, x.field)
    restricted = kron(Matrix.identity(x.dim, x.field), q_star) @ x.coaction
    return kernel_basis(restricted - kron(Matrix.identity(x.dim, x.field), o_l.unit))


def largest_s_subobject(x: Comodule, l: Subgroup) -> tuple[ComoduleMap, Comodule]:
    """L-invariants of x with the inherited G-coaction, which factors through G/L."""
    g = x.algebra.group
    if g is None:
        raise AlgebraMismatchError("largest S-subobject needs a function algebra of a group")
    basis = _kernel_invariants(x, l)
    xs, inclusion = subcomodule(x, basis, name=f"{x.name}_S")
    _, _, _, f_star = hopf_surjection_from_quotient(g, l, x.field)
    if not contains_columns(kron(Matrix.identity(xs.dim, x.field), f_star), xs.coaction):
        raise TannakitError("L-invariant coaction does not factor through G/L")
    return inclusion, xs


def largest_s_quotient(x: Comodule, l: Subgroup) -> tuple[ComoduleMap, Comodule]:
    """Coinvariants x / span{(M_h - 1) v : h in L}, the largest quotient with trivial L-action."""
    mats = matrices_from_comodule(x)
    one = Matrix.identity(x.dim, x.field)
    if x.dim == 0:
        relations = Matrix.zeros(0, 0, x.field)
    else:
        relations = image_basis(hstack([mats[h] - one for h in l.members]))
    quotient, projection = quotient_comodule(x, relations, name=f"{x.name}^S")
    return projection, quotient


def find_isomorphism(x: Comodule, y: Comodule) -> ComoduleMap | None:
    """A colinear isomorphism x -> y, or None.

    Isomorphic comodules have equal hom dimensions in all four directions, which rules out
    most pairs exactly; the remaining search is ``invertible_in_span`` over Hom(x, y).
    """
    if x.dim != y.dim:
        return None
    if x.dim == 0:
        return ComoduleMap(x, y, Matrix.zeros(0, 0, x.field))
    forward = hom_space(x, y)
    dims = {forward.cols, hom_space(y, x).cols, hom_space(x, x).cols, hom_space(y, y).cols}
    if len(dims) != 1:
        return None
    mats = [col.reshape(y.dim, x.dim) for col in forward.columns()]
    found = invertible_in_span(mats, x.dim, x.field)
    return None if found is None else ComoduleMap(x, y, found)

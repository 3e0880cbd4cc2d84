"""The quotient category P of triples (X, Y, f: X -> Y (x) O) for O = O(A), A = G/L.

Morphisms between triples are O-linear colinear maps between the images of
f_hat = (id (x) m)(f (x) id), stored on the reduced column echelon bases of those images.
Sending a triple to the image of f_0 = (id (x) eps) f gives the equivalence with Rep(L).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import structlog

from tannakit.comod import (
    Comodule,
    ComoduleMap,
    direct_sum_comodule,
    dual_comodule,
    hom_space,
    invariants,
    is_colinear,
    largest_s_subobject,
    subcomodule,
    tensor_comodule,
    trivial_comodule,
)
from tannakit.etale import (
    AlgebraObject,
    OModuleObject,
    algebra_object_checks,
    compose_bar_formula,
    module_hom_space,
    pair_product,
    short_exact_checks,
    triple_image,
)
from tannakit.exactlin import (
    FieldSpec,
    Matrix,
    block_diag,
    hstack,
    image_basis,
    is_invertible,
    kron,
    same_column_space,
    solve,
)
from tannakit.exceptions import DimensionMismatchError, NotColinearError, ObjectMismatchError, TannakitError
from tannakit.hopf import AxiomCheck
from tannakit.tannaka_functors import (
    QuotientDatum,
    cotensor,
    counit_eps,
    embedding_into_restriction,
    oa_comodule,
    restrict,
    surjection_from_restriction,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class QuotientContext:
    datum: QuotientDatum
    oA_comodule: Comodule
    mult_oA: Matrix
    unit_oA: Matrix
    counit_oA: Matrix
    algebra_object: AlgebraObject

    @property
    def field(self) -> FieldSpec:
        return self.datum.field

    @property
    def index(self) -> int:
        return self.oA_comodule.dim


@dataclass(frozen=True, eq=False)
class QuotientObject:
    x: Comodule
    y: Comodule
    f: Matrix
    name: str = ""

    def __repr__(self) -> str:
        return f"QuotientObject({self.name or '?'}, x={self.x.dim}, y={self.y.dim})"


@dataclass(frozen=True, eq=False)
class QuotientMap:
    source: QuotientObject
    target: QuotientObject
    matrix: Matrix


@dataclass(frozen=True, eq=False)
class ImageData:
    """im f_hat: echelon basis inside Y (x) O and the O-module it carries."""

    basis: Matrix
    module: OModuleObject

    @property
    def dim(self) -> int:
        return self.basis.cols


def make_quotient_context(d: QuotientDatum) -> QuotientContext:
    carrier = oa_comodule(d)
    alg = AlgebraObject(carrier, d.oA.mult, d.oA.unit, name="O(A)")
    return QuotientContext(d, carrier, d.oA.mult, d.oA.unit, d.oA.counit, alg)


def context_checks(ctx: QuotientContext) -> list[AxiomCheck]:
    """Algebra-object axioms of O(A) in Rep(G); the counit is only L-colinear."""
    checks = algebra_object_checks(ctx.algebra_object)
    d = ctx.datum
    res = restrict(d, ctx.oA_comodule)
    checks.append(AxiomCheck("counit_colinear_over_L", is_colinear(ctx.counit_oA, res, trivial_comodule(d.oL, 1))))
    return checks


def _target(ctx: QuotientContext, y: Comodule) -> Comodule:
    return tensor_comodule(y, ctx.oA_comodule, name=f"{y.name}(x)O(A)")


def make_object(ctx: QuotientContext, x: Comodule, y: Comodule, f: Matrix, name: str = "") -> QuotientObject:
    if f.shape != (y.dim * ctx.index, x.dim):
        raise DimensionMismatchError(f"f has shape {f.shape}, expected {(y.dim * ctx.index, x.dim)}")
    if not is_colinear(f, x, _target(ctx, y)):
        raise NotColinearError(f"f: {x.name} -> {y.name}(x)O(A) is not colinear")
    return QuotientObject(x, y, f, name)


def zero_object(ctx: QuotientContext) -> QuotientObject:
    o = ctx.datum.oG
    zero = Comodule(0, o, Matrix.zeros(0, 0, ctx.field), name="0")
    return QuotientObject(zero, zero, Matrix.zeros(0, 0, ctx.field), name="0")


def f_hat(ctx: QuotientContext, obj: QuotientObject) -> Matrix:
    """(id_Y (x) m)(f (x) id_O)."""
    f = ctx.field
    a = ctx.index
    return kron(Matrix.identity(obj.y.dim, f), ctx.mult_oA) @ kron(obj.f, Matrix.identity(a, f))


def image_of(ctx: QuotientContext, obj: QuotientObject) -> ImageData:
    basis, module = triple_image(ctx.algebra_object, obj.y, obj.f, name=f"im({obj.name})")
    return ImageData(basis, module)


def right_adjoint_p(ctx: QuotientContext, obj: QuotientObject) -> OModuleObject:
    """p(obj) = im f_hat as a G-comodule with its O(A)-action; X (x) O(A) for q'(X)."""
    return image_of(ctx, obj).module


def quotient_functor_q(ctx: QuotientContext, x: Comodule) -> QuotientObject:
    """q'(X) = (X, X, id (x) u)."""
    f = kron(Matrix.identity(x.dim, ctx.field), ctx.unit_oA)
    return QuotientObject(x, x, f, name=f"q'({x.name})")


def quotient_functor_map(
    ctx: QuotientContext,
    phi: ComoduleMap,
    source: QuotientObject | None = None,
    target: QuotientObject | None = None,
) -> QuotientMap:
    """q'(phi) = phi (x) id_O on X (x) O, whose echelon image basis is the standard one."""
    src = source or quotient_functor_q(ctx, phi.source)
    tgt = target or quotient_functor_q(ctx, phi.target)
    return QuotientMap(src, tgt, kron(phi.matrix, Matrix.identity(ctx.index, ctx.field)))


def hom_space_P(ctx: QuotientContext, a: QuotientObject, b: QuotientObject) -> list[QuotientMap]:
    if a.x.dim == 0 or b.x.dim == 0:
        return []
    ia, ib = image_of(ctx, a), image_of(ctx, b)
    basis = module_hom_space(ia.module, ib.module)
    maps = [QuotientMap(a, b, col.reshape(ib.dim, ia.dim)) for col in basis.columns()]
    logger.debug("hom_space_p_computed", source=a.name, target=b.name, dimension=len(maps))
    return maps


def identity_P(ctx: QuotientContext, a: QuotientObject) -> QuotientMap:
    return QuotientMap(a, a, Matrix.identity(image_of(ctx, a).dim, ctx.field))


def compose_P(ctx: QuotientContext, g: QuotientMap, f: QuotientMap) -> QuotientMap:
    if f.target is not g.source:
        raise ObjectMismatchError(f"cannot compose: {f.target!r} is not {g.source!r}")
    return QuotientMap(f.source, g.target, g.matrix @ f.matrix)


def bar(ctx: QuotientContext, phi: QuotientMap) -> Matrix:
    """phi restricted along f_source: X -> Y_target (x) O."""
    ia, ib = image_of(ctx, phi.source), image_of(ctx, phi.target)
    coords = solve(ia.basis, phi.source.f)
    if coords is None:
        raise TannakitError("f does not land in im f_hat")
    return ib.basis @ phi.matrix @ coords


def from_bar(ctx: QuotientContext, a: QuotientObject, b: QuotientObject, f_bar: Matrix) -> QuotientMap:
    """The O-linear map im f_hat_a -> im f_hat_b whose restriction along f_a is ``f_bar``."""
    f = ctx.field
    n = ctx.index
    ia, ib = image_of(ctx, a), image_of(ctx, b)
    extended = kron(Matrix.identity(b.y.dim, f), ctx.mult_oA) @ kron(f_bar, Matrix.identity(n, f))
    values = solve(ib.basis, extended)
    if values is None:
        raise ObjectMismatchError("f_bar leaves im f_hat of the target")
    spanning = solve(ia.basis, f_hat(ctx, a))
    if spanning is None:
        raise TannakitError("f_hat does not land in its own image")
    transposed = solve(spanning.T, values.T)
    if transposed is None:
        raise ObjectMismatchError("f_bar does not factor through im f_hat of the source")
    return QuotientMap(a, b, transposed.T)


def compose_bar(ctx: QuotientContext, g_bar: Matrix, f_bar: Matrix) -> Matrix:
    """(id (x) m)(g_bar (x) id) f_bar."""
    return compose_bar_formula(g_bar, f_bar, ctx.algebra_object)


def _pair_product(ctx: QuotientContext, d0: int, d1: int) -> Matrix:
    return pair_product(ctx.algebra_object, d0, d1)


def tensor_P(ctx: QuotientContext, a: QuotientObject, b: QuotientObject) -> QuotientObject:
    x = tensor_comodule(a.x, b.x)
    y = tensor_comodule(a.y, b.y)
    f = _pair_product(ctx, a.y.dim, b.y.dim) @ kron(a.f, b.f)
    return QuotientObject(x, y, f, name=f"({a.name}(x){b.name})")


def tensor_P_map(
    ctx: QuotientContext,
    phi: QuotientMap,
    psi: QuotientMap,
    source: QuotientObject | None = None,
    target: QuotientObject | None = None,
) -> QuotientMap:
    """phi (x) psi: mu(u (x) v) -> mu(phi u (x) psi v) on the images of the tensor objects."""
    src = source or tensor_P(ctx, phi.source, psi.source)
    tgt = target or tensor_P(ctx, phi.target, psi.target)
    ia, ib = image_of(ctx, phi.source), image_of(ctx, phi.target)
    ic, id_ = image_of(ctx, psi.source), image_of(ctx, psi.target)
    i_src, i_tgt = image_of(ctx, src), image_of(ctx, tgt)
    mu_src = _pair_product(ctx, phi.source.y.dim, psi.source.y.dim)
    mu_tgt = _pair_product(ctx, phi.target.y.dim, psi.target.y.dim)
    spanning = solve(i_src.basis, mu_src @ kron(ia.basis, ic.basis))
    values = solve(i_tgt.basis, mu_tgt @ kron(ib.basis @ phi.matrix, id_.basis @ psi.matrix))
    if spanning is None or values is None:
        raise TannakitError("pair product leaves the tensor image")
    transposed = solve(spanning.T, values.T)
    if transposed is None:
        raise TannakitError("tensor of maps is not balanced")
    return QuotientMap(src, tgt, transposed.T)


def direct_sum_P(ctx: QuotientContext, a: QuotientObject, b: QuotientObject) -> QuotientObject:
    x = direct_sum_comodule(a.x, b.x)
    y = direct_sum_comodule(a.y, b.y)
    return QuotientObject(x, y, block_diag([a.f, b.f], ctx.field), name=f"({a.name}+{b.name})")


def _f_zero(ctx: QuotientContext, obj: QuotientObject) -> Matrix:
    return kron(Matrix.identity(obj.y.dim, ctx.field), ctx.counit_oA) @ obj.f


def functor_image(ctx: QuotientContext, obj: QuotientObject) -> tuple[Matrix, Comodule]:
    """Echelon basis of im f_0 inside res Y, with its O(L)-coaction."""
    basis = image_basis(_f_zero(ctx, obj))
    sub, _ = subcomodule(restrict(ctx.datum, obj.y), basis, name=f"F({obj.name})")
    return basis, sub


def equivalence_to_repL(ctx: QuotientContext, obj: QuotientObject) -> Comodule:
    return functor_image(ctx, obj)[1]


def functor_on_map(ctx: QuotientContext, phi: QuotientMap) -> ComoduleMap:
    """F(phi) with F(phi) pi_a = pi_b phi, pi = (id (x) eps) restricted to im f_hat."""
    f = ctx.field
    e_a, fa = functor_image(ctx, phi.source)
    e_b, fb = functor_image(ctx, phi.target)
    ia, ib = image_of(ctx, phi.source), image_of(ctx, phi.target)
    pi_a = solve(e_a, kron(Matrix.identity(phi.source.y.dim, f), ctx.counit_oA) @ ia.basis)
    pi_b = solve(e_b, kron(Matrix.identity(phi.target.y.dim, f), ctx.counit_oA) @ ib.basis)
    if pi_a is None or pi_b is None:
        raise TannakitError("counit does not map im f_hat onto im f_0")
    transposed = solve(pi_a.T, (pi_b @ phi.matrix).T)
    if transposed is None:
        raise TannakitError("map does not descend to the images of f_0")
    return ComoduleMap(fa, fb, transposed.T)


def counit_triangle_check(ctx: QuotientContext, phi: QuotientMap) -> AxiomCheck:
    """(id (x) eps) bar(phi) = F(phi) f_0 as maps X -> res Y_target."""
    f = ctx.field
    e_a, _ = functor_image(ctx, phi.source)
    e_b, _ = functor_image(ctx, phi.target)
    lhs = kron(Matrix.identity(phi.target.y.dim, f), ctx.counit_oA) @ bar(ctx, phi)
    coords = solve(e_a, _f_zero(ctx, phi.source))
    if coords is None:
        return AxiomCheck("counit_triangle", False)
    rhs = e_b @ functor_on_map(ctx, phi).matrix @ coords
    diff = lhs - rhs
    return AxiomCheck("counit_triangle", diff.is_zero(), diff.first_nonzero())


def full_faithfulness_check(ctx: QuotientContext, a: QuotientObject, b: QuotientObject) -> AxiomCheck:
    """dim Hom_P(a, b) = dim Hom_L(F a, F b)."""
    lhs = len(hom_space_P(ctx, a, b))
    rhs = hom_space(equivalence_to_repL(ctx, a), equivalence_to_repL(ctx, b)).cols
    return AxiomCheck("hom_dimension", lhs == rhs, (lhs, rhs))


def monoidal_comparison(
    ctx: QuotientContext, a: QuotientObject, b: QuotientObject, product: QuotientObject | None = None
) -> ComoduleMap:
    """F(a (x) b) -> F(a) (x) F(b).

    Inside res Y_a (x) res Y_b the image of f_0 for the product is the tensor of the two
    images, since eps is multiplicative; the comparison rewrites one echelon basis in the other.
    """
    product = product or tensor_P(ctx, a, b)
    e_ab, f_ab = functor_image(ctx, product)
    e_a, f_a = functor_image(ctx, a)
    e_b, f_b = functor_image(ctx, b)
    coords = solve(kron(e_a, e_b), e_ab)
    if coords is None:
        raise TannakitError(f"F({product.name}) is not inside F({a.name}) (x) F({b.name})")
    return ComoduleMap(f_ab, tensor_comodule(f_a, f_b), coords)


def monoidal_naturality_check(
    ctx: QuotientContext,
    phi: QuotientMap,
    psi: QuotientMap,
    comparisons: tuple[Matrix, Matrix] | None = None,
) -> AxiomCheck:
    """c' F(phi (x) psi) = (F(phi) (x) F(psi)) c for the comparisons c at the sources and c' at the targets."""
    src = tensor_P(ctx, phi.source, psi.source)
    tgt = tensor_P(ctx, phi.target, psi.target)
    if comparisons is None:
        comparisons = (
            monoidal_comparison(ctx, phi.source, psi.source, src).matrix,
            monoidal_comparison(ctx, phi.target, psi.target, tgt).matrix,
        )
    c_src, c_tgt = comparisons
    product_map = functor_on_map(ctx, tensor_P_map(ctx, phi, psi, src, tgt)).matrix
    lhs = c_tgt @ product_map
    rhs = kron(functor_on_map(ctx, phi).matrix, functor_on_map(ctx, psi).matrix) @ c_src
    diff = lhs - rhs
    return AxiomCheck("monoidal_naturality", diff.is_zero(), diff.first_nonzero())


def monoidal_check(ctx: QuotientContext, a: QuotientObject, b: QuotientObject) -> list[AxiomCheck]:
    """The comparison F(a (x) b) -> F(a) (x) F(b) is an isomorphism of O(L)-comodules."""
    c = monoidal_comparison(ctx, a, b)
    return [
        AxiomCheck("comparison_colinear", is_colinear(c.matrix, c.source, c.target)),
        AxiomCheck("comparison_invertible", is_invertible(c.matrix), (c.source.dim, c.target.dim)),
    ]


def object_realizing(ctx: QuotientContext, u: Comodule) -> QuotientObject:
    """A triple with F(obj) = U: f lifts f_0 = emb o eps_U through Hom_G(ind U, Y (x) O).

    Here Y = ind(U*)* and emb: U -> res Y is the transpose of eps_{U*}.
    """
    d = ctx.datum
    f = ctx.field
    x = cotensor(d, u).comodule
    y = dual_comodule(cotensor(d, dual_comodule(u)).comodule, name=f"ind({u.name}*)*")
    f0 = embedding_into_restriction(d, u).matrix @ counit_eps(d, u).matrix
    target = _target(ctx, y)
    homs = hom_space(x, target)
    if homs.cols == 0:
        return QuotientObject(x, y, Matrix.zeros(target.dim, x.dim, f), name=f"real({u.name})")
    counit = kron(Matrix.identity(y.dim, f), ctx.counit_oA)
    reduced = hstack([(counit @ col.reshape(target.dim, x.dim)).flatten() for col in homs.columns()])
    coeffs = solve(reduced, f0.flatten())
    if coeffs is None:
        raise TannakitError(f"no G-colinear lift of f_0 for {u!r}")
    lifted = (homs @ coeffs).reshape(target.dim, x.dim)
    return QuotientObject(x, y, lifted, name=f"real({u.name})")


def verify_quotient_axioms(
    ctx: QuotientContext, g_battery: Sequence[Comodule], l_battery: Sequence[Comodule]
) -> list[AxiomCheck]:
    """Largest trivial subobjects come from X_S; every U sits between restrictions."""
    d = ctx.datum
    checks: list[AxiomCheck] = []
    for x in g_battery:
        basis, image = functor_image(ctx, quotient_functor_q(ctx, x))
        fixed, _ = invariants(image)
        inclusion, _ = largest_s_subobject(x, d.l)
        ok = same_column_space(basis @ fixed, inclusion.matrix)
        checks.append(AxiomCheck(f"largest_trivial_subobject[{x.name}]", ok, (fixed.cols, inclusion.matrix.cols)))
    for u in l_battery:
        emb = embedding_into_restriction(d, u)
        surj = surjection_from_restriction(d, u)
        emb_ok = emb.matrix.rank() == u.dim and is_colinear(emb.matrix, emb.source, emb.target)
        surj_ok = surj.matrix.rank() == u.dim and is_colinear(surj.matrix, surj.source, surj.target)
        checks.append(AxiomCheck(f"subobject_of_restriction[{u.name}]", emb_ok, (emb.matrix.rank(), u.dim)))
        checks.append(AxiomCheck(f"quotient_of_restriction[{u.name}]", surj_ok, (surj.matrix.rank(), u.dim)))
    return checks


def _sharp(ctx: QuotientContext, obj: QuotientObject) -> Matrix:
    """f -> f#: entry (i, j, b) of X* (x) Y (x) O is f[(j, b), i]."""
    dx, dy, n = obj.x.dim, obj.y.dim, ctx.index
    return obj.f.regrouped((dy, n, dx), (2, 0, 1), dx * dy * n, 1)


def deligne_triple(ctx: QuotientContext, obj: QuotientObject) -> Matrix:
    """(id (x) eps) f#, an L-invariant vector of X* (x) Y."""
    dz = obj.x.dim * obj.y.dim
    return kron(Matrix.identity(dz, ctx.field), ctx.counit_oA) @ _sharp(ctx, obj)


def triple_from_deligne(ctx: QuotientContext, x: Comodule, y: Comodule, vector: Matrix) -> QuotientObject:
    """Inverse of ``deligne_triple``: lift the vector to a G-invariant of X* (x) Y (x) O."""
    f = ctx.field
    dx, dy, n = x.dim, y.dim, ctx.index
    z = tensor_comodule(dual_comodule(x), y)
    fixed, _ = invariants(_target(ctx, z))
    reduced = kron(Matrix.identity(z.dim, f), ctx.counit_oA) @ fixed
    coeffs = solve(reduced, vector)
    if coeffs is None:
        raise ObjectMismatchError("vector is not invariant under L")
    sharp = fixed @ coeffs
    return QuotientObject(x, y, sharp.regrouped((dx, dy, n), (1, 2, 0), dy * n, dx), name="deligne")


def p_on_map(ctx: QuotientContext, phi: QuotientMap) -> Matrix:
    """p(phi) = (id (x) m)(bar(phi) (x) id): X_source (x) O -> Y_target (x) O.

    For q'-objects this is the map p(q'X) = X (x) O -> Y (x) O itself; in general it is
    p(phi) composed with f_hat of the source.
    """
    f = ctx.field
    n = ctx.index
    return kron(Matrix.identity(phi.target.y.dim, f), ctx.mult_oA) @ kron(bar(ctx, phi), Matrix.identity(n, f))


def p_map_check(ctx: QuotientContext, phi: QuotientMap) -> AxiomCheck:
    """p_on_map agrees with phi on the image bases, composed with f_hat of the source."""
    ia, ib = image_of(ctx, phi.source), image_of(ctx, phi.target)
    coords = solve(ia.basis, f_hat(ctx, phi.source))
    if coords is None:
        return AxiomCheck("p_on_map", False)
    diff = p_on_map(ctx, phi) - ib.basis @ phi.matrix @ coords
    return AxiomCheck("p_on_map", diff.is_zero(), diff.first_nonzero())


def p_exactness_check(ctx: QuotientContext, inclusion: ComoduleMap, projection: ComoduleMap) -> list[AxiomCheck]:
    """p o q' on 0 -> X' -> X -> X'' -> 0, with both maps computed as p_on_map."""
    i_q = quotient_functor_map(ctx, inclusion)
    p_q = quotient_functor_map(ctx, projection, source=i_q.target)
    checks = short_exact_checks(p_on_map(ctx, i_q), p_on_map(ctx, p_q))
    return checks + [p_map_check(ctx, i_q), p_map_check(ctx, p_q)]

"""Restriction and induction along L -> G for a normal subgroup L with quotient A = G/L.

Induction is the cotensor product U []_{O(L)} O(G), computed as an equalizer inside
U (x) O(G). Relative tensor products over O(A) are presented as quotients of the plain tensor
product by the balancing relations (a.g) (x) h - g (x) (a.h), with echelon bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import structlog

from tannakit.comod import (
    Comodule,
    ComoduleMap,
    dual_comodule,
    hom_maps,
    is_colinear,
    pushforward,
    regular_comodule,
    same_algebra,
    subcomodule,
    tensor_comodule,
)
from tannakit.exactlin import (
    FieldSpec,
    Matrix,
    hstack,
    image_basis,
    is_invertible,
    kernel_basis,
    kron,
    solve,
)
from tannakit.exceptions import AlgebraMismatchError, TannakitError
from tannakit.groups import FiniteGroup, QuotientGroup, Subgroup, quotient_group
from tannakit.hopf import AxiomCheck, HopfAlgebra, function_algebra, hopf_surjection_from_quotient

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class QuotientDatum:
    g: FiniteGroup
    l: Subgroup
    oG: HopfAlgebra
    oL: HopfAlgebra
    oA: HopfAlgebra
    q_star: Matrix
    f_star: Matrix
    quotient: QuotientGroup

    @property
    def field(self) -> FieldSpec:
        return self.oG.field

    @property
    def index(self) -> int:
        return self.oA.dim


@dataclass(frozen=True, eq=False)
class Cotensor:
    """ind(U) as a comodule over O(G) together with its embedding into U (x) O(G)."""

    comodule: Comodule
    embedding: Matrix
    source: Comodule


@dataclass(frozen=True)
class RelativeTensor:
    """V (x)_{O(A)} W as a quotient of V (x) W: ``projection`` with ``section``."""

    projection: Matrix
    section: Matrix

    @property
    def dim(self) -> int:
        return self.projection.rows


def make_quotient_datum(g: FiniteGroup, l: Subgroup, field: FieldSpec) -> QuotientDatum:
    o_g, o_l, q_star, f_star = hopf_surjection_from_quotient(g, l, field)
    quotient = quotient_group(g, l)
    o_a = function_algebra(quotient.group, field)
    return QuotientDatum(g, l, o_g, o_l, o_a, q_star, f_star, quotient)


def _require_over(x: Comodule, o: HopfAlgebra, label: str) -> None:
    if not same_algebra(x.algebra, o):
        raise AlgebraMismatchError(f"{x!r} is not a comodule over {label}")


def restrict(d: QuotientDatum, v: Comodule) -> Comodule:
    """res: coaction (id (x) q*) rho_v over O(L)."""
    _require_over(v, d.oG, "O(G)")
    return pushforward(v, d.q_star, d.oL, name=f"res({v.name})")


def restrict_map(d: QuotientDatum, phi: ComoduleMap) -> ComoduleMap:
    return ComoduleMap(restrict(d, phi.source), restrict(d, phi.target), phi.matrix)


def cotensor(d: QuotientDatum, u: Comodule) -> Cotensor:
    """Equalizer of rho_u (x) id and (id (x) q* (x) id)(id (x) Delta) on U (x) O(G)."""
    _require_over(u, d.oL, "O(L)")
    f = d.field
    n = d.oG.dim
    i_u = Matrix.identity(u.dim, f)
    left = kron(u.coaction, d.oG.identity())
    right = kron(i_u, kron(d.q_star, d.oG.identity()) @ d.oG.comult)
    embedding = kernel_basis(left - right)
    ambient = Comodule(u.dim * n, d.oG, kron(i_u, d.oG.comult), name=f"{u.name}(x)O(G)")
    induced, _ = subcomodule(ambient, embedding, name=f"ind({u.name})")
    logger.debug("cotensor_computed", source=u.name, dimension=induced.dim)
    return Cotensor(induced, embedding, u)


def cotensor_map(
    d: QuotientDatum,
    phi: ComoduleMap,
    source: Cotensor | None = None,
    target: Cotensor | None = None,
) -> ComoduleMap:
    """ind(phi): the restriction of phi (x) id to the equalizers."""
    src = source or cotensor(d, phi.source)
    tgt = target or cotensor(d, phi.target)
    pushed = kron(phi.matrix, d.oG.identity()) @ src.embedding
    coords = solve(tgt.embedding, pushed) if tgt.embedding.cols else Matrix.zeros(0, src.comodule.dim, d.field)
    if coords is None:
        raise TannakitError("induced map leaves the target equalizer")
    return ComoduleMap(src.comodule, tgt.comodule, coords)


def counit_eps(d: QuotientDatum, u: Comodule, ind: Cotensor | None = None) -> ComoduleMap:
    """eps_U: res(ind U) -> U, sum u_i (x) g_i -> sum u_i eps(g_i)."""
    ind = ind or cotensor(d, u)
    m = kron(Matrix.identity(u.dim, d.field), d.oG.counit) @ ind.embedding
    return ComoduleMap(restrict(d, ind.comodule), u, m)


def adjunction_check(d: QuotientDatum, v: Comodule, u: Comodule) -> list[AxiomCheck]:
    """Hom_L(res V, U) = Hom_G(V, ind U) through f -> eps_U o res(f).

    Returns findings ``image_colinear``, ``dimensions_agree`` and ``bijective``.
    """
    ind = cotensor(d, u)
    eps = counit_eps(d, u, ind)
    res_v = restrict(d, v)
    right = hom_maps(v, ind.comodule)
    left = hom_maps(res_v, u)
    images = [eps.matrix @ f.matrix for f in right]

    bad = next((k for k, m in enumerate(images) if not is_colinear(m, res_v, u)), None)
    checks = [AxiomCheck("image_colinear", bad is None, None if bad is None else (bad,))]
    checks.append(AxiomCheck("dimensions_agree", len(left) == len(right), (len(left), len(right))))
    if len(left) != len(right):
        checks.append(AxiomCheck("bijective", False, (len(left), len(right))))
        return checks
    if not images:
        checks.append(AxiomCheck("bijective", True))
        return checks
    basis = hstack([m.matrix.flatten() for m in left])
    coords = solve(basis, hstack([m.flatten() for m in images]))
    ok = coords is not None and is_invertible(coords)
    checks.append(AxiomCheck("bijective", ok, None if ok else (len(images),)))
    return checks


def relative_tensor(
    left_action: Sequence[Matrix], right_action: Sequence[Matrix], dim_left: int, dim_right: int
) -> RelativeTensor:
    """Quotient of V (x) W by v.a (x) w - v (x) a.w over a basis a of O(A).

    ``left_action[a]`` is the matrix of v -> v.a on V, ``right_action[a]`` that of w -> a.w on W.
    """
    f = left_action[0].field if left_action else right_action[0].field
    i_v = Matrix.identity(dim_left, f)
    i_w = Matrix.identity(dim_right, f)
    relations = hstack([kron(la, i_w) - kron(i_v, ra) for la, ra in zip(left_action, right_action)])
    span = image_basis(relations)
    projection = kernel_basis(span.T).T
    section = solve(projection, Matrix.identity(projection.rows, f))
    if section is None:
        raise TannakitError("relative tensor projection without a section")
    return RelativeTensor(projection, section)


def _oa_multipliers(d: QuotientDatum) -> list[Matrix]:
    """Multiplication by f*(a) on O(G) for each basis element a of O(A)."""
    return [d.oG.left_multiplication(d.f_star.column(a)) for a in range(d.oA.dim)]


def takeuchi_phi(d: QuotientDatum) -> tuple[Matrix, Matrix, RelativeTensor]:
    """phi: O(G) (x)_{O(A)} O(G) -> O(L) (x) O(G), g (x) h -> sum q*(g_1) (x) g_2 h, and its inverse.

    psi(g (x) h) = sum g_1 (x) S(g_2) h, with O(L) lifted into O(G) along the transpose of q*.
    Both are returned on the echelon basis of the relative tensor product.
    """
    o = d.oG
    n = o.dim
    mult = _oa_multipliers(d)
    rel = relative_tensor(mult, mult, n, n)
    i_n = o.identity()
    phi_lift = kron(d.q_star, o.mult) @ kron(o.comult, i_n)
    psi_lift = kron(i_n, o.mult) @ kron(i_n, kron(o.antipode, i_n)) @ kron(o.comult, i_n)
    phi = phi_lift @ rel.section
    psi = rel.projection @ psi_lift @ kron(d.q_star.T, i_n)
    balanced = (phi_lift @ kernel_basis(rel.projection)).is_zero()
    if not balanced:
        logger.warning("takeuchi_phi_not_balanced", group=str(d.g))
    return phi, psi, rel


def takeuchi_checks(d: QuotientDatum) -> list[AxiomCheck]:
    phi, psi, rel = takeuchi_phi(d)
    o = d.oG
    lift = kron(d.q_star, o.mult) @ kron(o.comult, o.identity())
    checks = [
        AxiomCheck("balanced", (lift @ kernel_basis(rel.projection)).is_zero()),
        AxiomCheck("dimensions", phi.rows == phi.cols, (phi.rows, phi.cols)),
    ]
    if phi.rows == phi.cols:
        left = phi @ psi - Matrix.identity(phi.rows, d.field)
        right = psi @ phi - Matrix.identity(psi.rows, d.field)
        checks.append(AxiomCheck("phi_psi_identity", left.is_zero(), left.first_nonzero()))
        checks.append(AxiomCheck("psi_phi_identity", right.is_zero(), right.first_nonzero()))
    return checks


def takeuchi_general(d: QuotientDatum, u: Comodule) -> list[AxiomCheck]:
    """(U [] O(G)) (x)_{O(A)} O(G) -> U (x) O(G), (sum u_i (x) g_i) (x) h -> sum u_i (x) g_i h is bijective."""
    ind = cotensor(d, u)
    o = d.oG
    n = o.dim
    f = d.field
    i_u = Matrix.identity(u.dim, f)
    mult = _oa_multipliers(d)
    if ind.comodule.dim == 0:
        return [AxiomCheck("bijective", u.dim == 0, (0, u.dim * n))]
    # right O(A)-action on the equalizer, in equalizer coordinates
    actions = []
    for m in mult:
        coords = solve(ind.embedding, kron(i_u, m) @ ind.embedding)
        if coords is None:
            return [AxiomCheck("equalizer_is_oa_module", False)]
        actions.append(coords)
    rel = relative_tensor(actions, mult, ind.comodule.dim, n)
    lift = kron(i_u, o.mult) @ kron(ind.embedding, o.identity())
    balanced = (lift @ kernel_basis(rel.projection)).is_zero()
    induced = lift @ rel.section
    ok = induced.rows == induced.cols and is_invertible(induced)
    return [
        AxiomCheck("balanced", balanced),
        AxiomCheck("bijective", ok, (induced.rows, induced.cols)),
    ]


def oa_comodule(d: QuotientDatum) -> Comodule:
    """O(A) embedded in O(G) by f*, with the right regular G-coaction."""
    sub, _ = subcomodule(regular_comodule(d.oG), d.f_star, name="O(A)")
    return sub


def ind_res_iso(d: QuotientDatum, v: Comodule, target: Comodule | None = None) -> ComoduleMap:
    """ind(res V) -> V (x) O(A), v (x) h -> sum v_0 (x) S(v_1) h, restricted to the equalizer."""
    res_v = restrict(d, v)
    ind = cotensor(d, res_v)
    f = d.field
    o = d.oG
    i_v = Matrix.identity(v.dim, f)
    twist = kron(i_v, o.mult @ kron(o.antipode, o.identity())) @ kron(v.coaction, o.identity())
    image = twist @ ind.embedding
    coords = solve(kron(i_v, d.f_star), image)
    if coords is None:
        raise TannakitError("untwisted equalizer does not land in V (x) O(A)")
    target = target or tensor_comodule(v, oa_comodule(d), name=f"{v.name}(x)O(A)")
    return ComoduleMap(ind.comodule, target, coords)


def embedding_into_restriction(d: QuotientDatum, u: Comodule) -> ComoduleMap:
    """U -> res(ind(U*)*), the transpose of eps_{U*}; injective."""
    u_dual = dual_comodule(u)
    ind = cotensor(d, u_dual)
    eps = counit_eps(d, u_dual, ind)
    w = dual_comodule(ind.comodule, name=f"ind({u.name}*)*")
    return ComoduleMap(u, restrict(d, w), eps.matrix.T)


def surjection_from_restriction(d: QuotientDatum, u: Comodule) -> ComoduleMap:
    """eps_U: res(ind U) -> U; surjective."""
    return counit_eps(d, u)


def exact_sequence_check(d: QuotientDatum, inc: ComoduleMap, proj: ComoduleMap) -> list[AxiomCheck]:
    """ind applied to 0 -> U' -> U -> U'' -> 0 stays exact."""
    c_sub = cotensor(d, inc.source)
    c_mid = cotensor(d, inc.target)
    c_quo = cotensor(d, proj.target)
    i_map = cotensor_map(d, inc, c_sub, c_mid).matrix
    p_map = cotensor_map(d, proj, c_mid, c_quo).matrix
    dims = (c_sub.comodule.dim, c_mid.comodule.dim, c_quo.comodule.dim)
    composite = p_map @ i_map
    return [
        AxiomCheck("dimensions_additive", dims[0] + dims[2] == dims[1], dims),
        AxiomCheck("composite_zero", composite.is_zero(), composite.first_nonzero()),
        AxiomCheck("injective", i_map.rank() == dims[0], (i_map.rank(), dims[0])),
        AxiomCheck("surjective", p_map.rank() == dims[2], (p_map.rank(), dims[2])),
    ]

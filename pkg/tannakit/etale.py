"""Commutative algebra objects in Rep(G), their module categories, and base change.

The same module machinery serves two algebras: O(A) with the G-coaction inherited from
O(G) (quotient by a normal subgroup), and a finite separable field extension K with the
trivial coaction (base change). Module actions are right actions M (x) O -> M; both
algebras are commutative so left and right agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Sequence

import structlog

from tannakit.comod import (
    Comodule,
    ComoduleMap,
    colinearity_operator,
    dual_comodule,
    hom_space,
    is_colinear,
    quotient_comodule,
    regular_comodule,
    subcomodule,
    tensor_comodule,
    trivial_comodule,
)
from tannakit.exactlin import (
    FieldSpec,
    Matrix,
    Scalar,
    determinant,
    hstack,
    image_basis,
    invertible_in_span,
    joint_kernel,
    kron,
    solve,
    tensor_permutation,
    vstack,
)
from tannakit.exceptions import (
    AlgebraMismatchError,
    DimensionMismatchError,
    EtaleHypothesisError,
    NotColinearError,
    NotCommutativeError,
    NotSeparableError,
    TannakitError,
)
from tannakit.groups import FiniteGroup
from tannakit.hopf import AxiomCheck, HopfAlgebra, HopfKind, find_integral, function_algebra
from tannakit.utils.numbers import least_nonresidue

if TYPE_CHECKING:
    from tannakit.quotient import QuotientContext

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class AlgebraObject:
    """A commutative algebra (carrier, mult, unit) whose structure maps are colinear."""

    carrier: Comodule
    mult: Matrix
    unit: Matrix
    name: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> FieldSpec:
        return self.carrier.field

    def basis_vector(self, k: int) -> Matrix:
        return Matrix.unit_vector(self.dim, k, self.field)


@dataclass(frozen=True, eq=False)
class OModuleObject:
    carrier: Comodule
    action: Matrix
    algebra: AlgebraObject

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def acting(self, k: int) -> Matrix:
        """Matrix of m -> m . e_k."""
        return self.action @ kron(Matrix.identity(self.dim, self.carrier.field), self.algebra.basis_vector(k))

    def actions(self) -> list[Matrix]:
        return [self.acting(k) for k in range(self.algebra.dim)]


@dataclass(frozen=True, eq=False)
class SplittingSection:
    algebra: HopfAlgebra
    s: Matrix

    @property
    def s_of_one(self) -> Matrix:
        return self.s @ self.algebra.unit


def algebra_object_checks(alg: AlgebraObject) -> list[AxiomCheck]:
    f = alg.field
    n = alg.dim
    one = Matrix.identity(n, f)
    m, u = alg.mult, alg.unit
    assoc = m @ kron(m, one) - m @ kron(one, m)
    unit = m @ kron(one, u) - one
    comm = m @ tensor_permutation((n, n), (1, 0), f) - m
    square = tensor_comodule(alg.carrier, alg.carrier)
    return [
        AxiomCheck("associativity", assoc.is_zero(), assoc.first_nonzero()),
        AxiomCheck("unit", unit.is_zero(), unit.first_nonzero()),
        AxiomCheck("commutativity", comm.is_zero(), comm.first_nonzero()),
        AxiomCheck("mult_colinear", is_colinear(m, square, alg.carrier)),
        AxiomCheck("unit_colinear", is_colinear(u, trivial_comodule(alg.carrier.algebra, 1), alg.carrier)),
    ]


def omodule_checks(mod: OModuleObject) -> list[AxiomCheck]:
    """Associativity, unit law and colinearity of the action."""
    alg = mod.algebra
    f = alg.field
    i_m = Matrix.identity(mod.dim, f)
    mu = mod.action
    assoc = mu @ kron(mu, Matrix.identity(alg.dim, f)) - mu @ kron(i_m, alg.mult)
    unit = mu @ kron(i_m, alg.unit) - i_m
    source = tensor_comodule(mod.carrier, alg.carrier)
    return [
        AxiomCheck("action_associative", assoc.is_zero(), assoc.first_nonzero()),
        AxiomCheck("action_unital", unit.is_zero(), unit.first_nonzero()),
        AxiomCheck("action_colinear", is_colinear(mu, source, mod.carrier)),
    ]


def _algebra_of(ctx: QuotientContext | AlgebraObject | BaseChangeContext) -> AlgebraObject:
    if isinstance(ctx, AlgebraObject):
        return ctx
    return ctx.algebra_object


def splitting_section(o: HopfAlgebra) -> SplittingSection:
    """s(a) = (a (x) 1) s(1) with s(1) = (S (x) id) Delta(t) / eps(t) for the integral t.

    For a function algebra t = x^e and s(1) = sum_g x^g (x) x^g.
    """
    if o.kind is not HopfKind.FUNCTION_ALGEBRA:
        raise AlgebraMismatchError(f"splitting section needs a function algebra, got {o!r}")
    if o.field.divides(o.dim):
        raise EtaleHypothesisError(f"characteristic {o.field.characteristic} divides dim {o.dim}")
    t = find_integral(o).vector
    eps_t = (o.counit @ t)[0, 0]
    if eps_t == 0:
        raise EtaleHypothesisError("integral is killed by the counit")
    s_one = (kron(o.antipode, o.identity()) @ o.comult @ t).scale(o.field.inverse(eps_t))
    columns = [kron(o.left_multiplication(o.basis_vector(a)), o.identity()) @ s_one for a in range(o.dim)]
    s = hstack(columns)
    logger.debug("splitting_section_built", algebra=repr(o))
    return SplittingSection(o, s)


def check_splitting(sec: SplittingSection, carrier: Comodule | None = None) -> list[AxiomCheck]:
    """m s = id, both bimodule identities, and colinearity for ``carrier`` (regular by default)."""
    o = sec.algebra
    one = o.identity()
    s, m = sec.s, o.mult
    carrier = carrier or regular_comodule(o)
    splits = m @ s - one
    left = s @ m - kron(m, one) @ kron(one, s)
    right = s @ m - kron(one, m) @ kron(s, one)
    return [
        AxiomCheck("splits_multiplication", splits.is_zero(), splits.first_nonzero()),
        AxiomCheck("left_module_map", left.is_zero(), left.first_nonzero()),
        AxiomCheck("right_module_map", right.is_zero(), right.first_nonzero()),
        AxiomCheck("colinear", is_colinear(s, carrier, tensor_comodule(carrier, carrier))),
    ]


def free_omodule(ctx: QuotientContext | AlgebraObject | BaseChangeContext, x: Comodule) -> OModuleObject:
    """X (x) O with O acting on the right factor."""
    alg = _algebra_of(ctx)
    carrier = tensor_comodule(x, alg.carrier, name=f"{x.name}(x){alg.name}")
    action = kron(Matrix.identity(x.dim, x.field), alg.mult)
    return OModuleObject(carrier, action, alg)


def triple_image(alg: AlgebraObject, y: Comodule, f: Matrix, name: str = "") -> tuple[Matrix, OModuleObject]:
    """im f_hat for f: X -> Y (x) B, f_hat = (id (x) m)(f (x) id), with the B-action it inherits.

    Returns the reduced column echelon basis inside Y (x) B and the module.
    """
    fld = alg.field
    n = alg.dim
    multiply = kron(Matrix.identity(y.dim, fld), alg.mult)
    basis = image_basis(multiply @ kron(f, Matrix.identity(n, fld)))
    target = tensor_comodule(y, alg.carrier, name=f"{y.name}(x){alg.name}")
    carrier, _ = subcomodule(target, basis, name=name)
    action = solve(basis, multiply @ kron(basis, Matrix.identity(n, fld)))
    if action is None:
        raise TannakitError(f"image inside {target.name} is not a submodule")
    return basis, OModuleObject(carrier, action, alg)


def pair_product(alg: AlgebraObject, d0: int, d1: int) -> Matrix:
    """(Y0 (x) B) (x) (Y1 (x) B) -> Y0 (x) Y1 (x) B: swap the middle factors, then multiply."""
    f = alg.field
    n = alg.dim
    swap = tensor_permutation((d0, n, d1, n), (0, 2, 1, 3), f)
    return kron(Matrix.identity(d0 * d1, f), alg.mult) @ swap


def short_exact_checks(inclusion: Matrix, projection: Matrix) -> list[AxiomCheck]:
    """Exactness of 0 -> A -> B -> C -> 0 for the given matrices.

    Exact in the middle means the composite vanishes and the ranks add up to dim B.
    """
    sub, mid, quo = inclusion.cols, inclusion.rows, projection.rows
    composite = projection @ inclusion
    ri, rp = inclusion.rank(), projection.rank()
    return [
        AxiomCheck("composite_zero", composite.is_zero(), composite.first_nonzero()),
        AxiomCheck("injective", ri == sub, (ri, sub)),
        AxiomCheck("surjective", rp == quo, (rp, quo)),
        AxiomCheck("exact_middle", ri + rp == mid, (ri, rp, mid)),
    ]


def split_module(mod: OModuleObject, sec: SplittingSection) -> Matrix:
    """sigma = (mu (x) id)(id (x) s(1)): M -> M (x) O, an O-linear colinear section of mu."""
    alg = mod.algebra
    if sec.algebra.dim != alg.dim or not (sec.algebra.mult == alg.mult):
        raise AlgebraMismatchError("splitting section belongs to another algebra")
    i_m = Matrix.identity(mod.dim, alg.field)
    return kron(mod.action, Matrix.identity(alg.dim, alg.field)) @ kron(i_m, sec.s_of_one)


def module_idempotent(mod: OModuleObject, sigma: Matrix) -> Matrix:
    """sigma mu on M (x) O; its image is a copy of M inside a free module."""
    return sigma @ mod.action


def split_module_checks(mod: OModuleObject, sec: SplittingSection) -> list[AxiomCheck]:
    sigma = split_module(mod, sec)
    alg = mod.algebra
    f = alg.field
    i_m = Matrix.identity(mod.dim, f)
    free = free_omodule(alg, mod.carrier)
    section = mod.action @ sigma - i_m
    e = module_idempotent(mod, sigma)
    idem = e @ e - e
    o_linear = all(sigma @ a == b @ sigma for a, b in zip(mod.actions(), free.actions()))
    return [
        AxiomCheck("section", section.is_zero(), section.first_nonzero()),
        AxiomCheck("injective", sigma.rank() == mod.dim, (sigma.rank(), mod.dim)),
        AxiomCheck("o_linear", o_linear),
        AxiomCheck("colinear", is_colinear(sigma, mod.carrier, free.carrier)),
        AxiomCheck("idempotent", idem.is_zero(), idem.first_nonzero()),
    ]


def _right_factor_action(mod: OModuleObject, other_dim: int) -> Matrix:
    """(M (x) N) (x) O -> M (x) N acting through the M factor."""
    f = mod.algebra.field
    reorder = tensor_permutation((mod.dim, other_dim, mod.algebra.dim), (0, 2, 1), f)
    return kron(mod.action, Matrix.identity(other_dim, f)) @ reorder


def balanced_tensor(a: OModuleObject, b: OModuleObject) -> tuple[OModuleObject, Matrix]:
    """a (x)_O b with its projection from a (x) b.

    The quotient is by (m . o) (x) n - m (x) (o . n).
    """
    if a.algebra is not b.algebra and not (a.algebra.mult == b.algebra.mult):
        raise AlgebraMismatchError("modules over different algebra objects")
    alg = a.algebra
    f = alg.field
    t = tensor_comodule(a.carrier, b.carrier, name=f"({a.carrier.name}(x)O{b.carrier.name})")
    if t.dim == 0:
        return OModuleObject(t, Matrix.zeros(0, 0, f), alg), Matrix.zeros(0, 0, f)
    i_a = Matrix.identity(a.dim, f)
    i_b = Matrix.identity(b.dim, f)
    relations = hstack([kron(ra, i_b) - kron(i_a, rb) for ra, rb in zip(a.actions(), b.actions())])
    quotient, projection = quotient_comodule(t, image_basis(relations), name=t.name)
    p = projection.matrix
    section = solve(p, Matrix.identity(p.rows, f))
    if section is None:
        raise TannakitError("balanced tensor projection without a section")
    action = p @ _right_factor_action(a, b.dim) @ kron(section, Matrix.identity(alg.dim, f))
    logger.debug("omodule_tensor_computed", dimension=quotient.dim)
    return OModuleObject(quotient, action, alg), p


def omodule_tensor(a: OModuleObject, b: OModuleObject) -> OModuleObject:
    return balanced_tensor(a, b)[0]


def module_hom_space(a: OModuleObject, b: OModuleObject) -> Matrix:
    """Basis of maps a -> b that are colinear and O-linear, flattened row-major."""
    f = a.algebra.field
    i_a = Matrix.identity(a.dim, f)
    i_b = Matrix.identity(b.dim, f)
    blocks = [colinearity_operator(a.carrier, b.carrier)]
    blocks += [kron(i_b, ra.T) - kron(rb, i_a) for ra, rb in zip(a.actions(), b.actions())]
    return joint_kernel(blocks, a.dim * b.dim, f)


def module_hom_maps(a: OModuleObject, b: OModuleObject) -> list[Matrix]:
    return [col.reshape(b.dim, a.dim) for col in module_hom_space(a, b).columns()]


def is_module_map(phi: Matrix, a: OModuleObject, b: OModuleObject) -> bool:
    if not is_colinear(phi, a.carrier, b.carrier):
        return False
    return all(phi @ ra == rb @ phi for ra, rb in zip(a.actions(), b.actions()))


def _multiplication_by(alg: AlgebraObject, k: int) -> Matrix:
    return alg.mult @ kron(Matrix.identity(alg.dim, alg.field), alg.basis_vector(k))


@dataclass(frozen=True, eq=False)
class ModuleDual:
    """D = Hom_O(M, O) inside M* (x) O with the evaluation D (x) M -> O.

    Entry (i, b) of a basis column is the coefficient of e_b in T(m_i).
    """

    module: OModuleObject
    basis: Matrix
    evaluation: Matrix


def module_dual(mod: OModuleObject) -> ModuleDual:
    alg = mod.algebra
    f = alg.field
    d, n = mod.dim, alg.dim
    mults = [_multiplication_by(alg, k) for k in range(n)]
    # T R_k = L_k T on T: M -> O, flattened row-major as an n x d matrix
    i_n, i_d = Matrix.identity(n, f), Matrix.identity(d, f)
    blocks = [kron(i_n, rk.T) - kron(lk, i_d) for rk, lk in zip(mod.actions(), mults)]
    basis = tensor_permutation((n, d), (1, 0), f) @ joint_kernel(blocks, n * d, f)
    ambient = tensor_comodule(dual_comodule(mod.carrier), alg.carrier)
    carrier, _ = subcomodule(ambient, basis, name=f"{mod.carrier.name}^v")
    e = basis.cols
    acted = [solve(basis, kron(Matrix.identity(d, f), lk) @ basis) for lk in mults]
    if any(a is None for a in acted):
        raise TannakitError("O-linear forms are not closed under the O-action")
    action = Matrix.from_entries(
        e,
        e * n,
        {(r, t * n + k): acted[k][r, t] for k in range(n) for r in range(e) for t in range(e) if acted[k][r, t] != 0},
        f,
    )
    evaluation = Matrix.from_entries(
        n,
        e * d,
        {
            (b, t * d + j): basis[j * n + b, t]
            for b in range(n)
            for t in range(e)
            for j in range(d)
            if basis[j * n + b, t] != 0
        },
        f,
    )
    return ModuleDual(OModuleObject(carrier, action, alg), basis, evaluation)


def _snake_terms(mod: OModuleObject, dual: ModuleDual) -> list[tuple[Matrix, Matrix]]:
    """Both snake composites for c = m_i (x) T_t, one pair per (i, t) in row-major order.

    The first is m -> m_i . T_t(m) on M, the second T -> T(m_i) . T_t on D.
    """
    alg = mod.algebra
    d, e, n = mod.dim, dual.module.dim, alg.dim
    r = mod.actions()
    a = dual.module.actions()
    forms = [dual.basis.column(t).reshape(d, n).T for t in range(e)]
    terms = []
    for i in range(d):
        q_i = hstack([r[b].column(i) for b in range(n)])
        w_i = dual.basis.select_rows([i * n + b for b in range(n)])
        for t in range(e):
            p_t = hstack([a[b].column(t) for b in range(n)])
            terms.append((q_i @ forms[t], p_t @ w_i))
    return terms


def snake_maps(mod: OModuleObject, dual: ModuleDual, c: Matrix) -> tuple[Matrix, Matrix]:
    f = mod.algebra.field
    left = Matrix.zeros(mod.dim, mod.dim, f)
    right = Matrix.zeros(dual.module.dim, dual.module.dim, f)
    for u, (on_m, on_d) in enumerate(_snake_terms(mod, dual)):
        if c[u, 0] != 0:
            left = left + on_m.scale(c[u, 0])
            right = right + on_d.scale(c[u, 0])
    return left, right


def solve_coevaluation(mod: OModuleObject, dual: ModuleDual) -> Matrix | None:
    """A representative c in M (x) D of coev(1), from the two snake identities; None if none exists."""
    f = mod.algebra.field
    d, e = mod.dim, dual.module.dim
    if d == 0 or e == 0:
        return None
    system = hstack([vstack([on_m.flatten(), on_d.flatten()]) for on_m, on_d in _snake_terms(mod, dual)])
    rhs = vstack([Matrix.identity(d, f).flatten(), Matrix.identity(e, f).flatten()])
    return solve(system, rhs)


def rigidity_check(mod: OModuleObject) -> list[AxiomCheck]:
    """Hom_O(M, O) is a dual of M in the module category.

    The evaluation must be O-linear in both slots and colinear; the coevaluation found by the
    solver must satisfy both snakes and give a G-invariant element of M (x)_O D.
    """
    if mod.dim == 0:
        return [AxiomCheck("coevaluation_found", True)]
    alg = mod.algebra
    f = alg.field
    dual = module_dual(mod)
    d, e = mod.dim, dual.module.dim
    ev = dual.evaluation
    mults = [_multiplication_by(alg, k) for k in range(alg.dim)]
    i_d, i_e = Matrix.identity(d, f), Matrix.identity(e, f)
    o_linear = all(
        ev @ kron(ad, i_d) == lk @ ev and ev @ kron(i_e, rm) == lk @ ev
        for ad, rm, lk in zip(dual.module.actions(), mod.actions(), mults)
    )
    pairing = tensor_comodule(dual.module.carrier, mod.carrier)
    checks = [
        AxiomCheck("dual_dimension", e == d, (e, d)),
        AxiomCheck("evaluation_o_linear", o_linear),
        AxiomCheck("evaluation_colinear", is_colinear(ev, pairing, alg.carrier)),
    ]
    c = solve_coevaluation(mod, dual)
    checks.append(AxiomCheck("coevaluation_found", c is not None, None if c is not None else (d, e)))
    if c is None:
        return checks
    left, right = snake_maps(mod, dual, c)
    left, right = left - i_d, right - i_e
    product, projection = balanced_tensor(mod, dual.module)
    image = projection @ c
    unit = trivial_comodule(mod.carrier.algebra, 1)
    checks += [
        AxiomCheck("snake_left", left.is_zero(), left.first_nonzero()),
        AxiomCheck("snake_right", right.is_zero(), right.first_nonzero()),
        AxiomCheck("coevaluation_invariant", is_colinear(image, unit, product.carrier)),
    ]
    return checks


def module_bar(phi: Matrix, alg: AlgebraObject, source_dim: int) -> Matrix:
    """phi restricted along id (x) u: X -> Y (x) O."""
    return phi @ kron(Matrix.identity(source_dim, alg.field), alg.unit)


def compose_bar_formula(g_bar: Matrix, f_bar: Matrix, alg: AlgebraObject) -> Matrix:
    """(id (x) m)(g_bar (x) id) f_bar."""
    f = alg.field
    target_dim = g_bar.rows // alg.dim
    return kron(Matrix.identity(target_dim, f), alg.mult) @ kron(g_bar, Matrix.identity(alg.dim, f)) @ f_bar


def _trace(m: Matrix) -> Any:
    total = m.field.zero
    for i in range(min(m.shape)):
        total = m.field.reduce(total + m[i, i])
    return total


@dataclass(frozen=True, eq=False)
class SeparableExtension:
    """K as a commutative algebra over the base field with basis e_0..e_{d-1}."""

    base: FieldSpec
    degree: int
    mult: Matrix
    unit: Matrix
    separability_witness: Scalar

    @classmethod
    def from_table(cls, table: Sequence[Sequence[Sequence[Any]]], base: FieldSpec) -> SeparableExtension:
        """``table[i][j][k]`` is the coefficient of e_k in e_i e_j."""
        d = len(table)
        if d == 0 or any(len(row) != d or any(len(c) != d for c in row) for row in table):
            raise DimensionMismatchError("mult_table must have shape degree x degree x degree")
        entries = {
            (k, i * d + j): table[i][j][k] for i in range(d) for j in range(d) for k in range(d)
        }
        mult = Matrix.from_entries(d, d * d, entries, base)
        one = Matrix.identity(d, base)
        if not (mult @ tensor_permutation((d, d), (1, 0), base) == mult):
            raise NotCommutativeError("extension multiplication is not commutative")
        if not (mult @ kron(mult, one) == mult @ kron(one, mult)):
            raise NotSeparableError("extension multiplication is not associative")
        lefts = [mult @ kron(Matrix.unit_vector(d, i, base), one) for i in range(d)]
        unit = solve(hstack([m.flatten() for m in lefts]), one.flatten())
        if unit is None:
            raise NotSeparableError("extension has no unit")
        gram = Matrix.from_entries(
            d,
            d,
            {
                (i, j): _trace(mult @ kron(mult @ kron(Matrix.unit_vector(d, i, base), Matrix.unit_vector(d, j, base)), one))
                for i in range(d)
                for j in range(d)
            },
            base,
        )
        disc = Scalar(determinant(gram), base)
        if disc.is_zero():
            raise NotSeparableError("trace form is degenerate")
        return cls(base, d, mult, unit, disc)

    @property
    def table(self) -> list[list[list[Any]]]:
        d = self.degree
        return [[[self.mult[k, i * d + j] for k in range(d)] for j in range(d)] for i in range(d)]


def default_extension(field: FieldSpec) -> SeparableExtension:
    """Q(sqrt 2) over Q, F_p[w]/(w^2 - n) for the least non-residue n, F_2[w]/(w^2 + w + 1)."""
    p = field.characteristic
    if p == 0:
        n = 2
    elif p == 2:
        return SeparableExtension.from_table([[[1, 0], [0, 1]], [[0, 1], [1, 1]]], field)
    else:
        n = least_nonresidue(p)
    return SeparableExtension.from_table([[[1, 0], [0, 1]], [[0, 1], [n, 0]]], field)


@dataclass(frozen=True, eq=False)
class BaseChangeContext:
    extension: SeparableExtension
    g: FiniteGroup
    oG: HopfAlgebra
    algebra_object: AlgebraObject


def base_change_category(ext: SeparableExtension, g: FiniteGroup) -> BaseChangeContext:
    """K with the trivial G-coaction as a commutative algebra object of Rep(G)."""
    if ext.separability_witness.is_zero():
        raise NotSeparableError("zero discriminant")
    o_g = function_algebra(g, ext.base)
    carrier = trivial_comodule(o_g, ext.degree, name="K")
    alg = AlgebraObject(carrier, ext.mult, ext.unit, name="K")
    logger.info("base_change_prepared", group=str(g), degree=ext.degree, discriminant=str(ext.separability_witness))
    return BaseChangeContext(ext, g, o_g, alg)


def extend_scalars(ctx: BaseChangeContext, x: Comodule) -> OModuleObject:
    """X_(K) = X (x) K."""
    return free_omodule(ctx, x)


def hom_space_K(ctx: BaseChangeContext, a: OModuleObject, b: OModuleObject) -> Matrix:
    return module_hom_space(a, b)


def tensor_over_K(ctx: BaseChangeContext, a: OModuleObject, b: OModuleObject) -> OModuleObject:
    return omodule_tensor(a, b)


def base_change_hom_check(ctx: BaseChangeContext, x: Comodule, y: Comodule) -> AxiomCheck:
    """dim Hom_{T_K}(X_(K), Y_(K)) = [K : k] dim Hom(X, Y)."""
    lhs = hom_space_K(ctx, extend_scalars(ctx, x), extend_scalars(ctx, y)).cols
    rhs = ctx.extension.degree * hom_space(x, y).cols
    return AxiomCheck("hom_dimension", lhs == rhs, (lhs, rhs))


def composition_formula_check(ctx: BaseChangeContext, x: Comodule, y: Comodule, z: Comodule, limit: int = 3) -> AxiomCheck:
    """bar(g f) = (id (x) m)(g_bar (x) id) f_bar on the first few basis maps."""
    alg = ctx.algebra_object
    xk, yk, zk = extend_scalars(ctx, x), extend_scalars(ctx, y), extend_scalars(ctx, z)
    fs = module_hom_maps(xk, yk)[:limit]
    gs = module_hom_maps(yk, zk)[:limit]
    for i, f_map in enumerate(fs):
        for j, g_map in enumerate(gs):
            direct = module_bar(g_map @ f_map, alg, x.dim)
            formula = compose_bar_formula(module_bar(g_map, alg, y.dim), module_bar(f_map, alg, x.dim), alg)
            if not (direct == formula):
                return AxiomCheck("composition_formula", False, (i, j))
    return AxiomCheck("composition_formula", True)


def extension_of_map(ctx: BaseChangeContext, f_bar: Matrix) -> Matrix:
    """f^K = (id (x) m)(f_bar (x) id): X (x) K -> Y (x) K for f_bar: X -> Y (x) K."""
    alg = ctx.algebra_object
    f = alg.field
    n = alg.dim
    return kron(Matrix.identity(f_bar.rows // n, f), alg.mult) @ kron(f_bar, Matrix.identity(n, f))


def extension_of_map_check(ctx: BaseChangeContext, x: Comodule, y: Comodule) -> list[AxiomCheck]:
    """f_bar -> f^K is a bijection Hom(X, Y (x) K) -> Hom_{T_K}(X_(K), Y_(K)) inverse to bar."""
    alg = ctx.algebra_object
    xk, yk = extend_scalars(ctx, x), extend_scalars(ctx, y)
    bars = hom_space(x, tensor_comodule(y, alg.carrier))
    f_bars = [col.reshape(y.dim * alg.dim, x.dim) for col in bars.columns()]
    module_maps = module_hom_maps(xk, yk)
    extended = [extension_of_map(ctx, fb) for fb in f_bars]
    is_module = [i for i, fk in enumerate(extended) if not is_module_map(fk, xk, yk)]
    loses_bar = [i for i, (fb, fk) in enumerate(zip(f_bars, extended)) if not (module_bar(fk, alg, x.dim) == fb)]
    loses_map = [i for i, fk in enumerate(module_maps) if not (extension_of_map(ctx, module_bar(fk, alg, x.dim)) == fk)]
    dims = (len(f_bars), len(module_maps))
    return [
        AxiomCheck("extension_is_module_map", not is_module, is_module[:1] or None),
        AxiomCheck("bar_after_extension", not loses_bar, loses_bar[:1] or None),
        AxiomCheck("extension_after_bar", not loses_map, loses_map[:1] or None),
        AxiomCheck("bar_dimension", dims[0] == dims[1], dims),
    ]


def tensor_map_over_K(ctx: BaseChangeContext, f0: Matrix, f1: Matrix, x0_dim: int, x1_dim: int) -> Matrix:
    """f0 (x)_K f1 on X0 (x) X1 (x) K: the map h with h mu_X = mu_Y (f0 (x) f1), mu the pair product."""
    alg = ctx.algebra_object
    n = alg.dim
    mu_x = pair_product(alg, x0_dim, x1_dim)
    mu_y = pair_product(alg, f0.rows // n, f1.rows // n)
    transposed = solve(mu_x.T, (mu_y @ kron(f0, f1)).T)
    if transposed is None:
        raise TannakitError("tensor of maps is not balanced over K")
    return transposed.T


def tensor_bar_formula(f0_bar: Matrix, f1_bar: Matrix, alg: AlgebraObject) -> Matrix:
    """Swap the two K factors of f0_bar (x) f1_bar to the end, then multiply them."""
    n = alg.dim
    return pair_product(alg, f0_bar.rows // n, f1_bar.rows // n) @ kron(f0_bar, f1_bar)


def base_change_tensor_check(
    ctx: BaseChangeContext, x0: Comodule, y0: Comodule, x1: Comodule, y1: Comodule, limit: int = 3
) -> list[AxiomCheck]:
    """f0 (x)_K f1 is a module map and its bar is the tensor formula, on every pair of basis maps."""
    alg = ctx.algebra_object
    source = extend_scalars(ctx, tensor_comodule(x0, x1))
    target = extend_scalars(ctx, tensor_comodule(y0, y1))
    fs = module_hom_maps(extend_scalars(ctx, x0), extend_scalars(ctx, y0))[:limit]
    gs = module_hom_maps(extend_scalars(ctx, x1), extend_scalars(ctx, y1))[:limit]
    not_module: list[tuple[int, int]] = []
    not_formula: list[tuple[int, int]] = []
    for i, f0 in enumerate(fs):
        for j, f1 in enumerate(gs):
            h = tensor_map_over_K(ctx, f0, f1, x0.dim, x1.dim)
            if not is_module_map(h, source, target):
                not_module.append((i, j))
            formula = tensor_bar_formula(module_bar(f0, alg, x0.dim), module_bar(f1, alg, x1.dim), alg)
            if not (module_bar(h, alg, x0.dim * x1.dim) == formula):
                not_formula.append((i, j))
    return [
        AxiomCheck("tensor_module_map", not not_module, not_module[:1] or None),
        AxiomCheck("tensor_formula", not not_formula, not_formula[:1] or None),
    ]


def extension_exactness_check(
    ctx: BaseChangeContext, inclusion: ComoduleMap, projection: ComoduleMap
) -> list[AxiomCheck]:
    """(-)^K on 0 -> X' -> X -> X'' -> 0, each map built as f^K from its bar f (x) u."""
    u = ctx.algebra_object.unit
    i_k = extension_of_map(ctx, kron(inclusion.matrix, u))
    p_k = extension_of_map(ctx, kron(projection.matrix, u))
    return short_exact_checks(i_k, p_k)


@dataclass(frozen=True, eq=False)
class KTriple:
    """(X, Y, f: X -> Y (x) K); the K-module it describes is the image of (id (x) m)(f (x) id)."""

    x: Comodule
    y: Comodule
    f: Matrix
    name: str = ""


def make_k_triple(ctx: BaseChangeContext, x: Comodule, y: Comodule, f: Matrix, name: str = "") -> KTriple:
    target = tensor_comodule(y, ctx.algebra_object.carrier)
    if f.shape != (target.dim, x.dim):
        raise DimensionMismatchError(f"f has shape {f.shape}, expected {(target.dim, x.dim)}")
    if not is_colinear(f, x, target):
        raise NotColinearError(f"f: {x.name} -> {y.name}(x)K is not colinear")
    return KTriple(x, y, f, name)


def k_triple_of(ctx: BaseChangeContext, x: Comodule) -> KTriple:
    """X_(K) as the triple (X, X, id (x) u)."""
    f = kron(Matrix.identity(x.dim, ctx.extension.base), ctx.algebra_object.unit)
    return KTriple(x, x, f, name=f"{x.name}_(K)")


def tensor_k_triples(ctx: BaseChangeContext, a: KTriple, b: KTriple) -> KTriple:
    f = pair_product(ctx.algebra_object, a.y.dim, b.y.dim) @ kron(a.f, b.f)
    return KTriple(tensor_comodule(a.x, b.x), tensor_comodule(a.y, b.y), f, name=f"({a.name}(x){b.name})")


def k_triple_module(ctx: BaseChangeContext, t: KTriple) -> OModuleObject:
    """U^K for the object described by ``t``: a K-module in Rep(G)."""
    return triple_image(ctx.algebra_object, t.y, t.f, name=f"{t.name}^K")[1]


def k_triple_checks(ctx: BaseChangeContext, t: KTriple) -> list[AxiomCheck]:
    """U^K is a K-module in Rep(G); over the field K it is free, so [K : k] divides its dimension."""
    mod = k_triple_module(ctx, t)
    degree = ctx.extension.degree
    return omodule_checks(mod) + [AxiomCheck("free_over_K", mod.dim % degree == 0, (mod.dim, degree))]


def k_triple_tensor_check(ctx: BaseChangeContext, a: KTriple, b: KTriple) -> AxiomCheck:
    """(a (x) b)^K is isomorphic to a^K (x)_K b^K."""
    lhs = k_triple_module(ctx, tensor_k_triples(ctx, a, b))
    rhs = tensor_over_K(ctx, k_triple_module(ctx, a), k_triple_module(ctx, b))
    iso = find_module_isomorphism(lhs, rhs)
    return AxiomCheck("tensor_compatible", iso is not None, (lhs.dim, rhs.dim))


def k_triple_free_check(ctx: BaseChangeContext, t: KTriple, x: Comodule) -> AxiomCheck:
    """t^K is isomorphic to X_(K)."""
    lhs = k_triple_module(ctx, t)
    rhs = extend_scalars(ctx, x)
    iso = find_module_isomorphism(lhs, rhs)
    return AxiomCheck("matches_extension", iso is not None, (lhs.dim, rhs.dim))


def find_module_isomorphism(a: OModuleObject, b: OModuleObject) -> Matrix | None:
    """An invertible colinear O-linear map a -> b, or None.

    An isomorphism forces dim Hom(a, b) = dim End(a); the rest is ``invertible_in_span``.
    """
    if a.dim != b.dim:
        return None
    if a.dim == 0:
        return Matrix.zeros(0, 0, a.algebra.field)
    forward = module_hom_space(a, b)
    if forward.cols != module_hom_space(a, a).cols:
        return None
    mats = [col.reshape(b.dim, a.dim) for col in forward.columns()]
    return invertible_in_span(mats, a.dim, a.algebra.field)

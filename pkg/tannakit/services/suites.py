"""Verification suites. Each suite turns a (G, L, field) datum into a list of CheckResults."""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from itertools import combinations_with_replacement
from typing import Any, Callable, Iterable

import structlog

from tannakit.comod import (
    Comodule,
    dual_comodule,
    find_isomorphism,
    invariants,
    is_colinear,
    tensor_comodule,
)
from tannakit.config import Config
from tannakit.decorators import Finding, timed_check
from tannakit.etale import (
    SeparableExtension,
    algebra_object_checks,
    base_change_category,
    base_change_hom_check,
    base_change_tensor_check,
    check_splitting,
    composition_formula_check,
    default_extension,
    extend_scalars,
    extension_exactness_check,
    extension_of_map_check,
    find_module_isomorphism,
    free_omodule,
    k_triple_checks,
    k_triple_free_check,
    k_triple_of,
    k_triple_tensor_check,
    make_k_triple,
    omodule_checks,
    omodule_tensor,
    rigidity_check,
    split_module_checks,
    splitting_section,
    tensor_over_K,
)
from tannakit.exactlin import FieldSpec, contains_columns, is_invertible, kron, same_column_space
from tannakit.exceptions import EtaleHypothesisError, GroupAxiomError, GroupTooLargeError, TannakitError
from tannakit.groups import FiniteGroup, Subgroup, validate_group
from tannakit.hopf import (
    AXIOM_FAMILIES,
    AxiomCheck,
    check_axioms,
    dual_hopf,
    find_integral,
    group_algebra,
    is_commutative,
    is_hopf_map,
    perturb,
)
from tannakit.quotient import (
    QuotientContext,
    QuotientMap,
    QuotientObject,
    bar,
    compose_bar,
    compose_P,
    context_checks,
    counit_triangle_check,
    deligne_triple,
    direct_sum_P,
    equivalence_to_repL,
    from_bar,
    full_faithfulness_check,
    functor_on_map,
    hom_space_P,
    identity_P,
    make_quotient_context,
    monoidal_check,
    monoidal_naturality_check,
    object_realizing,
    p_exactness_check,
    quotient_functor_q,
    right_adjoint_p,
    tensor_P,
    tensor_P_map,
    triple_from_deligne,
    verify_quotient_axioms,
    zero_object,
)
from tannakit.schemas import GroupPayload
from tannakit.schemas.reports import CheckResult, VerificationReport
from tannakit.services.battery import (
    Battery,
    adjunction_pairs,
    build_battery,
    short_exact_sequences,
)
from tannakit.tannaka_functors import (
    QuotientDatum,
    adjunction_check,
    cotensor,
    exact_sequence_check,
    ind_res_iso,
    make_quotient_datum,
    restrict,
    takeuchi_checks,
    takeuchi_general,
)

logger = structlog.get_logger(__name__)

# (tensor, row, col) single-entry perturbations of O(G), reduced modulo the tensor shape
MUTATIONS: tuple[tuple[str, int, int], ...] = (
    ("mult", 0, 0),
    ("mult", 1, 2),
    ("mult", -1, -1),
    ("unit", 0, 0),
    ("unit", -1, 0),
    ("comult", 0, 0),
    ("comult", 1, 1),
    ("counit", 0, 0),
    ("counit", 0, -1),
    ("antipode", 0, 0),
)


@dataclass(frozen=True)
class SuiteInputs:
    datum: QuotientDatum
    battery: Battery
    extension: SeparableExtension | None = None
    skipped: list[str] = dataclass_field(default_factory=list)

    @property
    def field(self) -> FieldSpec:
        return self.datum.field


def _findings(checks: Iterable[AxiomCheck]) -> Finding:
    checks = list(checks)
    failures = [
        {"family": c.family, "at": list(c.witness) if c.witness is not None else None}
        for c in checks
        if not c.passed
    ]
    return (not failures, {"failures": failures} if failures else None)


def _run(check_id: str, description: str, reference: str, body: Callable[[], Finding]) -> CheckResult:
    return timed_check(check_id, description, reference)(body)()


def _skipped(inp: SuiteInputs, check_id: str, *hom_dims: int) -> None:
    """Compositions need maps both ways; with an empty hom space the check is not run."""
    inp.skipped.append(check_id)
    logger.info("check_skipped", check=check_id, reason="empty_hom_space", hom_dims=list(hom_dims))


def require_etale(d: QuotientDatum) -> None:
    if d.field.divides(d.index):
        raise EtaleHypothesisError(f"characteristic {d.field.characteristic} divides |G/L| = {d.index}")


def hopf_axioms_suite(inp: SuiteInputs) -> list[CheckResult]:
    d = inp.datum
    f = inp.field
    k_g = group_algebra(d.g, f)
    algebras = {"kG": k_g, "O(G)": d.oG, "O(L)": d.oL, "O(A)": d.oA}
    results = []
    for label, h in algebras.items():
        for family in AXIOM_FAMILIES:
            results.append(
                _run(
                    f"hopf.{label}.{family}",
                    f"{family} axiom for {label}",
                    "structure tensors satisfy the Hopf algebra identities exactly",
                    lambda h=h, family=family: _findings([check_axioms(h).family(family)]),
                )
            )
    for k, (tensor, row, col) in enumerate(MUTATIONS):

        def caught(tensor: str = tensor, row: int = row, col: int = col) -> Finding:
            original = getattr(d.oG, tensor)
            r, c = row % original.rows, col % original.cols
            report = check_axioms(perturb(d.oG, tensor, r, c, 1))
            witness = {"tensor": tensor, "row": r, "col": c, "caught_by": [x.family for x in report.failures]}
            return (not report.all_passed, witness)

        results.append(_run(f"hopf.mutation.{k:02d}", f"perturbing {tensor} is detected", "mutation testing", caught))
    results.append(
        _run(
            "hopf.dual.group_algebra",
            "dual of kG equals O(G)",
            "O(G) = kG* with transposed structure tensors",
            lambda: (dual_hopf(k_g).same_structure(d.oG), {"error": "structure_differs"}),
        )
    )
    results.append(
        _run(
            "hopf.maps.q_star",
            "restriction O(G) -> O(L) is a Hopf map",
            "q* respects every structure tensor",
            lambda: (is_hopf_map(d.q_star, d.oG, d.oL), {"map": "q_star"}),
        )
    )
    results.append(
        _run(
            "hopf.maps.f_star",
            "pullback O(A) -> O(G) is a Hopf map",
            "f* respects every structure tensor",
            lambda: (is_hopf_map(d.f_star, d.oA, d.oG), {"map": "f_star"}),
        )
    )
    results.append(
        _run(
            "hopf.integral.O(G)",
            "O(G) has a one-dimensional space of left integrals spanned by x^e",
            "a t = eps(a) t",
            lambda: (find_integral(d.oG).vector == d.oG.basis_vector(d.g.identity), {"algebra": "O(G)"}),
        )
    )
    results.append(
        _run(
            "hopf.commutative.O(G)",
            "O(G) is commutative",
            "m tau = m",
            lambda: (is_commutative(d.oG), {"algebra": "O(G)"}),
        )
    )
    return results


def adjunction_suite(inp: SuiteInputs) -> list[CheckResult]:
    d, battery = inp.datum, inp.battery
    results = []
    for v, u in adjunction_pairs(battery):
        results.append(
            _run(
                f"adjunction.{v.name}.{u.name}",
                f"Hom_L(res {v.name}, {u.name}) = Hom_G({v.name}, ind {u.name})",
                "f -> eps_U res(f) is a bijection",
                lambda v=v, u=u: _findings(adjunction_check(d, v, u)),
            )
        )
    for u in battery.l_side:

        def dimension(u: Comodule = u) -> Finding:
            dim = cotensor(d, u).comodule.dim
            expected = u.dim * d.index
            return (dim == expected, {"dimension": dim, "expected": expected})

        results.append(
            _run(
                f"induction.dimension.{u.name}",
                f"dim ind {u.name} = dim {u.name} |G/L|",
                "cotensor dimension",
                dimension,
            )
        )

    def trivial_cotensor() -> Finding:
        unit = battery.l_side[0]
        ok = same_column_space(cotensor(d, unit).embedding, d.f_star)
        return (ok, None if ok else {"error": "column_spaces_differ"})

    results.append(
        _run("induction.cotensor_trivial", "ind I = O(A) inside O(G)", "I [] O(G) = f*(O(A))", trivial_cotensor)
    )
    for v in battery.g_side:

        def iso(v: Comodule = v) -> Finding:
            m = ind_res_iso(d, v)
            invertible = is_invertible(m.matrix)
            colinear = is_colinear(m.matrix, m.source, m.target)
            return (invertible and colinear, {"invertible": invertible, "colinear": colinear})

        results.append(
            _run(
                f"induction.ind_res_iso.{v.name}",
                f"ind res {v.name} = {v.name} (x) O(A)",
                "untwisting isomorphism",
                iso,
            )
        )
    return results


def takeuchi_suite(inp: SuiteInputs) -> list[CheckResult]:
    d, battery = inp.datum, inp.battery
    results = [
        _run(
            "takeuchi.isomorphism",
            "phi psi = id and psi phi = id on O(G) (x)_O(A) O(G) = O(L) (x) O(G)",
            "g (x) h -> q*(g_1) (x) g_2 h with inverse l (x) h -> l_1 (x) S(l_2) h",
            lambda: _findings(takeuchi_checks(d)),
        )
    ]
    for u in battery.l_side:
        if u.dim > 4:
            continue
        results.append(
            _run(
                f"takeuchi.general.{u.name}",
                f"(ind {u.name}) (x)_O(A) O(G) = {u.name} (x) O(G)",
                "multiplication induces an isomorphism",
                lambda u=u: _findings(takeuchi_general(d, u)),
            )
        )
    for name, inc, proj in short_exact_sequences(list(battery.l_side)):
        results.append(
            _run(
                f"exactness.{name}",
                f"ind is exact on the sequence {name}",
                "induction preserves short exact sequences",
                lambda inc=inc, proj=proj: _findings(exact_sequence_check(d, inc, proj)),
            )
        )
    return results


def _fits(u: Comodule, index: int, bound: int = 8) -> bool:
    return u.dim * index <= bound


def p_battery(ctx: QuotientContext, battery: Battery) -> list[QuotientObject]:
    """q' of the non-regular battery, a sum and a product of two of them, and one realized triple."""
    objects = [quotient_functor_q(ctx, x) for x in battery.g_side if x.name != "regular"]
    named = {o.x.name: o for o in objects}
    first, second = named.get("sign"), named.get("std")
    if first is None and len(objects) > 1:
        first = objects[1]
    if first is not None and second is not None:
        objects.append(direct_sum_P(ctx, first, second))
        objects.append(tensor_P(ctx, second, first))
    target = battery.l_named("res(std)")
    if target is None or not _fits(target, ctx.index, 4):
        target = battery.l_side[0]
    objects.append(object_realizing(ctx, target))
    return objects


def quotient_equivalence_suite(inp: SuiteInputs) -> list[CheckResult]:
    d, battery = inp.datum, inp.battery
    require_etale(d)
    ctx = make_quotient_context(d)
    objects = p_battery(ctx, battery)
    results = []
    for c in context_checks(ctx):
        results.append(
            _run(
                f"quotient.context.{c.family}",
                f"O(A) algebra object: {c.family}",
                "O is an algebra in Ind-S",
                lambda c=c: _findings([c]),
            )
        )
    for a in objects:
        for b in objects:
            results.append(
                _run(
                    f"quotient.hom_dimension.{a.name}.{b.name}",
                    f"dim Hom_P({a.name}, {b.name}) = dim Hom_L(F {a.name}, F {b.name})",
                    "F is fully faithful",
                    lambda a=a, b=b: _findings([full_faithfulness_check(ctx, a, b)]),
                )
            )
    head = objects[:4]
    for a, b in combinations_with_replacement(head, 2):
        fs, gs = hom_space_P(ctx, a, b), hom_space_P(ctx, b, a)
        if not fs or not gs:
            _skipped(inp, f"quotient.functoriality.{a.name}.{b.name}", len(fs), len(gs))
            continue

        def functorial(fs: list[QuotientMap] = fs, gs: list[QuotientMap] = gs) -> Finding:
            for i, f_map in enumerate(fs):
                for j, g_map in enumerate(gs):
                    lhs = functor_on_map(ctx, compose_P(ctx, g_map, f_map)).matrix
                    rhs = functor_on_map(ctx, g_map).matrix @ functor_on_map(ctx, f_map).matrix
                    if not (lhs == rhs):
                        return (False, {"error": "F(gf) != F(g)F(f)", "f": i, "g": j})
            return (True, None)

        results.append(
            _run(
                f"quotient.functoriality.{a.name}.{b.name}",
                "F preserves composition",
                "F(gf) = F(g) F(f)",
                functorial,
            )
        )
    for a in objects:
        results.append(
            _run(
                f"quotient.counit_triangle.{a.name}",
                f"(id (x) eps) bar(phi) = F(phi) f_0 on End({a.name})",
                "triangle relating f_bar and f_0",
                lambda a=a: _findings([counit_triangle_check(ctx, phi) for phi in hom_space_P(ctx, a, a)]),
            )
        )
    for a, b in combinations_with_replacement(objects[:3], 2):
        results.append(
            _run(
                f"quotient.monoidal.{a.name}.{b.name}",
                f"F({a.name} (x) {b.name}) = F({a.name}) (x) F({b.name})",
                "F is monoidal",
                lambda a=a, b=b: _findings(monoidal_check(ctx, a, b)),
            )
        )

        def natural(a: QuotientObject = a, b: QuotientObject = b) -> Finding:
            lefts = hom_space_P(ctx, a, a)[:2] + hom_space_P(ctx, a, b)[:2]
            rights = hom_space_P(ctx, b, b)[:2]
            return _findings(monoidal_naturality_check(ctx, phi, psi) for phi in lefts for psi in rights)

        results.append(
            _run(
                f"quotient.monoidal_naturality.{a.name}.{b.name}",
                f"the comparison for {a.name}, {b.name} commutes with F(phi (x) psi)",
                "the monoidal structure of F is natural",
                natural,
            )
        )

        def tensor_identity(a: QuotientObject = a, b: QuotientObject = b) -> Finding:
            product = tensor_P(ctx, a, b)
            m = tensor_P_map(ctx, identity_P(ctx, a), identity_P(ctx, b), product, product)
            return (m.matrix == identity_P(ctx, product).matrix, {"error": "id (x) id != id"})

        results.append(
            _run(
                f"quotient.tensor_identity.{a.name}.{b.name}",
                "tensor of identities is the identity",
                "bifunctoriality",
                tensor_identity,
            )
        )
    if len(objects) >= 3:
        left, right = objects[1], objects[2]
        total = direct_sum_P(ctx, left, right)
        for c in objects[:3]:

            def additive(c: QuotientObject = c) -> Finding:
                whole = len(hom_space_P(ctx, total, c))
                parts = len(hom_space_P(ctx, left, c)) + len(hom_space_P(ctx, right, c))
                return (whole == parts, {"sum": whole, "parts": parts})

            results.append(
                _run(
                    f"quotient.direct_sum_additive.{c.name}",
                    "Hom_P(a + b, c) = Hom_P(a, c) + Hom_P(b, c)",
                    "direct sums",
                    additive,
                )
            )
    l_items = [u for u in battery.l_side if _fits(u, d.index)]
    for u in l_items:

        def surjective(u: Comodule = u) -> Finding:
            image = equivalence_to_repL(ctx, object_realizing(ctx, u))
            found = find_isomorphism(image, u) is not None
            return (found, {"image_dim": image.dim, "target_dim": u.dim})

        results.append(
            _run(
                f"quotient.essential_surjectivity.{u.name}",
                f"{u.name} is F of a triple",
                "F is essentially surjective",
                surjective,
            )
        )
    for c in verify_quotient_axioms(ctx, list(battery.g_side), l_items):
        results.append(
            _run(
                f"quotient.axiom.{c.family}",
                c.family,
                "largest trivial subobject and sandwich conditions",
                lambda c=c: _findings([c]),
            )
        )
    for a in objects:

        def deligne(a: QuotientObject = a) -> Finding:
            vector = deligne_triple(ctx, a)
            space = restrict(d, tensor_comodule(dual_comodule(a.x), a.y))
            fixed, _ = invariants(space)
            invariant = contains_columns(fixed, vector)
            round_trip = triple_from_deligne(ctx, a.x, a.y, vector).f == a.f
            return (invariant and round_trip, {"invariant": invariant, "round_trip": round_trip})

        results.append(
            _run(
                f"quotient.deligne.{a.name}",
                "triple <-> L-invariant vector of X* (x) Y",
                "Hom(I, X (x) O) = (X)_S",
                deligne,
            )
        )
    q_objects = [o for o in objects if o.x is o.y][:3]
    for a, b in combinations_with_replacement(q_objects, 2):
        fs, gs = hom_space_P(ctx, a, b), hom_space_P(ctx, b, a)
        if not fs or not gs:
            _skipped(inp, f"quotient.compose_formula.{a.name}.{b.name}", len(fs), len(gs))
            continue

        def formula(
            a: QuotientObject = a, b: QuotientObject = b, fs: list[QuotientMap] = fs, gs: list[QuotientMap] = gs
        ) -> Finding:
            for i, f_map in enumerate(fs):
                if not (from_bar(ctx, a, b, bar(ctx, f_map)).matrix == f_map.matrix):
                    return (False, {"round_trip": False, "f": i})
                for j, g_map in enumerate(gs):
                    direct = bar(ctx, compose_P(ctx, g_map, f_map))
                    if not (direct == compose_bar(ctx, bar(ctx, g_map), bar(ctx, f_map))):
                        return (False, {"formula": False, "f": i, "g": j})
            return (True, None)

        results.append(
            _run(
                f"quotient.compose_formula.{a.name}.{b.name}",
                "composition on images agrees with (id (x) m)(g_bar (x) id) f_bar",
                "composition of maps between q'-objects",
                formula,
            )
        )
    for a in objects:

        def p_module(a: QuotientObject = a) -> Finding:
            module = right_adjoint_p(ctx, a)
            expected = equivalence_to_repL(ctx, a).dim * ctx.index
            ok, witness = _findings(omodule_checks(module))
            return (
                ok and module.dim == expected,
                {"dimension": module.dim, "expected": expected, **(witness or {})},
            )

        results.append(
            _run(
                f"quotient.p_module.{a.name}",
                f"p({a.name}) is an O(A)-module of dim |A| dim F",
                "p(U) is an O-module",
                p_module,
            )
        )
    zero = zero_object(ctx)
    results.append(
        _run(
            "quotient.zero_object",
            "Hom_P(0, a) = Hom_P(a, 0) = 0",
            "zero objects",
            lambda: (
                all(not hom_space_P(ctx, zero, a) and not hom_space_P(ctx, a, zero) for a in objects),
                {"error": "nonzero hom from the zero object"},
            ),
        )
    )
    items = list(battery.g_side)
    for name, inc, proj in short_exact_sequences(items, limit=len(items) - 2):
        results.append(
            _run(
                f"quotient.p_exact.{name}",
                f"p q' is exact on the sequence {name}",
                "p is exact; p(f) = (id (x) m)(f_bar (x) id)",
                lambda inc=inc, proj=proj: _findings(p_exactness_check(ctx, inc, proj)),
            )
        )
    return results


def etale_splitting_suite(inp: SuiteInputs) -> list[CheckResult]:
    d, battery = inp.datum, inp.battery
    section = splitting_section(d.oA)
    ctx = make_quotient_context(d)
    results = []
    for c in check_splitting(section, ctx.oA_comodule):
        results.append(
            _run(
                f"etale.splitting.{c.family}",
                f"splitting section: {c.family}",
                "s(1) = sum_g x^g (x) x^g",
                lambda c=c: _findings([c]),
            )
        )
    modules = [(x.name, free_omodule(ctx, x)) for x in battery.g_side if _fits(x, d.index, 16)]
    realized = object_realizing(ctx, battery.l_side[0])
    modules.append((f"p({realized.name})", right_adjoint_p(ctx, realized)))
    for name, module in modules:
        results.append(
            _run(
                f"etale.module_axioms.{name}",
                f"{name} is an O(A)-module in Rep(G)",
                "associative unital colinear action",
                lambda module=module: _findings(omodule_checks(module)),
            )
        )
        results.append(
            _run(
                f"etale.split.{name}",
                f"{name} is a direct summand of a free module",
                "mu sigma = id and (sigma mu)^2 = sigma mu",
                lambda module=module: _findings(split_module_checks(module, section)),
            )
        )
    small = [x for x in battery.g_side if x.dim <= 2]
    for x, y in combinations_with_replacement(small[:3], 2):

        def tensor(x: Comodule = x, y: Comodule = y) -> Finding:
            product = omodule_tensor(free_omodule(ctx, x), free_omodule(ctx, y))
            expected = x.dim * y.dim * d.index
            iso = find_module_isomorphism(product, free_omodule(ctx, tensor_comodule(x, y)))
            return (
                product.dim == expected and iso is not None,
                {"dimension": product.dim, "expected": expected},
            )

        results.append(
            _run(
                f"etale.tensor.{x.name}.{y.name}",
                f"free({x.name}) (x)_O free({y.name}) = free({x.name} (x) {y.name})",
                "tensor over O",
                tensor,
            )
        )
    duals = [(name, module) for name, module in modules if module.dim <= 12]
    if len(small) >= 2:
        x, y = small[0], small[-1]
        duals.append((f"{x.name}(x)O{y.name}", omodule_tensor(free_omodule(ctx, x), free_omodule(ctx, y))))
    for name, module in duals:
        results.append(
            _run(
                f"etale.rigidity.{name}",
                f"{name} has the dual Hom_O(-, O) in O-modules",
                "the module category is rigid: both snakes hold and coev is G-invariant",
                lambda module=module: _findings(rigidity_check(module)),
            )
        )
    return results


def base_change_suite(inp: SuiteInputs) -> list[CheckResult]:
    d, battery = inp.datum, inp.battery
    ext = inp.extension or default_extension(inp.field)
    if ext.base != inp.field:
        raise TannakitError(f"extension is defined over {ext.base}, not {inp.field}")
    ctx = base_change_category(ext, d.g)
    items = [x for x in battery.g_side if x.dim <= 4]
    results = []
    for c in algebra_object_checks(ctx.algebra_object):
        results.append(
            _run(
                f"base_change.algebra.{c.family}",
                f"K as algebra object: {c.family}",
                "K = K (x) I in Rep(G)",
                lambda c=c: _findings([c]),
            )
        )
    for x in items:
        for y in items:
            results.append(
                _run(
                    f"base_change.hom_dimension.{x.name}.{y.name}",
                    f"dim Hom_K({x.name}_K, {y.name}_K) = [K:k] dim Hom({x.name}, {y.name})",
                    "Hom_{T_K}(X_K, Y_K) = Hom(X, Y) (x) K",
                    lambda x=x, y=y: _findings([base_change_hom_check(ctx, x, y)]),
                )
            )
        results.append(
            _run(
                f"base_change.composition.{x.name}",
                f"composition formula on End({x.name}_K)",
                "(id (x) m)(g_bar (x) id) f_bar = bar(g f)",
                lambda x=x: _findings([composition_formula_check(ctx, x, x, x)]),
            )
        )

    def unit_tensor() -> Finding:
        unit = extend_scalars(ctx, battery.g_side[0])
        product = tensor_over_K(ctx, unit, unit)
        return (product.dim == ext.degree, {"dimension": product.dim, "expected": ext.degree})

    results.append(_run("base_change.unit_tensor", "K (x)_K K = K", "unit of the tensor over K", unit_tensor))
    for x in items:
        for y in items:
            results.append(
                _run(
                    f"base_change.extension_of_map.{x.name}.{y.name}",
                    f"Hom({x.name}, {y.name} (x) K) = Hom_K({x.name}_K, {y.name}_K) through f^K",
                    "f^K = (id (x) m)(f_bar (x) id)",
                    lambda x=x, y=y: _findings(extension_of_map_check(ctx, x, y)),
                )
            )
    for x, y in combinations_with_replacement(items[:3], 2):
        results.append(
            _run(
                f"base_change.tensor_formula.{x.name}.{y.name}",
                f"bar(f0 (x)_K f1) on End({x.name}_K) x End({y.name}_K)",
                "f0 (x) f1 corresponds to (id (x) m) applied after moving both K factors to the end",
                lambda x=x, y=y: _findings(base_change_tensor_check(ctx, x, x, y, y)),
            )
        )
    seq_items = list(battery.g_side)
    sequences = list(short_exact_sequences(seq_items, limit=len(seq_items) - 2))
    for name, inc, proj in sequences:
        results.append(
            _run(
                f"base_change.exact.{name}",
                f"(-)^K is exact on the sequence {name}",
                "(-)^K is exact",
                lambda inc=inc, proj=proj: _findings(extension_exactness_check(ctx, inc, proj)),
            )
        )
    alg = ctx.algebra_object
    triples = [(k_triple_of(ctx, x), x) for x in items]
    for name, inc, _ in sequences:
        twist = kron(inc.matrix, alg.basis_vector(alg.dim - 1))
        twisted = make_k_triple(ctx, inc.source, inc.target, twist, name=f"tw({name})")
        triples.append((twisted, inc.source))
    for t, x in triples:
        results.append(
            _run(
                f"base_change.triple.{t.name}",
                f"{t.name}^K is a K-module in Rep(G) isomorphic to {x.name}_K",
                "U^K is a K-module; triples (X, Y, f: X -> Y (x) K) describe T_K",
                lambda t=t, x=x: _findings(k_triple_checks(ctx, t) + [k_triple_free_check(ctx, t, x)]),
            )
        )
    for (a, _), (b, _) in combinations_with_replacement(triples[:3], 2):
        results.append(
            _run(
                f"base_change.triple_tensor.{a.name}.{b.name}",
                f"({a.name} (x) {b.name})^K = {a.name}^K (x)_K {b.name}^K",
                "(-)^K is a tensor functor",
                lambda a=a, b=b: _findings([k_triple_tensor_check(ctx, a, b)]),
            )
        )
    return results


SUITES: dict[str, Callable[[SuiteInputs], list[CheckResult]]] = {
    "hopf-axioms": hopf_axioms_suite,
    "adjunction": adjunction_suite,
    "takeuchi": takeuchi_suite,
    "quotient-equivalence": quotient_equivalence_suite,
    "etale-splitting": etale_splitting_suite,
    "base-change": base_change_suite,
}

SUITE_NAMES: tuple[str, ...] = (*SUITES, "all")


def run_suite(
    name: str,
    g: FiniteGroup,
    l: Subgroup,
    field: FieldSpec,
    extension: SeparableExtension | None = None,
) -> VerificationReport:
    if name not in SUITE_NAMES:
        raise TannakitError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    structlog.contextvars.bind_contextvars(suite=name)
    try:
        logger.info("suite_started", group=str(g), normal=l.name, field=str(field))
        d = make_quotient_datum(g, l, field)
        battery = build_battery(d)
        inputs = SuiteInputs(d, battery, extension)
        selected = list(SUITES) if name == "all" else [name]
        checks: list[CheckResult] = []
        for suite in selected:
            checks.extend(SUITES[suite](inputs))
        report = VerificationReport.build(
            checks=checks,
            suite=name,
            group=g.name or str(g),
            normal=l.name or "L",
            field=str(field),
            battery_version=battery.version,
            battery=battery.names,
            skipped=sorted(inputs.skipped),
        )
        logger.info("suite_finished", passed=report.passed, failed=report.failed)
        return report
    finally:
        structlog.contextvars.unbind_contextvars("suite")


GROUP_AXIOMS: dict[str, str] = {
    "order": "order is within TANNAKIT_MAX_GROUP_ORDER",
    "closure": "every product is an element of the table",
    "associativity": "(ab)c = a(bc) for all a, b, c",
    "identity": "the identity is a two-sided unit",
    "inverses": "every element has a two-sided inverse",
}


def group_validation_report(payload: GroupPayload, name: str = "") -> VerificationReport:
    """Validate a group table as a report with one check per axiom, up to the first failure.

    A table larger than the configured maximum fails the ``order`` check.
    """
    failed_axiom: str | None = None
    witness: dict[str, Any] | None = None
    try:
        g = validate_group(payload.table, payload.labels, payload.identity, name=payload.name or name)
    except GroupTooLargeError as exc:
        failed_axiom, witness = "order", {"error": exc.code, "message": str(exc)}
    except GroupAxiomError as exc:
        failed_axiom, witness = exc.axiom, {"at": list(exc.witness), "message": str(exc)}
    else:
        logger.info("group_validated", order=g.order, abelian=g.is_abelian())
    checks = []
    for axiom, description in GROUP_AXIOMS.items():
        failing = axiom == failed_axiom
        checks.append(
            CheckResult(
                id=f"group.{axiom}",
                description=description,
                reference="validate_group",
                status="fail" if failing else "pass",
                witness=witness if failing else None,
            )
        )
        if failing:
            break
    return VerificationReport.build(
        checks=checks,
        suite="group-validate",
        group=payload.name or name or "G",
        normal="",
        field="",
        battery_version=Config.BATTERY_VERSION,
    )


def report_header(report: VerificationReport) -> dict[str, Any]:
    return {k: v for k, v in report.model_dump().items() if k != "checks"}

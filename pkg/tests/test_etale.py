"""Tests for the splitting of O(A), module objects and base change."""

import pytest

from tannakit.comod import direct_sum_comodule, tensor_comodule, trivial_comodule
from tannakit.exactlin import FieldSpec, Matrix, is_invertible, kron
from tannakit.exceptions import (
    AlgebraMismatchError,
    DimensionMismatchError,
    EtaleHypothesisError,
    NotColinearError,
    NotCommutativeError,
    NotSeparableError,
)
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
    extension_of_map,
    extension_of_map_check,
    find_module_isomorphism,
    free_omodule,
    k_triple_checks,
    k_triple_free_check,
    k_triple_module,
    k_triple_of,
    k_triple_tensor_check,
    make_k_triple,
    module_dual,
    module_hom_space,
    omodule_checks,
    omodule_tensor,
    rigidity_check,
    snake_maps,
    solve_coevaluation,
    split_module_checks,
    splitting_section,
    tensor_over_K,
)
from tannakit.groups import catalog
from tannakit.hopf import function_algebra, group_algebra
from tannakit.quotient import object_realizing, right_adjoint_p
from tannakit.services.battery import g_battery, invariant_sequence, split_sequence


def all_pass(checks):
    return all(c.passed for c in checks)


class TestSplittingSection:
    """Test cases for the section of multiplication on O(A)."""

    @pytest.mark.unit
    def test_c2_section(self, qq):
        """Test s(1) = x^e (x) x^e + x^a (x) x^a for O(C2)."""
        sec = splitting_section(function_algebra(catalog("C2"), qq))
        assert sec.s_of_one == Matrix.from_rows([[1], [0], [0], [1]], qq)
        assert all_pass(check_splitting(sec))

    @pytest.mark.unit
    def test_c3_over_f5(self, f5):
        """Test the section exists when the characteristic does not divide |A|."""
        assert all_pass(check_splitting(splitting_section(function_algebra(catalog("C3"), f5))))

    @pytest.mark.unit
    def test_characteristic_divides_order(self):
        """Test O(C2) over F2 is rejected."""
        with pytest.raises(EtaleHypothesisError):
            splitting_section(function_algebra(catalog("C2"), FieldSpec.prime(2)))

    @pytest.mark.unit
    def test_requires_function_algebra(self, qq):
        """Test a group algebra is rejected."""
        with pytest.raises(AlgebraMismatchError):
            splitting_section(group_algebra(catalog("C2"), qq))

    @pytest.mark.unit
    def test_section_of_quotient_algebra_is_colinear(self, s3_datum, s3_context):
        """Test s is G-colinear for O(S3/A3) inside O(S3)."""
        sec = splitting_section(s3_datum.oA)
        assert all_pass(check_splitting(sec, s3_context.oA_comodule))


class TestModules:
    """Test cases for O(A)-modules in Rep(G)."""

    @pytest.mark.unit
    def test_algebra_object(self, s3_context):
        """Test O(A) is a commutative algebra object of Rep(G)."""
        checks = algebra_object_checks(s3_context.algebra_object)
        assert all_pass(checks)
        assert len(checks) == 5

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["I", "sign", "std"])
    def test_free_modules_split(self, s3_context, s3_battery, s3_datum, name):
        """Test free modules satisfy the module axioms and split."""
        module = free_omodule(s3_context, s3_battery.g_named(name))
        assert all_pass(omodule_checks(module))
        assert all_pass(split_module_checks(module, splitting_section(s3_datum.oA)))

    @pytest.mark.unit
    def test_end_of_free_unit(self, s3_context, s3_battery):
        """Test End(O) in modules is Hom_G(I, O(A)), one-dimensional."""
        free = free_omodule(s3_context, s3_battery.g_named("I"))
        assert module_hom_space(free, free).cols == 1

    @pytest.mark.unit
    def test_end_of_free_std(self, s3_context, s3_battery):
        """Test End(std (x) O) is Hom_L(res std, res std), two-dimensional."""
        free = free_omodule(s3_context, s3_battery.g_named("std"))
        assert module_hom_space(free, free).cols == 2

    @pytest.mark.unit
    def test_tensor_of_free_modules(self, s3_context, s3_battery):
        """Test (X (x) O) (x)_O (Y (x) O) = (X (x) Y) (x) O."""
        std, sign = s3_battery.g_named("std"), s3_battery.g_named("sign")
        product = omodule_tensor(free_omodule(s3_context, std), free_omodule(s3_context, sign))
        assert product.dim == 4
        assert all_pass(omodule_checks(product))
        expected = free_omodule(s3_context, tensor_comodule(std, sign))
        assert find_module_isomorphism(product, expected) is not None

    @pytest.mark.unit
    def test_rigidity_of_free_module(self, s3_context, s3_battery):
        """Test std (x) O has a dual with a solved coevaluation."""
        checks = rigidity_check(free_omodule(s3_context, s3_battery.g_named("std")))
        families = [c.family for c in checks]
        assert "coevaluation_found" in families and "coevaluation_invariant" in families
        assert all_pass(checks)

    @pytest.mark.unit
    def test_rigidity_of_realized_module(self, s3_context, s3_battery):
        """Test p(real(res std)), a module that is not given as X (x) O."""
        module = right_adjoint_p(s3_context, object_realizing(s3_context, s3_battery.l_named("res(std)")))
        assert all_pass(rigidity_check(module))

    @pytest.mark.unit
    def test_rigidity_of_tensor_output(self, s3_context, s3_battery):
        """Test the balanced tensor of two free modules is rigid."""
        std, sign = s3_battery.g_named("std"), s3_battery.g_named("sign")
        product = omodule_tensor(free_omodule(s3_context, std), free_omodule(s3_context, sign))
        assert all_pass(rigidity_check(product))

    @pytest.mark.unit
    def test_module_dual(self, s3_context, s3_battery):
        """Test Hom_O(M, O) has the dimension of M and the solved c satisfies both snakes."""
        module = free_omodule(s3_context, s3_battery.g_named("sign"))
        dual = module_dual(module)
        assert dual.module.dim == module.dim == 2
        assert all_pass(omodule_checks(dual.module))
        c = solve_coevaluation(module, dual)
        assert c is not None
        left, right = snake_maps(module, dual, c)
        assert left == Matrix.identity(2, s3_context.field)
        assert right == Matrix.identity(2, s3_context.field)

    @pytest.mark.unit
    def test_zero_coevaluation_fails_snakes(self, s3_context, s3_battery):
        """Test c = 0 gives zero snake composites."""
        module = free_omodule(s3_context, s3_battery.g_named("I"))
        dual = module_dual(module)
        zero = Matrix.zeros(module.dim * dual.module.dim, 1, s3_context.field)
        left, right = snake_maps(module, dual, zero)
        assert left.is_zero() and right.is_zero()

    @pytest.mark.unit
    def test_rigidity_over_extension(self, s3, qq):
        """Test std_(K) is rigid as a K-module."""
        ctx = base_change_category(default_extension(qq), s3)
        std = next(x for x in g_battery(s3, ctx.oG) if x.name == "std")
        assert all_pass(rigidity_check(extend_scalars(ctx, std)))

    @pytest.mark.unit
    def test_module_isomorphism_decision(self, s3_context, s3_battery):
        """Test sign (x) O = I (x) O since sign restricts trivially, while (I + sign) (x) O is not std (x) O."""
        unit, sign, std = (s3_battery.g_named(n) for n in ("I", "sign", "std"))
        iso = find_module_isomorphism(free_omodule(s3_context, sign), free_omodule(s3_context, unit))
        assert iso is not None and is_invertible(iso)
        pair = free_omodule(s3_context, direct_sum_comodule(unit, sign))
        assert pair.dim == 4
        assert find_module_isomorphism(pair, free_omodule(s3_context, std)) is None


class TestSeparableExtension:
    """Test cases for finite separable extensions."""

    @pytest.mark.unit
    def test_sqrt_two(self, qq):
        """Test Q(sqrt 2) from its multiplication table."""
        ext = SeparableExtension.from_table([[[1, 0], [0, 1]], [[0, 1], [2, 0]]], qq)
        assert ext.degree == 2
        assert ext.unit == Matrix.from_rows([[1], [0]], qq)
        assert ext.separability_witness.value == 8

    @pytest.mark.unit
    @pytest.mark.parametrize("p", [0, 2, 3, 5])
    def test_default_extension(self, p):
        """Test default quadratic extensions are separable."""
        field = FieldSpec.rationals() if p == 0 else FieldSpec.prime(p)
        ext = default_extension(field)
        assert ext.degree == 2
        assert not ext.separability_witness.is_zero()

    @pytest.mark.unit
    def test_inseparable(self, qq):
        """Test the dual numbers have a degenerate trace form."""
        with pytest.raises(NotSeparableError):
            SeparableExtension.from_table([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], qq)

    @pytest.mark.unit
    def test_non_commutative(self, qq):
        """Test a non-commutative table."""
        with pytest.raises(NotCommutativeError):
            SeparableExtension.from_table([[[1, 0], [0, 1]], [[1, 1], [0, 0]]], qq)

    @pytest.mark.unit
    def test_bad_shape(self, qq):
        """Test a table of the wrong shape."""
        with pytest.raises(DimensionMismatchError):
            SeparableExtension.from_table([[[1, 0]], [[0, 1]]], qq)


class TestBaseChange:
    """Test cases for T_(K)."""

    @pytest.mark.unit
    def test_hom_dimensions_over_sqrt_two(self, s3, qq):
        """Test dim Hom_K(X_K, Y_K) = 2 dim Hom(X, Y) on S3."""
        ctx = base_change_category(default_extension(qq), s3)
        items = [x for x in g_battery(s3, ctx.oG) if x.dim <= 2]
        for x in items:
            for y in items:
                assert base_change_hom_check(ctx, x, y).passed
        std = next(x for x in items if x.name == "std")
        assert base_change_hom_check(ctx, std, std).witness == (2, 2)

    @pytest.mark.unit
    def test_algebra_object_and_unit(self, s3, f5):
        """Test K is an algebra object and K (x)_K K = K."""
        ctx = base_change_category(default_extension(f5), s3)
        assert all_pass(algebra_object_checks(ctx.algebra_object))
        unit = extend_scalars(ctx, trivial_comodule(ctx.oG, 1))
        assert tensor_over_K(ctx, unit, unit).dim == 2

    @pytest.mark.unit
    def test_composition_formula(self, s3, qq):
        """Test bar(g f) agrees with the formula on End(std_K)."""
        ctx = base_change_category(default_extension(qq), s3)
        std = next(x for x in g_battery(s3, ctx.oG) if x.name == "std")
        assert composition_formula_check(ctx, std, std, std).passed


@pytest.fixture
def sqrt_two_context(s3, qq):
    """S3 with K = Q(sqrt 2)."""
    return base_change_category(default_extension(qq), s3)


@pytest.fixture
def small_reps(sqrt_two_context, s3):
    """I, sign and std as S3-comodules over Q."""
    return {x.name: x for x in g_battery(s3, sqrt_two_context.oG) if x.dim <= 2}


class TestExtensionOfMaps:
    """Test cases for f^K, its tensor formula and exactness of (-)^K."""

    @pytest.mark.unit
    def test_extension_of_unit_bar(self, sqrt_two_context, small_reps, qq):
        """Test (phi (x) u)^K = phi (x) id_K."""
        inc, _ = split_sequence(small_reps["I"], small_reps["sign"])
        extended = extension_of_map(sqrt_two_context, kron(inc.matrix, sqrt_two_context.algebra_object.unit))
        assert extended == kron(inc.matrix, Matrix.identity(2, qq))

    @pytest.mark.unit
    @pytest.mark.parametrize("source, target", [("std", "std"), ("I", "sign"), ("sign", "sign")])
    def test_extension_inverts_bar(self, sqrt_two_context, small_reps, source, target):
        """Test f_bar -> f^K and bar are mutually inverse."""
        checks = extension_of_map_check(sqrt_two_context, small_reps[source], small_reps[target])
        assert [c.family for c in checks] == [
            "extension_is_module_map",
            "bar_after_extension",
            "extension_after_bar",
            "bar_dimension",
        ]
        assert all_pass(checks)

    @pytest.mark.unit
    def test_tensor_formula(self, sqrt_two_context, small_reps):
        """Test bar(f0 (x)_K f1) on End(std_K) x End(sign_K)."""
        std, sign = small_reps["std"], small_reps["sign"]
        assert all_pass(base_change_tensor_check(sqrt_two_context, std, std, sign, sign))

    @pytest.mark.unit
    def test_split_sequence_stays_exact(self, sqrt_two_context, small_reps):
        """Test (-)^K on I -> I + std -> std."""
        inc, proj = split_sequence(small_reps["I"], small_reps["std"])
        assert all_pass(extension_exactness_check(sqrt_two_context, inc, proj))

    @pytest.mark.unit
    def test_non_split_sequence_stays_exact(self):
        """Test (-)^K on the invariant sequence of the regular C2-comodule in characteristic two."""
        ctx = base_change_category(default_extension(FieldSpec.prime(2)), catalog("C2"))
        regular = next(x for x in g_battery(catalog("C2"), ctx.oG) if x.name == "regular")
        inc, proj = invariant_sequence(regular)
        assert all_pass(extension_exactness_check(ctx, inc, proj))


class TestKTriples:
    """Test cases for objects of T_K described as (X, Y, f: X -> Y (x) K)."""

    @pytest.mark.unit
    def test_triple_of_extension(self, sqrt_two_context, small_reps):
        """Test (X, X, id (x) u) describes X_(K)."""
        std = small_reps["std"]
        t = k_triple_of(sqrt_two_context, std)
        assert k_triple_module(sqrt_two_context, t).dim == 4
        assert all_pass(k_triple_checks(sqrt_two_context, t))
        assert k_triple_free_check(sqrt_two_context, t, std).passed

    @pytest.mark.unit
    def test_twisted_triple(self, sqrt_two_context, small_reps):
        """Test I -> (I + sign) (x) K through sqrt 2 still describes I_(K)."""
        inc, _ = split_sequence(small_reps["I"], small_reps["sign"])
        twist = kron(inc.matrix, sqrt_two_context.algebra_object.basis_vector(1))
        t = make_k_triple(sqrt_two_context, inc.source, inc.target, twist, name="tw")
        assert all_pass(k_triple_checks(sqrt_two_context, t))
        assert k_triple_free_check(sqrt_two_context, t, small_reps["I"]).passed
        assert not k_triple_free_check(sqrt_two_context, t, small_reps["std"]).passed

    @pytest.mark.unit
    def test_tensor_of_triples(self, sqrt_two_context, small_reps):
        """Test (a (x) b)^K = a^K (x)_K b^K."""
        a = k_triple_of(sqrt_two_context, small_reps["std"])
        b = k_triple_of(sqrt_two_context, small_reps["sign"])
        assert k_triple_tensor_check(sqrt_two_context, a, b).passed

    @pytest.mark.unit
    def test_triple_not_colinear(self, sqrt_two_context, small_reps, qq):
        """Test sign -> I (x) K is rejected."""
        f = kron(Matrix.identity(1, qq), sqrt_two_context.algebra_object.unit)
        with pytest.raises(NotColinearError):
            make_k_triple(sqrt_two_context, small_reps["sign"], small_reps["I"], f)

    @pytest.mark.unit
    def test_triple_wrong_shape(self, sqrt_two_context, small_reps, qq):
        """Test f that does not land in Y (x) K."""
        std = small_reps["std"]
        with pytest.raises(DimensionMismatchError):
            make_k_triple(sqrt_two_context, std, std, Matrix.identity(2, qq))

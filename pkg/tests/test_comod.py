"""Tests for comodules over function algebras."""

import pytest

from tannakit.comod import (
    coevaluation,
    comodule_checks,
    direct_sum_comodule,
    dual_comodule,
    evaluation,
    find_isomorphism,
    hom_maps,
    hom_space,
    invariants,
    is_colinear,
    largest_s_quotient,
    largest_s_subobject,
    make_comodule,
    matrices_from_comodule,
    quotient_comodule,
    regular_comodule,
    rep_from_matrices,
    subcomodule,
    tensor_comodule,
    trivial_comodule,
)
from tannakit.exactlin import Matrix
from tannakit.exceptions import AlgebraMismatchError, ComoduleAxiomError, NonHomomorphismError, NotSubcomoduleError
from tannakit.groups import catalog, subgroup_by_name
from tannakit.hopf import function_algebra
from tannakit.services.battery import sign_character, sign_kernels, standard_images

pytestmark = pytest.mark.unit


@pytest.fixture
def o_s3(s3, qq):
    """O(S3) over Q."""
    return function_algebra(s3, qq)


@pytest.fixture
def std(s3, qq, o_s3):
    """The two-dimensional reflection representation of S3."""
    return rep_from_matrices(s3, standard_images(s3, qq), algebra=o_s3, name="std")


@pytest.fixture
def sign(s3, qq, o_s3):
    """The sign character of S3."""
    return rep_from_matrices(s3, sign_character(s3, sign_kernels(s3)[0], qq), algebra=o_s3, name="sign")


@pytest.fixture
def unit(o_s3):
    """The trivial one-dimensional comodule."""
    return trivial_comodule(o_s3, 1)


class TestConstruction:
    """Test cases for building comodules."""

    def test_representations_are_comodules(self, std, sign, o_s3):
        """Test the comodule axioms on battery representations."""
        for x in (std, sign, regular_comodule(o_s3)):
            assert all(c.passed for c in comodule_checks(x))

    def test_matrices_round_trip(self, s3, qq, std):
        """Test reading the action back from the coaction."""
        assert matrices_from_comodule(std) == standard_images(s3, qq)

    def test_non_homomorphism_rejected(self, s3, qq):
        """Test a non-multiplicative assignment."""
        images = [Matrix.identity(1, qq)] + [Matrix.from_rows([[2]], qq)] * 5
        with pytest.raises(NonHomomorphismError):
            rep_from_matrices(s3, images)

    def test_make_comodule_checks_axioms(self, o_s3, qq):
        """Test a coaction violating the counit triangle."""
        with pytest.raises(ComoduleAxiomError):
            make_comodule(o_s3, Matrix.zeros(6, 1, qq))

    def test_sign_kernel_of_s3(self, s3):
        """Test S3 has exactly one sign character, with kernel A3."""
        assert sign_kernels(s3) == [(0, 1, 2)]


class TestHomSpaces:
    """Test cases for colinear maps."""

    def test_schur(self, std, sign, unit):
        """Test hom dimensions between irreducibles."""
        assert hom_space(std, std).cols == 1
        assert hom_space(sign, unit).cols == 0
        assert hom_space(std, sign).cols == 0
        assert hom_space(unit, unit).cols == 1

    def test_hom_maps_are_colinear(self, o_s3, std):
        """Test every basis map of Hom(std, regular) is colinear."""
        regular = regular_comodule(o_s3)
        maps = hom_maps(std, regular)
        assert len(maps) == 2
        assert all(is_colinear(m.matrix, std, regular) for m in maps)

    def test_invariants_of_regular(self, o_s3):
        """Test O(G) has a one-dimensional space of invariants."""
        fixed, trivial = invariants(regular_comodule(o_s3))
        assert fixed.cols == 1
        assert trivial.dim == 1

    def test_algebra_mismatch(self, std, qq):
        """Test hom spaces across different Hopf algebras."""
        other = trivial_comodule(function_algebra(catalog("C2"), qq), 1)
        with pytest.raises(AlgebraMismatchError):
            hom_space(std, other)


class TestMonoidalStructure:
    """Test cases for tensor products, duals and sums."""

    def test_std_squared_decomposes(self, std, sign, unit):
        """Test std (x) std = I + sign + std."""
        square = tensor_comodule(std, std)
        assert square.dim == 4
        assert all(c.passed for c in comodule_checks(square))
        assert [hom_space(x, square).cols for x in (unit, sign, std)] == [1, 1, 1]

    def test_sign_squared_is_trivial(self, sign, unit):
        """Test sign (x) sign = I."""
        assert find_isomorphism(tensor_comodule(sign, sign), unit) is not None

    def test_std_is_self_dual(self, std):
        """Test std* = std."""
        assert find_isomorphism(dual_comodule(std), std) is not None

    def test_non_isomorphic(self, sign, unit):
        """Test sign and I are not isomorphic."""
        assert find_isomorphism(sign, unit) is None

    def test_evaluation_and_coevaluation_are_colinear(self, std):
        """Test ev and coev are comodule maps."""
        ev, coev = evaluation(std), coevaluation(std)
        assert is_colinear(ev.matrix, ev.source, ev.target)
        assert is_colinear(coev.matrix, coev.source, coev.target)

    def test_direct_sum(self, std, sign):
        """Test direct sums add hom dimensions."""
        total = direct_sum_comodule(std, sign)
        assert total.dim == 3
        assert hom_space(total, std).cols == 1
        assert hom_space(total, total).cols == 2


class TestSubobjects:
    """Test cases for subcomodules and quotients."""

    def test_subcomodule_of_invariants(self, o_s3):
        """Test the invariant line is a subcomodule and its quotient has dim 5."""
        regular = regular_comodule(o_s3)
        fixed, _ = invariants(regular)
        sub, inclusion = subcomodule(regular, fixed)
        assert sub.dim == 1
        assert is_colinear(inclusion.matrix, sub, regular)
        quotient, projection = quotient_comodule(regular, fixed)
        assert quotient.dim == 5
        assert is_colinear(projection.matrix, regular, quotient)

    def test_non_subcomodule(self, std, qq):
        """Test a line that is not stable."""
        with pytest.raises(NotSubcomoduleError):
            subcomodule(std, Matrix.from_rows([[1], [0]], qq))

    def test_largest_s_subobject(self, s3, o_s3, std):
        """Test A3-invariants of O(S3) and std."""
        a3 = subgroup_by_name(s3, "A3")
        inclusion, xs = largest_s_subobject(regular_comodule(o_s3), a3)
        assert xs.dim == 2
        _, std_s = largest_s_subobject(std, a3)
        assert std_s.dim == 0

    def test_largest_s_quotient(self, s3, sign, std):
        """Test A3-coinvariants."""
        a3 = subgroup_by_name(s3, "A3")
        _, sign_q = largest_s_quotient(sign, a3)
        _, std_q = largest_s_quotient(std, a3)
        assert sign_q.dim == 1
        assert std_q.dim == 0

"""Tests for finite groups and the integer helpers."""

import pytest

from tannakit.exceptions import GroupAxiomError, GroupTooLargeError, NotNormalError, NotSubgroupError, UnknownGroupError
from tannakit.groups import (
    CATALOG_NAMES,
    catalog,
    center,
    element_order,
    group_to_payload,
    is_normal,
    kernel_of_projection,
    make_subgroup,
    quotient_group,
    subgroup_by_name,
    validate_group,
)
from tannakit.utils.numbers import cyclotomic, divisors, is_prime, least_nonresidue

pytestmark = pytest.mark.unit


class TestValidateGroup:
    """Test cases for multiplication table validation."""

    def test_cyclic_table_by_labels(self):
        """Test a table given by labels."""
        g = validate_group([["e", "a"], ["a", "e"]], ["e", "a"], "e", name="C2")
        assert g.order == 2
        assert g.mul(1, 1) == 0
        assert g.is_abelian()

    def test_closure_failure(self):
        """Test a table entry outside the label set."""
        with pytest.raises(GroupAxiomError) as exc:
            validate_group([[0, 1], [1, 2]], ["e", "a"], 0)
        assert exc.value.axiom == "closure"
        assert exc.value.witness == (1, 1)

    def test_associativity_failure(self):
        """Test a Latin square that is not associative."""
        table = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]
        with pytest.raises(GroupAxiomError) as exc:
            validate_group(table, ["e", "a", "b"], 0)
        assert exc.value.axiom == "associativity"

    def test_identity_failure(self):
        """Test a table whose claimed identity does not act trivially."""
        with pytest.raises(GroupAxiomError) as exc:
            validate_group([[0, 1], [1, 0]], ["e", "a"], 1)
        assert exc.value.axiom == "identity"

    def test_inverse_failure(self):
        """Test a monoid without inverses."""
        with pytest.raises(GroupAxiomError) as exc:
            validate_group([[0, 1], [1, 1]], ["e", "a"], 0)
        assert exc.value.axiom == "inverses"
        assert exc.value.witness == (1,)

    def test_too_large(self):
        """Test the configured order cap."""
        table = [[(i + j) % 3 for j in range(3)] for i in range(3)]
        with pytest.raises(GroupTooLargeError):
            validate_group(table, ["e", "a", "b"], 0, max_order=2)


class TestCatalog:
    """Test cases for the group catalog."""

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_catalog_groups_validate(self, name):
        """Test every catalog group passes validation and exports cleanly."""
        g = catalog(name)
        payload = group_to_payload(g)
        again = validate_group(payload["table"], payload["labels"], payload["identity"])
        assert again.table == g.table

    def test_orders(self):
        """Test catalog orders and abelianness."""
        assert catalog("S3").order == 6
        assert catalog("D4").order == 8
        assert catalog("Q8").order == 8
        assert not catalog("S3").is_abelian()
        assert catalog("C8").is_abelian()

    def test_quaternion_relations(self):
        """Test i^2 = j^2 = k^2 = ijk = z."""
        q8 = catalog("Q8")
        i, j, k, z = (q8.index(label) for label in ("i", "j", "k", "z"))
        assert q8.mul(i, i) == q8.mul(j, j) == q8.mul(k, k) == z
        assert q8.mul(q8.mul(i, j), k) == z

    def test_unknown(self):
        """Test an unknown catalog name."""
        with pytest.raises(UnknownGroupError):
            catalog("A5")


class TestSubgroups:
    """Test cases for subgroups and quotients."""

    def test_a3_is_normal(self, s3):
        """Test the rotation subgroup of S3."""
        a3 = subgroup_by_name(s3, "A3")
        assert a3.members == (0, 1, 2)
        assert is_normal(s3, a3)

    def test_reflection_subgroup_not_normal(self, s3):
        """Test that <s> is not normal in S3."""
        h = make_subgroup(s3, ["e", "s"])
        assert not is_normal(s3, h)
        with pytest.raises(NotNormalError):
            quotient_group(s3, h)

    def test_make_subgroup_rejects_non_closed(self, s3):
        """Test a subset that is not closed."""
        with pytest.raises(NotSubgroupError):
            make_subgroup(s3, ["e", "r"])

    def test_quotient_s3_by_a3(self, s3):
        """Test S3/A3 has order two and the right kernel."""
        a3 = subgroup_by_name(s3, "A3")
        q = quotient_group(s3, a3)
        assert q.group.order == 2
        assert q.projection == (0, 0, 0, 1, 1, 1)
        assert kernel_of_projection(q).members == a3.members

    def test_center_of_q8(self):
        """Test Z(Q8) = {e, z}."""
        q8 = catalog("Q8")
        assert center(q8).members == (0, 4)
        assert subgroup_by_name(q8, "center").members == (0, 4)

    def test_named_cyclic_subgroup(self):
        """Test Cm names the subgroup generated by an element of order m."""
        c4 = catalog("C4")
        assert subgroup_by_name(c4, "C2").members == (0, 2)
        assert subgroup_by_name(c4, "trivial").members == (0,)
        assert element_order(c4, 1) == 4

    def test_as_group(self, s3):
        """Test a subgroup viewed as a group."""
        a3 = subgroup_by_name(s3, "A3").as_group()
        assert a3.order == 3
        assert a3.is_abelian()


class TestNumbers:
    """Test cases for integer helpers."""

    def test_is_prime(self):
        """Test primality."""
        assert [n for n in range(12) if is_prime(n)] == [2, 3, 5, 7, 11]

    def test_divisors(self):
        """Test divisors."""
        assert divisors(12) == [1, 2, 3, 4, 6, 12]

    def test_cyclotomic(self):
        """Test small cyclotomic polynomials."""
        assert cyclotomic(1) == (-1, 1)
        assert cyclotomic(4) == (1, 0, 1)
        assert cyclotomic(6) == (1, -1, 1)

    def test_least_nonresidue(self):
        """Test least quadratic non-residues."""
        assert least_nonresidue(5) == 2
        assert least_nonresidue(7) == 3

"""Test configuration and fixtures for tannakit."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from tannakit.exactlin import FieldSpec
from tannakit.groups import FiniteGroup, catalog, group_to_payload, subgroup_by_name
from tannakit.quotient import QuotientContext, make_quotient_context
from tannakit.services.battery import Battery, build_battery
from tannakit.tannaka_functors import QuotientDatum, make_quotient_datum


@pytest.fixture
def qq() -> FieldSpec:
    """The rational field."""
    return FieldSpec.rationals()


@pytest.fixture
def f5() -> FieldSpec:
    """The prime field with five elements."""
    return FieldSpec.prime(5)


@pytest.fixture
def s3() -> FiniteGroup:
    """S3 from the catalog."""
    return catalog("S3")


@pytest.fixture
def s3_datum(s3: FiniteGroup, qq: FieldSpec) -> QuotientDatum:
    """S3 over A3 with rational coefficients."""
    return make_quotient_datum(s3, subgroup_by_name(s3, "A3"), qq)


@pytest.fixture
def s3_context(s3_datum: QuotientDatum) -> QuotientContext:
    """Quotient context for S3 over A3."""
    return make_quotient_context(s3_datum)


@pytest.fixture
def s3_battery(s3_datum: QuotientDatum) -> Battery:
    """Representation battery for S3 over A3."""
    return build_battery(s3_datum)


@pytest.fixture
def c4_datum() -> QuotientDatum:
    """C4 over its subgroup of order two, over F3."""
    g = catalog("C4")
    return make_quotient_datum(g, subgroup_by_name(g, "C2"), FieldSpec.prime(3))


@pytest.fixture
def c2_datum(qq: FieldSpec) -> QuotientDatum:
    """C2 over the trivial subgroup: A = C2 and L = 1."""
    g = catalog("C2")
    return make_quotient_datum(g, subgroup_by_name(g, "trivial"), qq)


@pytest.fixture
def runner() -> CliRunner:
    """Create a click CLI runner; stderr carries log lines and stays out of the output."""
    return CliRunner(mix_stderr=False)


@pytest.fixture
def s3_group_file(tmp_path: Path) -> Path:
    """S3 exported as group JSON."""
    path = tmp_path / "s3.json"
    path.write_text(json.dumps({**group_to_payload(catalog("S3")), "name": "S3"}))
    return path

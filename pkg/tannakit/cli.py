from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import click
import structlog

from tannakit.comod import Comodule
from tannakit.config import Config
from tannakit.decorators import exit_codes
from tannakit.etale import SeparableExtension
from tannakit.exactlin import FieldSpec
from tannakit.exceptions import UnknownObjectSpecError
from tannakit.groups import (
    CATALOG_NAMES,
    FiniteGroup,
    Subgroup,
    catalog,
    group_to_payload,
    make_subgroup,
    subgroup_by_name,
    validate_group,
)
from tannakit.logging_config import configure_logging
from tannakit.quotient import (
    QuotientContext,
    QuotientObject,
    hom_space_P,
    make_object,
    make_quotient_context,
    quotient_functor_q,
)
from tannakit.schemas import ExtensionPayload, GroupPayload, SubgroupPayload, TriplePayload
from tannakit.services.battery import g_battery
from tannakit.services.suites import SUITE_NAMES, group_validation_report, require_etale, run_suite
from tannakit.tannaka_functors import make_quotient_datum
from tannakit.utils.serialization import matrix_from_json, matrix_to_json

logger = structlog.get_logger(__name__)


def _read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(data: Any) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def load_group(spec: str) -> FiniteGroup:
    """A catalog name, or a path to group JSON."""
    if Path(spec).is_file():
        payload = GroupPayload.model_validate(_read_json(spec))
        return validate_group(payload.table, payload.labels, payload.identity, name=payload.name or Path(spec).stem)
    return catalog(spec)


def load_subgroup(g: FiniteGroup, spec: str) -> Subgroup:
    if Path(spec).is_file():
        payload = SubgroupPayload.model_validate(_read_json(spec))
        return make_subgroup(g, payload.members, name=payload.name or Path(spec).stem)
    return subgroup_by_name(g, spec)


def load_extension(path: str, field: FieldSpec) -> SeparableExtension:
    payload = ExtensionPayload.model_validate(_read_json(path))
    return SeparableExtension.from_table(payload.mult_table, field)


def resolve_object(ctx: QuotientContext, spec: str, battery: list[Comodule]) -> QuotientObject:
    """``q'NAME`` for a battery representation of G, or a path to triple JSON."""
    named = {x.name: x for x in battery}
    if Path(spec).is_file():
        payload = TriplePayload.model_validate(_read_json(spec))
        if payload.x not in named or payload.y not in named:
            raise UnknownObjectSpecError(f"triple refers to unknown representations {payload.x!r}, {payload.y!r}")
        f = matrix_from_json(payload.f, ctx.field)
        return make_object(ctx, named[payload.x], named[payload.y], f, name=Path(spec).stem)
    if spec.startswith("q'") and spec[2:] in named:
        return quotient_functor_q(ctx, named[spec[2:]])
    known = ", ".join(f"q'{name}" for name in named)
    raise UnknownObjectSpecError(f"unknown object {spec!r}; known: {known} or a triple JSON file")


@click.group()
@click.option("--log-level", default=None, help="structlog level for stderr diagnostics.")
def cli(log_level: str | None) -> None:
    """Exact verification of Hopf algebra and Tannakian quotient constructions for finite groups."""
    configure_logging(log_level or Config.LOG_LEVEL)


@cli.group()
def group() -> None:
    """Group table tools."""


@group.command("validate")
@click.argument("path", type=click.Path(dir_okay=False))
@exit_codes
def group_validate(path: str) -> int:
    """Check the group axioms of a table and print a report."""
    payload = GroupPayload.model_validate(_read_json(path))
    report = group_validation_report(payload, name=Path(path).stem)
    click.echo(report.model_dump_json(indent=2))
    return 0 if report.all_passed else 1


@group.command("export")
@click.argument("name", type=click.Choice(CATALOG_NAMES, case_sensitive=False))
@exit_codes
def group_export(name: str) -> int:
    g = catalog(name)
    _emit({**group_to_payload(g), "name": g.name})
    return 0


@cli.command()
@click.option("--group", "group_spec", required=True, help="Catalog name or group JSON file.")
@click.option("--normal", "normal_spec", required=True, help="Subgroup name or subgroup JSON file.")
@click.option("--field", "field_spec", default=None, help="Q or Fp (default from TANNAKIT_DEFAULT_FIELD).")
@click.option("--suite", type=click.Choice(SUITE_NAMES), default="all", show_default=True)
@click.option("--extension", "extension_path", type=click.Path(dir_okay=False), default=None)
@click.option("--output", "output_path", type=click.Path(dir_okay=False, writable=True), default=None)
@exit_codes
def verify(
    group_spec: str,
    normal_spec: str,
    field_spec: str | None,
    suite: str,
    extension_path: str | None,
    output_path: str | None,
) -> int:
    """Run a verification suite and print its report."""
    field = FieldSpec.parse(field_spec or Config.DEFAULT_FIELD)
    g = load_group(group_spec)
    l = load_subgroup(g, normal_spec)
    extension = load_extension(extension_path, field) if extension_path else None
    report = run_suite(suite, g, l, field, extension=extension)
    text = report.model_dump_json(indent=2)
    if output_path:
        Path(output_path).write_text(text + "\n", encoding="utf-8")
    click.echo(text)
    return 0 if report.all_passed else 1


@cli.command()
@click.option("--group", "group_spec", required=True)
@click.option("--normal", "normal_spec", required=True)
@click.option("--field", "field_spec", default=None)
@click.argument("source")
@click.argument("target")
@exit_codes
def hom(group_spec: str, normal_spec: str, field_spec: str | None, source: str, target: str) -> int:
    """Dimension and echelon basis of Hom_P(SOURCE, TARGET)."""
    field = FieldSpec.parse(field_spec or Config.DEFAULT_FIELD)
    g = load_group(group_spec)
    d = make_quotient_datum(g, load_subgroup(g, normal_spec), field)
    require_etale(d)
    ctx = make_quotient_context(d)
    battery = g_battery(g, d.oG)
    a = resolve_object(ctx, source, battery)
    b = resolve_object(ctx, target, battery)
    maps = hom_space_P(ctx, a, b)
    _emit(
        {
            "source": a.name,
            "target": b.name,
            "dimension": len(maps),
            "basis": [matrix_to_json(m.matrix) for m in maps],
        }
    )
    return 0


if __name__ == "__main__":
    cli()

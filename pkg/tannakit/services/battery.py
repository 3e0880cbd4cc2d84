"""The versioned representation battery a (G, L, field) verification run works on.

G side: trivial, the sign characters (homomorphisms to {+-1}), a faithful standard
representation where the catalog defines one, and the regular comodule.
L side: trivial, the restrictions of the G side, and the regular comodule of O(L).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

import structlog

from tannakit.comod import (
    Comodule,
    ComoduleMap,
    direct_sum_comodule,
    invariants,
    quotient_comodule,
    regular_comodule,
    rep_from_matrices,
    trivial_comodule,
)
from tannakit.config import Config
from tannakit.exactlin import FieldSpec, Matrix, kernel_basis, vstack, hstack
from tannakit.groups import FiniteGroup, quaternion_product
from tannakit.hopf import HopfAlgebra
from tannakit.tannaka_functors import QuotientDatum, restrict
from tannakit.utils.numbers import cyclotomic

logger = structlog.get_logger(__name__)

_F2 = FieldSpec.prime(2)


@dataclass(frozen=True)
class Battery:
    g_side: tuple[Comodule, ...]
    l_side: tuple[Comodule, ...]
    version: str = field(default_factory=lambda: Config.BATTERY_VERSION)

    @property
    def names(self) -> list[str]:
        return [f"G:{x.name}" for x in self.g_side] + [f"L:{u.name}" for u in self.l_side]

    def g_named(self, name: str) -> Comodule | None:
        return next((x for x in self.g_side if x.name == name), None)

    def l_named(self, name: str) -> Comodule | None:
        return next((u for u in self.l_side if u.name == name), None)


def images_from_generators(g: FiniteGroup, generators: dict[int, Matrix]) -> list[Matrix]:
    """Extend generator images to every element by breadth-first products x -> x s."""
    d = next(iter(generators.values())).rows
    f = next(iter(generators.values())).field
    images: dict[int, Matrix] = {g.identity: Matrix.identity(d, f)}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, m in generators.items():
                y = g.mul(x, s)
                if y not in images:
                    images[y] = images[x] @ m
                    nxt.append(y)
        frontier = nxt
    return [images[i] for i in range(g.order)]


def sign_kernels(g: FiniteGroup) -> list[tuple[int, ...]]:
    """Kernels of the nontrivial homomorphisms G -> {+-1}, found over F_2."""
    n = g.order
    rows = []
    for x, y in product(range(n), repeat=2):
        # chi(x) + chi(y) + chi(xy) = 0
        counts: dict[int, int] = {}
        for i in (x, y, g.mul(x, y)):
            counts[i] = counts.get(i, 0) + 1
        entries = {(0, i): 1 for i, c in counts.items() if c % 2}
        rows.append(Matrix.from_entries(1, n, entries, _F2))
    homs = kernel_basis(vstack(rows))
    kernels: set[tuple[int, ...]] = set()
    for coeffs in product((0, 1), repeat=homs.cols):
        if not any(coeffs):
            continue
        chi = Matrix.zeros(n, 1, _F2)
        for c, col in zip(coeffs, homs.columns()):
            if c:
                chi = chi + col
        kernels.add(tuple(i for i in range(n) if chi[i, 0] == 0))
    return sorted(kernels)


def sign_character(g: FiniteGroup, kernel: tuple[int, ...], f: FieldSpec) -> list[Matrix]:
    members = set(kernel)
    return [Matrix.from_rows([[1 if i in members else -1]], f) for i in range(g.order)]


def companion_matrix(coefficients: tuple[int, ...], f: FieldSpec) -> Matrix:
    """Companion matrix of the monic polynomial with the given coefficients, lowest degree first."""
    m = len(coefficients) - 1
    entries: dict[tuple[int, int], int] = {(i + 1, i): 1 for i in range(m - 1)}
    for i in range(m):
        entries[(i, m - 1)] = -coefficients[i]
    return Matrix.from_entries(m, m, entries, f)


def standard_images(g: FiniteGroup, f: FieldSpec) -> list[Matrix] | None:
    """A faithful representation for catalog groups; None for others."""
    name = (g.name or "").upper()
    if name == "S3":
        r = Matrix.from_rows([[0, -1], [1, -1]], f)
        s = Matrix.from_rows([[0, 1], [1, 0]], f)
        return images_from_generators(g, {1: r, 3: s})
    if name == "D4":
        r = Matrix.from_rows([[0, -1], [1, 0]], f)
        s = Matrix.from_rows([[1, 0], [0, -1]], f)
        return images_from_generators(g, {1: r, 4: s})
    if name == "Q8":
        # left multiplication on the basis 1, i, j, k; index 4 * sign + unit
        images = []
        for x in range(8):
            entries = {}
            for u in range(4):
                sign, unit = divmod(quaternion_product(x, u), 4)
                entries[(unit, u)] = -1 if sign else 1
            images.append(Matrix.from_entries(4, 4, entries, f))
        return images
    if name.startswith("C") and name[1:].isdigit() and int(name[1:]) >= 3:
        return images_from_generators(g, {1: companion_matrix(cyclotomic(int(name[1:])), f)})
    return None


def g_battery(g: FiniteGroup, o: HopfAlgebra) -> list[Comodule]:
    f = o.field
    items = [trivial_comodule(o, 1, name="I")]
    for k, kernel in enumerate(sign_kernels(g)):
        name = "sign" if k == 0 else f"sign{k + 1}"
        items.append(rep_from_matrices(g, sign_character(g, kernel, f), algebra=o, name=name))
    std = standard_images(g, f)
    if std is not None:
        items.append(rep_from_matrices(g, std, algebra=o, name="std"))
    items.append(regular_comodule(o, name="regular"))
    return items


def build_battery(d: QuotientDatum) -> Battery:
    g_side = g_battery(d.g, d.oG)
    l_side = [trivial_comodule(d.oL, 1, name="I_L")]
    l_side += [restrict(d, x) for x in g_side]
    l_side.append(regular_comodule(d.oL, name="O(L)"))
    battery = Battery(tuple(g_side), tuple(l_side))
    logger.info("battery_built", group=str(d.g), members=len(battery.names), version=battery.version)
    return battery


def adjunction_pairs(battery: Battery, limit: int | None = None) -> list[tuple[Comodule, Comodule]]:
    """(V, U) pairs, smallest combined dimension first, capped at ``limit``."""
    limit = Config.ADJUNCTION_PAIR_LIMIT if limit is None else limit
    pairs = list(product(battery.g_side, battery.l_side))
    order = sorted(range(len(pairs)), key=lambda k: (pairs[k][0].dim + pairs[k][1].dim, k))
    return [pairs[k] for k in order[:limit]]


def split_sequence(x: Comodule, y: Comodule) -> tuple[ComoduleMap, ComoduleMap]:
    """0 -> x -> x + y -> y -> 0."""
    f = x.field
    total = direct_sum_comodule(x, y)
    inc = vstack([Matrix.identity(x.dim, f), Matrix.zeros(y.dim, x.dim, f)])
    proj = hstack([Matrix.zeros(y.dim, x.dim, f), Matrix.identity(y.dim, f)])
    return ComoduleMap(x, total, inc), ComoduleMap(total, y, proj)


def invariant_sequence(x: Comodule) -> tuple[ComoduleMap, ComoduleMap]:
    """0 -> x^inv -> x -> x / x^inv -> 0."""
    fixed, trivial = invariants(x)
    quotient, projection = quotient_comodule(x, fixed, name=f"{x.name}/inv")
    return ComoduleMap(trivial, x, fixed), projection


def short_exact_sequences(items: list[Comodule], limit: int = 4) -> Iterator[tuple[str, ComoduleMap, ComoduleMap]]:
    """Split sequences I + U and the invariant sequence of the last (regular) item."""
    unit = items[0]
    for u in items[1 : 1 + limit]:
        inc, proj = split_sequence(unit, u)
        yield f"{unit.name}+{u.name}", inc, proj
    inc, proj = invariant_sequence(items[-1])
    yield f"inv({items[-1].name})", inc, proj

"""Finite groups as validated multiplication tables.

Catalog element orderings (identity first, then generators in presentation order):

    Cn   e, a, a2, ..., a{n-1}            a^i * a^j = a^(i+j)
    S3   e, r, r2, s, sr, sr2             r^3 = s^2 = e, srs = r^-1
    D4   e, r, r2, r3, s, sr, sr2, sr3    r^4 = s^2 = e, srs = r^-1
    Q8   e, i, j, k, z, zi, zj, zk        z = -1 central, i^2 = j^2 = k^2 = ijk = z

In the dihedral groups the label s^a r^b sits at index a * n + b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

import structlog

from tannakit.config import Config
from tannakit.exceptions import (
    GroupAxiomError,
    GroupTooLargeError,
    NotNormalError,
    NotSubgroupError,
    UnknownGroupError,
)

logger = structlog.get_logger(__name__)

CATALOG_NAMES: tuple[str, ...] = tuple(f"C{n}" for n in range(1, 9)) + ("S3", "D4", "Q8")


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(j for j in range(self.order) if self.table[i][j] == e) for i in range(self.order))

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise UnknownGroupError(f"no element labelled {label!r}") from exc

    def is_abelian(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.order) for j in range(i))

    def __str__(self) -> str:
        return self.name or f"group of order {self.order}"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: object) -> bool:
        return i in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def position(self, i: int) -> int:
        """Index of the parent element ``i`` inside ``members``."""
        return self.members.index(i)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a group in its own right, elements in ``members`` order."""
        pos = {m: k for k, m in enumerate(self.members)}
        table = tuple(tuple(pos[self.parent.mul(a, b)] for b in self.members) for a in self.members)
        return FiniteGroup(
            labels=tuple(self.parent.labels[m] for m in self.members),
            table=table,
            identity=pos[self.parent.identity],
            name=self.name or f"subgroup of {self.parent}",
        )


@dataclass(frozen=True)
class QuotientGroup:
    group: FiniteGroup
    cosets: tuple[tuple[int, ...], ...]
    projection: tuple[int, ...]
    subgroup: Subgroup


def _resolve(entry: Any, labels: Sequence[str]) -> int | None:
    if isinstance(entry, bool):
        return None
    if isinstance(entry, int):
        return entry if 0 <= entry < len(labels) else None
    if isinstance(entry, str) and entry in labels:
        return labels.index(entry)
    return None


def validate_group(
    table: Sequence[Sequence[Any]],
    labels: Sequence[str],
    identity: int | str,
    *,
    name: str = "",
    max_order: int | None = None,
) -> FiniteGroup:
    """Check closure, associativity, identity and inverses, in that order.

    Table entries may be element indices or labels. The first failing axiom is raised as a
    ``GroupAxiomError`` carrying witnessing indices.
    """
    labels = list(labels)
    n = len(labels)
    limit = Config.MAX_GROUP_ORDER if max_order is None else max_order
    if n > limit:
        raise GroupTooLargeError(f"order {n} exceeds the configured maximum {limit}")
    if n == 0:
        raise GroupAxiomError("identity", (), "a group needs at least one element")

    # closure
    rows: list[list[int]] = []
    for i in range(n):
        row = table[i] if i < len(table) else []
        resolved: list[int] = []
        for j in range(n):
            value = _resolve(row[j], labels) if j < len(row) else None
            if value is None:
                raise GroupAxiomError("closure", (i, j))
            resolved.append(value)
        if len(row) != n:
            raise GroupAxiomError("closure", (i, n))
        rows.append(resolved)
    if len(table) != n:
        raise GroupAxiomError("closure", (n, 0))

    for i in range(n):
        ri = rows[i]
        for j in range(n):
            rij = rows[ri[j]]
            rj = rows[j]
            for k in range(n):
                if rij[k] != ri[rj[k]]:
                    raise GroupAxiomError("associativity", (i, j, k))

    e = _resolve(identity, labels)
    if e is None:
        raise GroupAxiomError("identity", (), f"unknown identity {identity!r}")
    for i in range(n):
        if rows[e][i] != i or rows[i][e] != i:
            raise GroupAxiomError("identity", (e, i))

    for i in range(n):
        if not any(rows[i][j] == e and rows[j][i] == e for j in range(n)):
            raise GroupAxiomError("inverses", (i,))

    group = FiniteGroup(tuple(labels), tuple(tuple(r) for r in rows), e, name=name)
    logger.debug("group_validated", order=n, name=name)
    return group


def make_subgroup(g: FiniteGroup, members: Iterable[int | str], *, name: str = "") -> Subgroup:
    idx: set[int] = set()
    for m in members:
        value = _resolve(m, g.labels)
        if value is None:
            raise NotSubgroupError(f"{m!r} is not an element of {g}")
        idx.add(value)
    if g.identity not in idx:
        raise NotSubgroupError("subgroup must contain the identity")
    for a in idx:
        if g.inv(a) not in idx:
            raise NotSubgroupError(f"missing inverse of {g.labels[a]}")
        for b in idx:
            if g.mul(a, b) not in idx:
                raise NotSubgroupError(f"not closed: {g.labels[a]} * {g.labels[b]}")
    return Subgroup(g, tuple(sorted(idx)), name=name)


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)), name=g.name)


def trivial(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,), name="C1")


def element_order(g: FiniteGroup, i: int) -> int:
    k, x = 1, i
    while x != g.identity:
        x = g.mul(x, i)
        k += 1
    return k


def cyclic_subgroup(g: FiniteGroup, i: int, *, name: str = "") -> Subgroup:
    members = {g.identity}
    x = i
    while x != g.identity:
        members.add(x)
        x = g.mul(x, i)
    return Subgroup(g, tuple(sorted(members)), name=name)


def center(g: FiniteGroup) -> Subgroup:
    members = [i for i in range(g.order) if all(g.mul(i, j) == g.mul(j, i) for j in range(g.order))]
    return Subgroup(g, tuple(members), name="center")


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    for x in range(g.order):
        xi = g.inv(x)
        for m in h.members:
            if g.mul(g.mul(x, m), xi) not in h:
                return False
    return True


def quotient_group(g: FiniteGroup, h: Subgroup) -> QuotientGroup:
    """Coset group G/H; cosets are numbered by their smallest member, identity coset first."""
    if not is_normal(g, h):
        raise NotNormalError(f"{h.name or 'subgroup'} is not normal in {g}")
    projection = [-1] * g.order
    cosets: list[tuple[int, ...]] = []
    for x in sorted(range(g.order), key=lambda i: (i != g.identity, i)):
        if projection[x] >= 0:
            continue
        coset = tuple(sorted(g.mul(x, m) for m in h.members))
        for y in coset:
            projection[y] = len(cosets)
        cosets.append(coset)
    reps = [c[0] if g.identity not in c else g.identity for c in cosets]
    table = tuple(tuple(projection[g.mul(a, b)] for b in reps) for a in reps)
    labels = tuple(g.labels[r] + (h.name or "H") if r != g.identity else g.labels[r] for r in reps)
    quotient = FiniteGroup(labels, table, 0, name=f"{g.name or 'G'}/{h.name or 'H'}")
    return QuotientGroup(quotient, tuple(cosets), tuple(projection), h)


def kernel_of_projection(q: QuotientGroup) -> Subgroup:
    members = tuple(i for i, c in enumerate(q.projection) if c == q.group.identity)
    return Subgroup(q.subgroup.parent, members, name=q.subgroup.name)


def subgroup_by_name(g: FiniteGroup, name: str) -> Subgroup:
    """Named normal-subgroup candidates.

    ``trivial``/``C1``, ``whole``, ``center``, ``A3`` (rotations of S3) and ``Cm``, the cyclic
    subgroup generated by the lowest-index element of order m.
    """
    key = name.strip()
    lowered = key.lower()
    if lowered in {"trivial", "1", "e"}:
        return trivial(g)
    if lowered in {"whole", "g", "all", (g.name or "").lower()}:
        return whole(g)
    if lowered in {"center", "centre", "z"}:
        return center(g)
    if key.upper() == "A3" and g.name == "S3":
        return Subgroup(g, (0, 1, 2), name="A3")
    if key.upper().startswith("C") and key[1:].isdigit():
        m = int(key[1:])
        for i in range(g.order):
            if element_order(g, i) == m:
                return cyclic_subgroup(g, i, name=f"C{m}")
    raise UnknownGroupError(f"no subgroup named {name!r} in {g}")


def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _dihedral_table(n: int) -> list[list[int]]:
    # s^a r^b at index a*n + b; r^b s^c = s^c r^((-1)^c b)
    def mul(x: int, y: int) -> int:
        a, b = divmod(x, n)
        c, d = divmod(y, n)
        return ((a + c) % 2) * n + ((b if c == 0 else -b) + d) % n

    return [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]


_QUATERNION_UNITS: dict[tuple[int, int], tuple[int, int]] = {
    # (unit, unit) -> (sign, unit) with units 0=1, 1=i, 2=j, 3=k
    (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}  # fmt: skip


def quaternion_product(x: int, y: int) -> int:
    """Product in Q8 with element index 4 * sign + unit."""
    sx, ux = divmod(x, 4)
    sy, uy = divmod(y, 4)
    if ux == 0:
        s, u = 0, uy
    elif uy == 0:
        s, u = 0, ux
    else:
        s, u = _QUATERNION_UNITS[(ux, uy)]
    return ((sx + sy + s) % 2) * 4 + u


def catalog(name: str) -> FiniteGroup:
    key = name.strip().upper()
    if key.startswith("C") and key[1:].isdigit() and 1 <= int(key[1:]) <= 8:
        n = int(key[1:])
        labels = ["e"] + (["a"] if n > 1 else []) + [f"a{k}" for k in range(2, n)]
        return validate_group(_cyclic_table(n), labels, 0, name=key)
    if key == "S3":
        return validate_group(_dihedral_table(3), ["e", "r", "r2", "s", "sr", "sr2"], 0, name="S3")
    if key == "D4":
        labels = ["e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"]
        return validate_group(_dihedral_table(4), labels, 0, name="D4")
    if key == "Q8":
        table = [[quaternion_product(x, y) for y in range(8)] for x in range(8)]
        return validate_group(table, ["e", "i", "j", "k", "z", "zi", "zj", "zk"], 0, name="Q8")
    raise UnknownGroupError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG_NAMES)}")


def group_to_payload(g: FiniteGroup) -> dict[str, Any]:
    return {
        "labels": list(g.labels),
        "identity": g.labels[g.identity],
        "table": [[g.labels[v] for v in row] for row in g.table],
    }

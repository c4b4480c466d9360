"""Kac diagrams of order two and the invariant subalgebras they encode."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

from .diagram import AffineDiagram, Diagram, DiagramError, automorphisms
from .rootsys import SimpleType, algebra_dim


class KacError(ValueError):
    pass


@dataclass(frozen=True)
class Painting:
    black: frozenset[int]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Painting":
        return cls(frozenset(vertices))

    def is_kac(self, ad: AffineDiagram) -> bool:
        if any(v < 0 or v >= ad.size for v in self.black):
            return False
        return ad.r * sum(ad.marks[v] for v in self.black) == 2

    def white(self, ad: AffineDiagram) -> list[int]:
        return [v for v in range(ad.size) if v not in self.black]

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.black))

    def __str__(self):
        return "{" + ",".join(map(str, self.sorted())) + "}"


_FAMILY_ORDER = "EFDBCGA"


def _normalize(family: str, rank: int) -> tuple[list[SimpleType], int]:
    """Low-rank isomorphisms; returns (simple parts, extra center)."""
    if rank < 1:
        raise KacError(f"invalid rank {rank} for {family}")
    if family in "BC" and rank == 1:
        return [SimpleType("A", 1)], 0
    if family == "B" and rank == 2:
        return [SimpleType("C", 2)], 0
    if family == "D":
        if rank == 1:
            return [], 1
        if rank == 2:
            return [SimpleType("A", 1), SimpleType("A", 1)], 0
        if rank == 3:
            return [SimpleType("A", 3)], 0
    return [SimpleType(family, rank)], 0


@dataclass(frozen=True)
class SubalgebraType:
    """Reductive subalgebra: semisimple components plus an abelian center."""

    components: tuple[SimpleType, ...]
    center: int = 0
    center_split: bool | None = field(default=None, compare=False)

    @classmethod
    def of(cls, parts: Iterable[tuple[str, int] | SimpleType], center: int = 0,
           center_split: bool | None = None) -> "SubalgebraType":
        comps: list[SimpleType] = []
        for p in parts:
            fam, rk = (p.family, p.rank) if isinstance(p, SimpleType) else p
            simple, extra = _normalize(fam, rk)
            comps += simple
            center += extra
        comps.sort(key=lambda t: (-algebra_dim(t), _FAMILY_ORDER.index(t.family), -t.rank))
        return cls(tuple(comps), center, center_split)

    @classmethod
    def parse(cls, text: str) -> "SubalgebraType":
        """Parse e.g. ``"A3+A1+C"``, ``"A_2^2+C"``, ``"D6 + B2"``."""
        parts, center = [], 0
        for tok in text.replace(" ", "").split("+"):
            if not tok:
                continue
            m = re.fullmatch(r"C(?:\^(\d+))?", tok)
            if m:
                center += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"([A-G])_?(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise KacError(f"cannot parse subalgebra component {tok!r}")
            parts += [(m.group(1), int(m.group(2)))] * int(m.group(3) or 1)
        return cls.of(parts, center)

    @property
    def dim(self) -> int:
        return sum(algebra_dim(t) for t in self.components) + self.center

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.components) + self.center

    def __str__(self):
        if not self.components and not self.center:
            return "0"
        out = []
        for t, grp in itertools.groupby(self.components):
            k = len(list(grp))
            out.append(f"{t}^{k}" if k > 1 else str(t))
        if self.center:
            out.append("C" if self.center == 1 else f"C^{self.center}")
        return "+".join(out)

    def to_json(self) -> dict:
        doc = {"components": [str(t) for t in self.components], "center": self.center,
               "dim": self.dim, "label": str(self)}
        if self.center_split is not None:
            doc["center_split"] = self.center_split
        return doc


@dataclass(frozen=True)
class RealFormLabel:
    name: str
    character: int

    def __str__(self):
        return self.name


def _component_type(dg: Diagram, comp: list[int]) -> SimpleType:
    k = len(comp)
    if k == 1:
        return SimpleType("A", 1)
    edges = [(i, j, dg.bond(i, j)) for a, i in enumerate(comp) for j in comp[a + 1:] if dg.adjacent(i, j)]
    if len(edges) != k - 1 or any(b not in (1, 2, 3) for _, _, b in edges):
        raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")
    deg = {v: 0 for v in comp}
    for i, j, _ in edges:
        deg[i] += 1
        deg[j] += 1
    multi = [e for e in edges if e[2] > 1]
    if len(multi) > 1:
        raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")
    if multi:
        i, j, b = multi[0]
        if max(deg.values()) > 2:
            raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")
        if b == 3:
            if k != 2:
                raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")
            return SimpleType("G", 2)
        if k == 2:
            return SimpleType("C", 2)
        ends = [v for v in (i, j) if deg[v] == 1]
        if not ends:
            if k == 4:
                return SimpleType("F", 4)
            raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")
        leaf = ends[0]
        other = j if leaf == i else i
        return SimpleType("B" if dg.norms[leaf] < dg.norms[other] else "C", k)
    branch = [v for v in comp if deg[v] >= 3]
    if not branch:
        return SimpleType("A", k)
    if len(branch) > 1 or deg[branch[0]] != 3:
        raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")
    c = branch[0]
    adj = {v: [w for w in comp if dg.adjacent(v, w)] for v in comp}
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return SimpleType("D", k)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return SimpleType("E", k)
    raise KacError(f"component {[dg.labels[v] for v in comp]} is not of finite type")


def classify_subdiagram(dg: Diagram, vertices: Iterable[int] | None = None) -> list[SimpleType]:
    """Simple types of the connected components of the induced subdiagram."""
    verts = list(range(dg.size)) if vertices is None else list(vertices)
    if not verts:
        return []
    return [_component_type(dg, comp) for comp in dg.components(verts)]


def canonical_painting(ad: AffineDiagram, black: Iterable[int]) -> tuple[int, ...]:
    black = list(black)
    return min(tuple(sorted(g[v] for v in black)) for g in automorphisms(ad))


def enumerate_kac(ad: AffineDiagram) -> list[Painting]:
    """Valid order-two Kac diagrams, one per orbit of the diagram automorphism group."""
    found = set()
    for size in (1, 2):
        for black in itertools.combinations(range(ad.size), size):
            if ad.r * sum(ad.marks[v] for v in black) == 2:
                found.add(canonical_painting(ad, black))
    return [Painting.of(b) for b in sorted(found, key=lambda b: (len(b), b))]


def kac_subalgebra(ad: AffineDiagram, p: Painting) -> SubalgebraType:
    if not p.is_kac(ad):
        raise KacError(f"painting {p} is not a Kac diagram: r * sum of black marks must be 2")
    try:
        parts = classify_subdiagram(ad, p.white(ad))
    except KacError as exc:
        raise DiagramError(f"internal: white subdiagram of a Kac diagram failed to classify ({exc})")
    return SubalgebraType.of(parts, len(p.black) - 1)


def _pq(family: str, p: int, q: int) -> str:
    a, b = sorted((p, q))
    return f"{family}({a},{b})"


def _classical_name(ad: AffineDiagram, black: tuple[int, ...]) -> str:
    t = ad.type
    fam, n = t.family, t.rank
    if ad.r == 2:
        if fam == "A":
            v = black[0]
            if n % 2 == 0 or (v != 0 and list(ad.quotient).count(v) == 1):
                return f"sl({n + 1},R)"
            return f"su*({n + 1})"
        if fam == "D":
            i = black[0]
            return _pq("so", 2 * i + 1, 2 * n - 2 * i - 1)
        raise KacError(f"no classical twisted naming for {t}")
    if fam == "A":
        if n == 1:
            return "sl(2,R)"
        a, b = black
        p = (b - a) % (n + 1)
        return _pq("su", p, n + 1 - p)
    if fam == "B":
        if black == (0, 1):
            return _pq("so", 2 * n - 1, 2)
        i = black[0]
        return _pq("so", 2 * i, 2 * n + 1 - 2 * i)
    if fam == "C":
        if black == (0, n):
            return f"sp({2 * n},R)"
        i = black[0]
        return _pq("sp", i, n - i)
    if fam == "D":
        if len(black) == 2:
            ends = {0: "L", 1: "L", n - 1: "R", n: "R"}
            if ends[black[0]] == ends[black[1]]:
                return _pq("so", 2 * n - 2, 2)
            return f"so*({2 * n})"
        i = black[0]
        return _pq("so", 2 * i, 2 * n - 2 * i)
    raise KacError(f"no classical naming for {t}")


def character(t: SimpleType, dim_fixed: int) -> int:
    """delta = dim p - dim k for the real form with complexified maximal compact of dimension dim_fixed."""
    return algebra_dim(t) - 2 * dim_fixed


def real_form_of_theta(ad: AffineDiagram, p: Painting) -> RealFormLabel:
    k = kac_subalgebra(ad, p)
    delta = character(ad.type, k.dim)
    if ad.type.family in "ABCD":
        name = _classical_name(ad, p.sorted())
    else:
        name = f"{ad.type.family.lower()}{ad.type.rank}({delta})"
    return RealFormLabel(name, delta)


def kac_table(ad: AffineDiagram) -> list[dict]:
    rows = []
    for p in enumerate_kac(ad):
        k = kac_subalgebra(ad, p)
        rf = real_form_of_theta(ad, p)
        rows.append({"black": list(p.sorted()), "subalgebra": str(k), "dim": k.dim,
                     "character": rf.character, "name": rf.name})
    return rows

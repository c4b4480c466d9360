"""Dynkin diagrams, affine diagrams D^r (r = 1, 2) and their symmetries.

Vertex 0 of an affine diagram is the extra vertex phi.  For r = 1 the
remaining vertices are the simple roots in Bourbaki order (vertex i is
alpha_i).  For r = 2 they are the Theta-orbits of the simple roots, ordered
by the smallest Bourbaki index in the orbit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import linalg
from .rootsys import RootSystem, SimpleType, build_root_system

SCHEMA = "vogan-lab/1"


class DiagramError(ValueError):
    pass


def _fdot(a, b) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Diagram:
    """A (possibly affine) Dynkin diagram given by its generalized Cartan matrix.

    ``cartan[i][j] = <v_i, v_j^vee>``.  ``norms`` are squared lengths, used
    only to orient multiple bonds.
    """

    labels: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]
    norms: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] != 0

    def bond(self, i: int, j: int) -> int:
        return self.cartan[i][j] * self.cartan[j][i]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.size) if self.adjacent(i, j)]

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, multiplicity) with i < j; multiplicity 4 marks the A_1 / A_2 twisted bonds."""
        return [(i, j, self.bond(i, j)) for i in range(self.size) for j in range(i + 1, self.size)
                if self.adjacent(i, j)]

    def induced(self, vertices: Sequence[int]) -> "Diagram":
        vs = list(vertices)
        return Diagram(
            labels=tuple(self.labels[v] for v in vs),
            cartan=tuple(tuple(self.cartan[a][b] for b in vs) for a in vs),
            norms=tuple(self.norms[v] for v in vs),
        )

    def components(self, vertices: Sequence[int] | None = None) -> list[list[int]]:
        left = set(range(self.size) if vertices is None else vertices)
        out = []
        while left:
            stack = [min(left)]
            comp = set(stack)
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w in left and w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            out.append(sorted(comp))
        return out


@dataclass(frozen=True)
class AffineDiagram(Diagram):
    """D^r with marks m_alpha and, for r = 2, the quotient map pi."""

    type: SimpleType = None
    r: int = 1
    marks: tuple[int, ...] = ()
    vectors: tuple[tuple[Fraction, ...], ...] = ()
    theta: tuple[int, ...] | None = None      # permutation of D's vertices 1..n (index 0 unused)
    quotient: tuple[int, ...] | None = None   # pi: D-vertex i -> D^2 vertex quotient[i]

    @property
    def n(self) -> int:
        return self.size - 1

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "affine_diagram",
            "type": self.type.family,
            "rank": self.type.rank,
            "r": self.r,
            "theta": list(self.theta) if self.theta else None,
            "marks": list(self.marks),
            "edges": [list(e) for e in self.edges()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AffineDiagram":
        if doc.get("schema") != SCHEMA:
            raise DiagramError(f"unsupported schema {doc.get('schema')!r}")
        t = SimpleType(doc["type"], int(doc["rank"]))
        if int(doc.get("r", 1)) == 1:
            ad = affine_extend(build_root_system(t))
        else:
            ad = fold_quotient(t, tuple(doc["theta"]) if doc.get("theta") else None)
        if "marks" in doc and tuple(doc["marks"]) != ad.marks:
            raise DiagramError(f"marks {doc['marks']} do not match {list(ad.marks)}")
        return ad


def _cartan_from_vectors(vectors) -> tuple[tuple[int, ...], ...]:
    rows = []
    for a in vectors:
        row = []
        for b in vectors:
            q = 2 * _fdot(a, b) / _fdot(b, b)
            if q.denominator != 1:
                raise DiagramError("non-integral Cartan entry")
            row.append(int(q))
        rows.append(tuple(row))
    return tuple(rows)


def dynkin_diagram(rs: RootSystem) -> Diagram:
    """The finite diagram D with vertex labels 1..n."""
    return Diagram(
        labels=tuple(range(1, rs.rank + 1)),
        cartan=rs.cartan,
        norms=tuple(Fraction(rs.dot(s, s)) for s in rs.simple),
    )


@lru_cache(maxsize=None)
def _affine_extend(t: SimpleType) -> AffineDiagram:
    rs = build_root_system(t)
    phi = tuple(-x for x in rs.roots[rs.highest])
    vectors = (phi,) + rs.simple
    return AffineDiagram(
        labels=tuple(range(rs.rank + 1)),
        cartan=_cartan_from_vectors(vectors),
        norms=tuple(Fraction(rs.dot(v, v)) for v in vectors),
        type=t,
        r=1,
        marks=(1,) + rs.marks,
        vectors=tuple(tuple(Fraction(x) for x in v) for v in vectors),
    )


def affine_extend(rs: RootSystem) -> AffineDiagram:
    """D^1 = D together with the lowest root phi (vertex 0, mark 1)."""
    return _affine_extend(rs.type)


def verify_marks(ad: AffineDiagram) -> bool:
    """True iff sum_alpha m_alpha * alpha vanishes (r = 1 only)."""
    if ad.r != 1:
        raise DiagramError("verify_marks applies to r = 1 diagrams, whose vertices carry roots")
    dim = len(ad.vectors[0])
    total = [sum(m * v[k] for m, v in zip(ad.marks, ad.vectors)) for k in range(dim)]
    return all(x == 0 for x in total)


def _reflect(v, x):
    c = 2 * _fdot(v, x) / _fdot(x, x)
    return tuple(a - c * b for a, b in zip(v, x))


def _closure(simple) -> list[tuple[Fraction, ...]]:
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for x in simple:
                w = _reflect(v, x)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return list(seen)


def default_theta(t: SimpleType) -> tuple[int, ...]:
    """The standard outer diagram involution of A_n, D_n or E_6 (1-indexed)."""
    n = t.rank
    if t.family == "A" and n >= 2:
        return (0,) + tuple(n + 1 - i for i in range(1, n + 1))
    if t.family == "D":
        return (0,) + tuple(range(1, n - 1)) + (n, n - 1)
    if t == SimpleType("E", 6):
        return (0, 6, 2, 5, 4, 3, 1)
    raise DiagramError(f"{t} has no outer diagram involution")


@lru_cache(maxsize=None)
def fold_quotient(t: SimpleType, theta: tuple[int, ...] | None = None) -> AffineDiagram:
    """Twisted affine diagram D^2 = pi(D) + {phi} for a diagram involution Theta of D."""
    rs = build_root_system(t)
    if theta is None:
        theta = default_theta(t)
    theta = tuple(theta)
    n = rs.rank
    if len(theta) != n + 1 or sorted(theta[1:]) != list(range(1, n + 1)):
        raise DiagramError("theta must be a permutation of 1..n (with a placeholder at index 0)")
    if all(theta[i] == i for i in range(1, n + 1)):
        raise DiagramError("theta is the identity: the fold is undefined")
    if t.family not in "ADE" or (t.family == "E" and n != 6) or (t.family == "A" and n < 2):
        raise DiagramError(f"{t} has no outer diagram involution")
    for i in range(1, n + 1):
        if theta[theta[i]] != i:
            raise DiagramError("theta is not an involution")
        for j in range(1, n + 1):
            if rs.cartan[i - 1][j - 1] != rs.cartan[theta[i] - 1][theta[j] - 1]:
                raise DiagramError("theta is not a diagram automorphism")
    orbits = []
    for i in range(1, n + 1):
        o = tuple(sorted({i, theta[i]}))
        if o not in orbits:
            orbits.append(o)
    quotient = [0] * (n + 1)
    xs = []
    for k, o in enumerate(orbits, start=1):
        for i in o:
            quotient[i] = k
        a, b = (rs.simple[i - 1] for i in (o[0], o[-1]))
        xs.append(tuple(Fraction(p + q, 2) for p, q in zip(a, b)))
    # restricted roots, their highest short root, then phi
    restricted = _closure(xs)
    gram = [[_fdot(a, b) for b in xs] for a in xs]
    k = len(xs)

    def coeff(v):
        return linalg.solve(gram, [_fdot(x, v) for x in xs])

    positive = []
    for v in restricted:
        c = coeff(v)
        if all(x >= 0 for x in c):
            positive.append((v, c))
    short = min(_fdot(v, v) for v, _ in positive)
    top_v, top_c = max(((v, c) for v, c in positive if _fdot(v, v) == short), key=lambda vc: sum(vc[1]))
    adjacent_orbit = any(len(o) == 2 and rs.cartan[o[0] - 1][o[1] - 1] != 0 for o in orbits)
    factor = 2 if adjacent_orbit else 1
    phi = tuple(-factor * x for x in top_v)
    marks = (1,) + tuple(int(factor * c) for c in top_c)
    g = 0
    for m in marks:
        g = gcd(g, m)
    assert g == 1
    vectors = (phi,) + tuple(xs)
    return AffineDiagram(
        labels=tuple(range(k + 1)),
        cartan=_cartan_from_vectors(vectors),
        norms=tuple(_fdot(v, v) for v in vectors),
        type=t,
        r=2,
        marks=marks,
        vectors=vectors,
        theta=theta,
        quotient=tuple(quotient),
    )


def automorphisms(dg: Diagram) -> list[tuple[int, ...]]:
    """All permutations g with cartan[g i][g j] == cartan[i][j], by backtracking."""
    n = dg.size
    deg = [sorted(dg.cartan[i][j] for j in range(n) if j != i and dg.cartan[i][j]) for i in range(n)]
    marks = getattr(dg, "marks", ()) or (0,) * n
    out = []
    img = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            out.append(tuple(img))
            return
        for c in range(n):
            if used[c] or deg[c] != deg[i] or marks[c] != marks[i] or dg.norms[c] != dg.norms[i]:
                continue
            if any(dg.cartan[i][j] != dg.cartan[c][img[j]] or dg.cartan[j][i] != dg.cartan[img[j]][c]
                   for j in range(i)):
                continue
            img[i] = c
            used[c] = True
            extend(i + 1)
            used[c] = False
        img[i] = -1

    extend(0)
    return out


def diagram_involutions(dg: Diagram) -> list[tuple[int, ...]]:
    """Automorphisms of order at most 2, identity first."""
    invs = [g for g in automorphisms(dg) if all(g[g[i]] == i for i in range(dg.size))]
    ident = tuple(range(dg.size))
    return sorted(invs, key=lambda g: (g != ident, g))


def compose(g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
    """(g o h)(i) = g[h[i]]."""
    return tuple(g[h[i]] for i in range(len(h)))


def inverse(g: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)

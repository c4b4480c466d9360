"""Affine Vogan diagrams (c, d) on D^1: parity, extensions, F_alpha moves, reduction
and identification of the non-extension families."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .diagram import SCHEMA, AffineDiagram, affine_extend, automorphisms, diagram_involutions
from .kac import Painting, SubalgebraType, enumerate_kac, kac_subalgebra
from .rootsys import SimpleType, build_root_system


class VoganError(ValueError):
    pass


class ParityError(VoganError):
    pass


def _check_involution(ad: AffineDiagram, d: tuple[int, ...]) -> None:
    n = ad.size
    if len(d) != n or sorted(d) != list(range(n)):
        raise VoganError(f"d must be a permutation of the {n} vertices")
    if any(d[d[i]] != i for i in range(n)):
        raise VoganError("d is not an involution")
    for i in range(n):
        for j in range(n):
            if ad.cartan[d[i]][d[j]] != ad.cartan[i][j]:
                raise VoganError("d does not preserve the diagram")


@dataclass(frozen=True)
class AffineVoganDiagram:
    diagram: AffineDiagram
    d: tuple[int, ...]
    c: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "c", frozenset(self.c))
        _check_involution(self.diagram, self.d)
        moved = [v for v in self.c if self.d[v] != v]
        if moved:
            raise VoganError(f"circled vertices {sorted(moved)} are not fixed by d")

    @classmethod
    def on(cls, t: SimpleType | str, d: Iterable[int] | None = None, c: Iterable[int] = ()) -> "AffineVoganDiagram":
        if isinstance(t, str):
            t = SimpleType.parse(t)
        ad = affine_extend(build_root_system(t))
        return cls(ad, tuple(d) if d is not None else tuple(range(ad.size)), frozenset(c))

    @property
    def fixed(self) -> list[int]:
        return [v for v in range(self.diagram.size) if self.d[v] == v]

    @property
    def is_identity(self) -> bool:
        return all(self.d[v] == v for v in range(self.diagram.size))

    def with_circles(self, c: Iterable[int]) -> "AffineVoganDiagram":
        return AffineVoganDiagram(self.diagram, self.d, frozenset(c))

    def to_json(self) -> dict:
        t = self.diagram.type
        return {"schema": SCHEMA, "kind": "affine_vogan", "type": t.family, "rank": t.rank,
                "r": self.diagram.r, "marks": list(self.diagram.marks),
                "d": list(self.d), "circled": sorted(self.c)}

    @classmethod
    def from_json(cls, doc: dict) -> "AffineVoganDiagram":
        if doc.get("schema") != SCHEMA:
            raise VoganError(f"unsupported schema {doc.get('schema')!r}")
        if int(doc.get("r", 1)) != 1:
            raise VoganError("affine Vogan diagrams are supported on D^1 only")
        v = cls.on(SimpleType(doc["type"], int(doc["rank"])), doc.get("d"), doc.get("circled", ()))
        if "marks" in doc and tuple(doc["marks"]) != v.diagram.marks:
            raise VoganError("marks do not match the diagram")
        return v


@dataclass(frozen=True)
class VoganDiagram:
    """(c, d) on the finite diagram, stored with affine indexing: d[0] == 0 and 0 not in c."""

    type: SimpleType
    d: tuple[int, ...]
    c: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.d[0] != 0 or 0 in self.c:
            raise VoganError("a Vogan diagram on D must leave vertex 0 untouched")
        AffineVoganDiagram.on(self.type, self.d, self.c)


@dataclass(frozen=True)
class Orbit:
    vertices: tuple[int, ...]
    mark: int


def orbit_set(v: AffineVoganDiagram) -> list[Orbit]:
    """Circled fixed vertices plus adjacent swapped pairs {alpha, d alpha}."""
    ad = v.diagram
    out = []
    for a in range(ad.size):
        b = v.d[a]
        if b == a and a in v.c:
            out.append(Orbit((a,), ad.marks[a]))
        elif a < b and ad.adjacent(a, b):
            out.append(Orbit((a, b), ad.marks[a]))
    return out


def parity(v: AffineVoganDiagram) -> int:
    return sum(o.mark for o in orbit_set(v)) % 2


def represents_involution(v: AffineVoganDiagram) -> bool:
    return parity(v) == 0


def extend_vogan(v: VoganDiagram) -> tuple[AffineVoganDiagram, AffineVoganDiagram]:
    """The two affine extensions (phi uncircled, phi circled); exactly one is representable."""
    plain = AffineVoganDiagram.on(v.type, v.d, v.c)
    return plain, plain.with_circles(v.c | {0})


def valid_extension(v: VoganDiagram) -> AffineVoganDiagram:
    good = [e for e in extend_vogan(v) if represents_involution(e)]
    assert len(good) == 1
    return good[0]


def enumerate_vogan(t: SimpleType) -> list[VoganDiagram]:
    ad = affine_extend(build_root_system(t))
    finite = ad.induced(range(1, ad.size))
    out = []
    for g in diagram_involutions(finite):
        d = (0,) + tuple(x + 1 for x in g)
        fixed = [i for i in range(1, ad.size) if d[i] == i]
        for mask in range(1 << len(fixed)):
            c = frozenset(fixed[k] for k in range(len(fixed)) if mask >> k & 1)
            out.append(VoganDiagram(t, d, c))
    return out


def enumerate_affine_vogan(ad: AffineDiagram) -> list[AffineVoganDiagram]:
    out = []
    for d in diagram_involutions(ad):
        fixed = [i for i in range(ad.size) if d[i] == i]
        for mask in range(1 << len(fixed)):
            out.append(AffineVoganDiagram(ad, d, frozenset(fixed[k] for k in range(len(fixed)) if mask >> k & 1)))
    return out


def f_alpha(v: AffineVoganDiagram, alpha: int) -> AffineVoganDiagram:
    """Flip the circling of every d-fixed neighbour beta with <beta, alpha^vee> odd.

    The odd test excludes exactly the longer neighbour across a double bond
    (and the A_1 quadruple bond); across a triple bond both neighbours flip.
    """
    if alpha not in v.c:
        raise VoganError(f"F_alpha needs a circled vertex; {alpha} is not circled")
    ad = v.diagram
    c = set(v.c)
    for b in ad.neighbors(alpha):
        if v.d[b] == b and ad.cartan[b][alpha] % 2:
            c ^= {b}
    return v.with_circles(c)


def closure(v: AffineVoganDiagram) -> list[AffineVoganDiagram]:
    """Breadth-first closure under all F_alpha moves."""
    seen = {v.c}
    queue = deque([v])
    out = [v]
    while queue:
        u = queue.popleft()
        for a in sorted(u.c):
            w = f_alpha(u, a)
            if w.c not in seen:
                seen.add(w.c)
                out.append(w)
                queue.append(w)
    return out


def _conj(g, c, d):
    dd = [0] * len(d)
    for i in range(len(d)):
        dd[g[i]] = g[d[i]]
    return frozenset(g[x] for x in c), tuple(dd)


def _key(c, d):
    return (len(c), tuple(sorted(c)), d)


def canonical_key(v: AffineVoganDiagram, members: list[AffineVoganDiagram] | None = None):
    members = closure(v) if members is None else members
    best = None
    for g in automorphisms(v.diagram):
        for u in members:
            k = _key(*_conj(g, u.c, u.d))
            if best is None or k < best:
                best = k
    return best


def is_extension(v: AffineVoganDiagram) -> bool:
    """Some vertex with mark 1 is fixed by d, so it can play the role of phi."""
    return any(v.diagram.marks[a] == 1 and v.d[a] == a for a in range(v.diagram.size))


# Non-extension families.  Vertex 0 is phi, vertex i is alpha_i (Bourbaki).

def _rot(n):          # cycle rotation by half a turn
    return tuple((j + (n + 1) // 2) % (n + 1) for j in range(n + 1))


def _flip(n):         # j -> n - j
    return tuple(n - j for j in range(n + 1))


def _swap01(n):
    return (1, 0) + tuple(range(2, n + 1))


def _swap_both(n):
    return (1, 0) + tuple(range(2, n - 1)) + (n, n - 1)


def _e7_flip(n):
    return (7, 6, 2, 5, 4, 3, 1, 0)


def _T(*parts, center=0):
    return SubalgebraType.of(parts, center)


@dataclass(frozen=True)
class Family:
    id: str
    family: str
    applies: Callable[[int], bool]
    d: Callable[[int], tuple[int, ...]]
    circles: Callable[[int], list[tuple[int | None, frozenset[int]]]]
    answer: Callable[[int, int | None], SubalgebraType]
    symplectic: bool = False
    note: str = field(default="", compare=False)


def _none(n):
    return [(None, frozenset())]


CATALOG: tuple[Family, ...] = (
    # sigma swaps the two halves of the cycle; fixed algebra s(gl_m+1 x gl_m+1)
    Family("a", "A", lambda n: n >= 3 and n % 2 == 1, _rot, _none,
           lambda n, m: _T(("A", (n - 1) // 2), ("A", (n - 1) // 2), center=1), symplectic=True,
           note="rotation of the cycle by (n+1)/2"),
    # reflection without fixed vertices: X -> -J X^T J with J symmetric
    Family("b", "A", lambda n: n >= 3 and n % 2 == 1, _flip, _none,
           lambda n, m: _T(("D", (n + 1) // 2)), note="alpha_j -> alpha_{n-j}"),
    # e_1 -> -e_1; the short root e_n circled
    Family("c", "B", lambda n: n >= 2, _swap01, lambda n: [(n, frozenset({n}))],
           lambda n, m: _T(("B", n - 1), center=1), symplectic=True, note="phi <-> alpha_1, alpha_n circled"),
    Family("d", "B", lambda n: n >= 2, _swap01, lambda n: [(m, frozenset({m})) for m in range(2, n)],
           lambda n, m: _T(("D", n - m + 1), ("B", m - 1)), note="phi <-> alpha_1, alpha_m circled"),
    Family("e", "B", lambda n: n >= 2, _swap01, _none,
           lambda n, m: _T(("D", n)), note="phi <-> alpha_1, no circles"),
    Family("f", "C", lambda n: n >= 3 and n % 2 == 1, _flip, _none,
           lambda n, m: _T(("A", n - 1), center=1), symplectic=True, note="alpha_j -> alpha_{n-j}, n odd"),
    Family("g", "C", lambda n: n >= 2 and n % 2 == 0, _flip, lambda n: [(n // 2, frozenset({n // 2}))],
           lambda n, m: _T(("A", n - 1), center=1), symplectic=True, note="alpha_j -> alpha_{n-j}, middle circled"),
    Family("h", "C", lambda n: n >= 2 and n % 2 == 0, _flip, _none,
           lambda n, m: _T(("C", n // 2), ("C", n // 2)), note="alpha_j -> alpha_{n-j}, middle uncircled"),
    Family("i", "D", lambda n: n >= 5 and n % 2 == 1, _flip, _none,
           lambda n, m: _T(("B", (n - 1) // 2), ("B", (n - 1) // 2)), note="alpha_j -> alpha_{n-j}, n odd"),
    Family("j", "D", lambda n: n >= 4 and n % 2 == 0, _flip, lambda n: [(n // 2, frozenset({n // 2}))],
           lambda n, m: _T(("D", n // 2), ("D", n // 2)), note="alpha_j -> alpha_{n-j}, middle circled"),
    Family("k", "D", lambda n: n >= 4 and n % 2 == 0, _flip, _none,
           lambda n, m: _T(("A", n - 1), center=1), symplectic=True, note="alpha_j -> alpha_{n-j}, middle uncircled"),
    # e_1 -> -e_1 and e_n -> -e_n
    Family("l", "D", lambda n: n >= 4, _swap_both, _none,
           lambda n, m: _T(("D", n - 1), center=1), symplectic=True, note="(phi alpha_1)(alpha_{n-1} alpha_n)"),
    Family("m", "D", lambda n: n >= 4, _swap_both, lambda n: [(m, frozenset({m})) for m in range(2, n - 1)],
           lambda n, m: _T(("D", m), ("D", n - m)), note="(phi alpha_1)(alpha_{n-1} alpha_n), alpha_m circled"),
    Family("n", "E", lambda n: n == 7, _e7_flip, _none,
           lambda n, m: _T(("E", 6), center=1), symplectic=True, note="E7 diagram flip"),
    Family("o", "E", lambda n: n == 7, _e7_flip, lambda n: [(2, frozenset({2}))],
           lambda n, m: _T(("A", 7)), note="E7 diagram flip, alpha_2 circled"),
    Family("p", "E", lambda n: n == 7, _e7_flip, lambda n: [(4, frozenset({4}))],
           lambda n, m: _T(("A", 7)), note="E7 diagram flip, alpha_4 circled"),
)

FAMILIES = {f.id: f for f in CATALOG}
SYMPLECTIC_FAMILIES = tuple(f.id for f in CATALOG if f.symplectic)


def catalog_instances(t: SimpleType) -> list[tuple[Family, int | None, AffineVoganDiagram]]:
    out = []
    for fam in CATALOG:
        if fam.family != t.family or not fam.applies(t.rank):
            continue
        for m, c in fam.circles(t.rank):
            out.append((fam, m, AffineVoganDiagram.on(t, fam.d(t.rank), c)))
    return out


def catalog_diagram(family_id: str, n: int, m: int | None = None) -> AffineVoganDiagram:
    fam = FAMILIES[family_id]
    t = SimpleType(fam.family, n)
    if not fam.applies(n):
        raise VoganError(f"family {family_id} does not exist in rank {n}")
    for mm, c in fam.circles(n):
        if mm == m or len(fam.circles(n)) == 1:
            return AffineVoganDiagram.on(t, fam.d(n), c)
    raise VoganError(f"family {family_id} has no parameter m = {m} in rank {n}")


@dataclass(frozen=True)
class CanonicalClass:
    family_id: str                       # "a".."p", "extension" or "trivial"
    rank: int
    m: int | None
    circled: tuple[int, ...]
    d: tuple[int, ...]

    def to_json(self) -> dict:
        return {"family": self.family_id, "rank": self.rank, "m": self.m,
                "circled": list(self.circled), "d": list(self.d)}


def _require_parity(v):
    if not represents_involution(v):
        raise ParityError("parity rule violated: the orbit-mark sum is odd, "
                          "so the diagram does not represent an involution")


def _match_catalog(v: AffineVoganDiagram, key) -> tuple[Family, int | None] | None:
    for fam, m, inst in catalog_instances(v.diagram.type):
        if canonical_key(inst) == key:
            return fam, m
    return None


def reduce_canonical(v: AffineVoganDiagram) -> CanonicalClass:
    _require_parity(v)
    members = closure(v)
    key = canonical_key(v, members)
    n = v.diagram.type.rank
    if v.is_identity and any(not u.c for u in members):
        return CanonicalClass("trivial", n, None, key[1], key[2])
    if is_extension(v):
        return CanonicalClass("extension", n, None, key[1], key[2])
    hit = _match_catalog(v, key)
    if hit is None:
        raise VoganError(f"internal: non-extension class {key} missing from the catalog")
    fam, m = hit
    return CanonicalClass(fam.id, n, m, key[1], key[2])


def _outer_by_dimension(v: AffineVoganDiagram) -> SubalgebraType:
    from .chevalley import eigenspace_dims, realize_sigma
    from .diagram import fold_quotient

    plus, _ = eigenspace_dims(realize_sigma(v))
    tw = fold_quotient(v.diagram.type)
    hits = {kac_subalgebra(tw, p) for p in enumerate_kac(tw) if kac_subalgebra(tw, p).dim == plus}
    if len(hits) != 1:
        raise VoganError(f"internal: outer involution with fixed dim {plus} matches {len(hits)} twisted Kac diagrams")
    return hits.pop()


def classify(v: AffineVoganDiagram) -> SubalgebraType:
    """Complexified invariant subalgebra L^sigma of the involution represented by v."""
    _require_parity(v)
    t = v.diagram.type
    if v.is_identity:
        members = closure(v)
        if any(not u.c for u in members):
            return SubalgebraType.of([t])
        marks = v.diagram.marks
        for u in sorted(members, key=lambda u: (len(u.c), sorted(u.c))):
            if sum(marks[a] for a in u.c) == 2:
                return kac_subalgebra(v.diagram, Painting(u.c))
        raise VoganError("internal: no Kac diagram in the F_alpha class")
    if is_extension(v):
        return _outer_by_dimension(v)
    cls = reduce_canonical(v)
    fam = FAMILIES[cls.family_id]
    return fam.answer(t.rank, cls.m)

"""Root systems of the complex simple Lie algebras.

Roots are integer vectors in an ambient lattice.  Classical types use the
usual e_i coordinates; E and F types carry half-integral coordinates, so
their vectors are stored doubled (``scale == 2``).  Simple roots follow the
Bourbaki ordering.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from . import linalg

Vec = tuple[int, ...]


class InvalidTypeError(ValueError):
    pass


_RANK_RULES = {
    "A": (lambda n: n >= 1, "A_n requires n >= 1"),
    "B": (lambda n: n >= 2, "B_n requires n >= 2"),
    "C": (lambda n: n >= 2, "C_n requires n >= 2"),
    "D": (lambda n: n >= 3, "D_n requires n >= 3"),
    "E": (lambda n: n in (6, 7, 8), "E_n requires n in {6, 7, 8}"),
    "F": (lambda n: n == 4, "F_n requires n = 4"),
    "G": (lambda n: n == 2, "G_n requires n = 2"),
}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise InvalidTypeError(f"unknown family {self.family!r}; expected one of A-G")
        ok, msg = _RANK_RULES[self.family]
        if not isinstance(self.rank, int) or not ok(self.rank):
            raise InvalidTypeError(f"invalid rank {self.rank!r}: {msg}")

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip().replace("_", "")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _dot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b))


def _e(n: int, *pairs: tuple[int, int]) -> Vec:
    v = [0] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def _classical(family: str, n: int) -> tuple[list[Vec], list[Vec]]:
    if family == "A":
        dim = n + 1
        roots = [_e(dim, (i, 1), (j, -1)) for i in range(dim) for j in range(dim) if i != j]
        simple = [_e(dim, (i, 1), (i + 1, -1)) for i in range(n)]
        return roots, simple
    roots = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            roots.append(_e(n, (i, si), (j, sj)))
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    if family == "B":
        roots += [_e(n, (i, s)) for i in range(n) for s in (1, -1)]
        simple.append(_e(n, (n - 1, 1)))
    elif family == "C":
        roots += [_e(n, (i, 2 * s)) for i in range(n) for s in (1, -1)]
        simple.append(_e(n, (n - 1, 2)))
    else:
        simple.append(_e(n, (n - 2, 1), (n - 1, 1)))
    return roots, simple


def _e8_roots() -> list[Vec]:
    # doubled coordinates
    roots = []
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in itertools.product((2, -2), repeat=2):
            roots.append(_e(8, (i, si), (j, sj)))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(signs))
    return roots


def _exceptional(family: str, n: int) -> tuple[list[Vec], list[Vec]]:
    if family == "E":
        e8_simple = [(1, -1, -1, -1, -1, -1, -1, 1), _e(8, (0, 2), (1, 2))]
        e8_simple += [_e(8, (i - 1, -2), (i, 2)) for i in range(1, 7)]
        roots = _e8_roots()
        if n <= 7:
            roots = [r for r in roots if r[6] + r[7] == 0]  # orthogonal to e7+e8
        if n == 6:
            roots = [r for r in roots if r[5] - r[6] == 0]  # orthogonal to e6-e7
        return roots, e8_simple[:n]
    if family == "F":
        roots = [_e(4, (i, s)) for i in range(4) for s in (2, -2)]
        for i, j in itertools.combinations(range(4), 2):
            for si, sj in itertools.product((2, -2), repeat=2):
                roots.append(_e(4, (i, si), (j, sj)))
        roots += [tuple(s) for s in itertools.product((1, -1), repeat=4)]
        simple = [(0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 0, 2), (1, -1, -1, -1)]
        return roots, simple
    # G2 inside the plane x+y+z = 0
    roots = []
    for i, j in itertools.permutations(range(3), 2):
        roots.append(_e(3, (i, 1), (j, -1)))
    for i in range(3):
        for s in (1, -1):
            v = [-s] * 3
            v[i] = 2 * s
            roots.append(tuple(v))
    simple = [(1, -1, 0), (-2, 1, 1)]
    return roots, simple


@dataclass(frozen=True)
class RootSystem:
    """All roots of one simple type.

    ``roots`` lists the positive roots (sorted by height) followed by their
    negatives in the same order, so ``roots[i + npos] == -roots[i]``.
    ``coeffs[i]`` is the expansion of ``roots[i]`` in the simple roots.
    """

    type: SimpleType
    scale: int
    simple: tuple[Vec, ...]
    roots: tuple[Vec, ...]
    coeffs: tuple[Vec, ...]
    index: dict = field(repr=False, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def npos(self) -> int:
        return len(self.roots) // 2

    @property
    def positive(self) -> tuple[Vec, ...]:
        return self.roots[: self.npos]

    @property
    def dim(self) -> int:
        return self.rank + len(self.roots)

    def height(self, i: int) -> int:
        return sum(self.coeffs[i])

    def dot(self, a: Vec, b: Vec) -> int:
        """Inner product in scaled coordinates (true value times scale**2)."""
        return _dot(a, b)

    def find(self, coeff: Vec) -> int | None:
        """Index of the root with the given simple-root expansion, or None."""
        return self.index.get(tuple(coeff))

    def vector(self, coeff) -> Vec:
        out = [0] * len(self.simple[0])
        for c, s in zip(coeff, self.simple):
            for k, x in enumerate(s):
                out[k] += c * x
        return tuple(out)

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_dot(a, b) for b in self.simple) for a in self.simple)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """a_ij = <alpha_i, alpha_j^vee>."""
        g = self.gram
        n = self.rank
        return tuple(tuple(2 * g[i][j] // g[j][j] for j in range(n)) for i in range(n))

    def cdot(self, a: Vec, b: Vec) -> int:
        """Inner product of two coefficient vectors (scaled)."""
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def norm(self, i: int) -> int:
        return _dot(self.roots[i], self.roots[i])

    def neg(self, i: int) -> int:
        return i + self.npos if i < self.npos else i - self.npos

    @cached_property
    def highest(self) -> int:
        return max(range(self.npos), key=lambda i: (self.height(i), self.coeffs[i]))

    @cached_property
    def marks(self) -> tuple[int, ...]:
        """Coefficients of the highest root in the simple roots."""
        return self.coeffs[self.highest]

    def to_json(self) -> dict:
        return {
            "type": self.type.family,
            "rank": self.rank,
            "scale": self.scale,
            "simple": [list(s) for s in self.simple],
            "positive": [list(r) for r in self.positive],
        }


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType) -> RootSystem:
    if t.family in "ABCD":
        roots, simple = _classical(t.family, t.rank)
        scale = 1
    else:
        roots, simple = _exceptional(t.family, t.rank)
        scale = 1 if t.family == "G" else 2
    gram = [[_dot(a, b) for b in simple] for a in simple]
    coeffs = {}
    for r in roots:
        rhs = [_dot(s, r) for s in simple]
        c = linalg.solve(gram, rhs)
        if any(x.denominator != 1 for x in c):
            raise AssertionError(f"root {r} not in the simple-root lattice")
        coeffs[r] = tuple(int(x) for x in c)
    pos = [r for r in roots if all(x >= 0 for x in coeffs[r])]
    if 2 * len(pos) != len(roots):
        raise AssertionError("positive roots do not make up half the system")
    pos.sort(key=lambda r: (sum(coeffs[r]), coeffs[r]))
    ordered = pos + [tuple(-x for x in r) for r in pos]
    cf = tuple(coeffs[r] for r in ordered)
    return RootSystem(
        type=t,
        scale=scale,
        simple=tuple(simple),
        roots=tuple(ordered),
        coeffs=cf,
        index={c: i for i, c in enumerate(cf)},
    )


def lowest_root(rs: RootSystem) -> Vec:
    """The lowest root phi = -(highest root), as an ambient vector."""
    return tuple(-x for x in rs.roots[rs.highest])


def algebra_dim(t: SimpleType) -> int:
    return build_root_system(t).dim

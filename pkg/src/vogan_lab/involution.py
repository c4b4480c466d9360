"""Dimension engine: the root involution d, Delta^d and its sign partition,
dim L^sigma, the character, and disambiguation of L^sigma from its dimension."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .chevalley import SignPartition, root_permutation, vertex_images
from .diagram import fold_quotient
from .kac import SubalgebraType, character, enumerate_kac, kac_subalgebra
from .diagram import affine_extend
from .rootsys import RootSystem, SimpleType, algebra_dim, build_root_system

__all__ = [
    "RootInvolution", "delta_fixed", "span_dim", "dim_invariant", "character",
    "Context", "disambiguate", "inventory", "is_inner", "embeds",
]


class InvolutionError(ValueError):
    pass


@dataclass(frozen=True)
class RootInvolution:
    """Linear involution of the root lattice given by a permutation d of D^1."""

    rs: RootSystem
    d: tuple[int, ...]
    perm: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        try:
            perm = root_permutation(self.rs, vertex_images(self.rs, self.d))
        except RuntimeError as exc:
            raise InvolutionError(str(exc)) from None
        if any(perm[perm[k]] != k for k in range(len(perm))):
            raise InvolutionError("d does not square to the identity on the roots")
        object.__setattr__(self, "perm", tuple(perm))

    def __call__(self, k: int) -> int:
        return self.perm[k]


def delta_fixed(rs: RootSystem, d: RootInvolution) -> tuple[list[int], list[int]]:
    """(Delta^d, Delta minus Delta^d) as root indices."""
    fixed = [k for k in range(len(rs.roots)) if d(k) == k]
    moved = [k for k in range(len(rs.roots)) if d(k) != k]
    return fixed, moved


def span_dim(rs: RootSystem, roots: Iterable[int]) -> int:
    rows = [rs.coeffs[k] for k in roots]
    return linalg.rank(rows, rs.rank) if rows else 0


def dim_invariant(rs: RootSystem, d: RootInvolution, signs: SignPartition) -> int:
    """dim <Delta^d> + |Delta^d_1| + |Delta - Delta^d| / 2."""
    fixed, moved = delta_fixed(rs, d)
    if set(signs.plus) | set(signs.minus) != set(fixed) or set(signs.plus) & set(signs.minus):
        raise InvolutionError("sign partition does not partition Delta^d")
    span = span_dim(rs, fixed)
    value = span + len(signs.plus) + len(moved) // 2
    fixed_pos = [k for k in fixed if k < rs.npos]
    if span_dim(rs, fixed_pos) == len(fixed_pos):
        assert value == len(signs.plus) + len(rs.roots) // 2
    return value


def is_inner(rs: RootSystem, d: Sequence[int]) -> bool:
    """Whether the lattice map of d lies in the Weyl group.

    The image of the simple system is a base; reflect it back to the simple
    system and test whether the induced diagram permutation is trivial.
    """
    n = rs.rank
    base = [list(v) for v in vertex_images(rs, d)]
    cart = rs.cartan
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for _ in range(len(rs.roots) + 1):
        # coordinates of each simple root in the current base
        mat = [[base[i][j] for i in range(n)] for j in range(n)]
        neg = None
        for j in range(n):
            coords = linalg.solve(mat, simple[j])
            if sum(coords) < 0:
                neg = j
                break
        if neg is None:
            break
        for b in base:
            pair = sum(b[k] * cart[k][neg] for k in range(n))
            b[neg] -= pair
    else:
        raise InvolutionError("Weyl reduction did not terminate")
    return all(tuple(base[i]) == simple[i] for i in range(n))


# ---------------------------------------------------------------------------
# disambiguation

_ORTH = {"A": lambda k: 3 if k == 1 else 6 if k == 3 else 2 * (k + 1), "B": lambda k: 2 * k + 1,
         "C": lambda k: 4 * k, "D": lambda k: 2 * k, "E": {6: 54, 7: 112, 8: 248}.get,
         "F": lambda k: 26, "G": lambda k: 7}
_SYMP = {"A": lambda k: 2 if k == 1 else 2 * (k + 1), "B": lambda k: 2 * (2 * k + 1),
         "C": lambda k: 2 * k, "D": lambda k: 4 * k, "E": {6: 54, 7: 56, 8: 496}.get,
         "F": lambda k: 52, "G": lambda k: 14}
_LIN = {"A": lambda k: k + 1, "B": lambda k: 2 * k + 1, "C": lambda k: 2 * k, "D": lambda k: 2 * k,
        "E": {6: 27, 7: 56, 8: 248}.get, "F": lambda k: 26, "G": lambda k: 7}


def min_faithful_dim(t: SimpleType) -> int:
    return _LIN[t.family](t.rank)


def _fits(parts: Sequence[SimpleType], target: SimpleType) -> bool:
    if not parts:
        return True
    if sum(p.rank for p in parts) > target.rank or sum(algebra_dim(p) for p in parts) > algebra_dim(target):
        return False
    if len(parts) == 1 and parts[0] == target:
        return True
    table = {"A": _LIN, "B": _ORTH, "D": _ORTH, "C": _SYMP}.get(target.family)
    if table is None:
        # exceptional target: proper semisimple subalgebras have smaller dimension
        return sum(algebra_dim(p) for p in parts) < algebra_dim(target)
    size = {"A": target.rank + 1, "B": 2 * target.rank + 1, "C": 2 * target.rank, "D": 2 * target.rank}[target.family]
    return sum(table[p.family](p.rank) for p in parts) <= size


def embeds(x: SubalgebraType, target: SubalgebraType) -> bool:
    """Sufficient-dimension test for x being a subalgebra of target.

    Each simple component of x is assigned to one simple factor of target,
    and every factor must hold its load through a faithful representation of
    the matching kind (linear, orthogonal, symplectic).
    """
    if x.rank > target.rank or x.dim > target.dim:
        return False
    comps, factors = list(x.components), list(target.components)
    if not comps:
        return True
    if not factors:
        return False
    for assign in itertools.product(range(len(factors)), repeat=len(comps)):
        loads = [[c for c, a in zip(comps, assign) if a == f] for f in range(len(factors))]
        if all(_fits(load, f) for load, f in zip(loads, factors)):
            return True
    return False


@dataclass(frozen=True)
class Context:
    """Structural evidence about L^sigma.

    forbids: simple algebras L^sigma cannot contain.
    embeds_into: an algebra L^sigma must be a subalgebra of.
    excludes: subalgebra types ruled out outright.
    """

    forbids: tuple[SimpleType, ...] = ()
    embeds_into: SubalgebraType | None = None
    excludes: tuple[SubalgebraType, ...] = ()

    @classmethod
    def stabilization(cls, t: SimpleType) -> "Context":
        """D_n^sigma sits inside D_{n+2}^sigma = A_{n+1} + C."""
        return cls(embeds_into=SubalgebraType.of([("A", t.rank + 1)], 1))


def inventory(t: SimpleType) -> list[SubalgebraType]:
    """Every L^sigma over all non-trivial involutions of L, without repetition."""
    out = []
    ads = [affine_extend(build_root_system(t))]
    if t.family in "AD" and not (t.family == "A" and t.rank < 2) or t == SimpleType("E", 6):
        ads.append(fold_quotient(t))
    for ad in ads:
        for p in enumerate_kac(ad):
            k = kac_subalgebra(ad, p)
            if k not in out:
                out.append(k)
    return out


def _so(n: int) -> SubalgebraType:
    return SubalgebraType.of([("D", n // 2)] if n % 2 == 0 else [("B", (n - 1) // 2)])


def _plus(a: SubalgebraType, b: SubalgebraType) -> SubalgebraType:
    return SubalgebraType.of(a.components + b.components, a.center + b.center)


def disambiguate(t: SimpleType, dim_fixed: int, context: Context | None = None
                 ) -> SubalgebraType | tuple[SubalgebraType, ...]:
    """L^sigma from dim L^sigma, using context rules when the dimension is not enough.

    Returns a single SubalgebraType, or a tuple of the remaining candidates.
    """
    if dim_fixed == algebra_dim(t):
        return SubalgebraType.of([t])
    cands = [k for k in inventory(t) if k.dim == dim_fixed]
    if not cands:
        raise InvolutionError(f"no involution of {t} has a fixed algebra of dimension {dim_fixed}")
    n = t.rank
    if t.family == "A" and 2 * dim_fixed == n * n + n and _so(n + 1) in cands:
        return _so(n + 1)
    if t.family == "D" and dim_fixed == n * n - n and _plus(_so(n), _so(n)) in cands:
        return _plus(_so(n), _so(n))
    if context is not None:
        keep = []
        for k in cands:
            if any(embeds(SubalgebraType.of([f]), k) for f in context.forbids):
                continue
            if context.embeds_into is not None and not embeds(k, context.embeds_into):
                continue
            if k in context.excludes:
                continue
            keep.append(k)
        if not keep:
            raise InvolutionError(f"context rules eliminate every candidate of dimension {dim_fixed}")
        cands = keep
    if len(cands) == 1:
        return cands[0]
    return tuple(sorted(cands, key=str))

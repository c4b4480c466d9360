"""Double Vogan diagrams (p, c, d) and symplectic symmetric pairs.

A double Vogan diagram superimposes a Kac diagram p (the Cartan involution
theta of a real form g) with an affine Vogan diagram (c, d) (a second
involution sigma commuting with theta).  The pair (g, g^sigma) is symplectic
when z(g^sigma) is nonzero, and non-pseudo-Hermitian when that center is
split, i.e. theta = -1 on z(L^sigma).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable

from .chevalley import (
    LinearInvolution, OracleError, acts_as_minus_one_on_center, ambient_images, build_chevalley,
    center_of_fixed, eigenspace_dims, involutions_from_images, realize_kac, realize_sigma,
)
from .diagram import SCHEMA, AffineDiagram, affine_extend, fold_quotient
from .kac import Painting, RealFormLabel, SubalgebraType, real_form_of_theta
from .rootsys import SimpleType, build_root_system
from .vogan import (
    SYMPLECTIC_FAMILIES, AffineVoganDiagram, VoganDiagram, VoganError, catalog_instances, classify,
    is_extension, represents_involution, valid_extension,
)


class SymplecticError(ValueError):
    pass


class UnsupportedDiagram(SymplecticError):
    """Twisted diagrams outside the two d != 1 families and the even-sum d = 1 case."""


@dataclass(frozen=True)
class DoubleVoganDiagram:
    diagram: AffineDiagram
    p: Painting
    d: tuple[int, ...]
    c: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "c", frozenset(self.c))

    @property
    def r(self) -> int:
        return self.diagram.r

    @property
    def type(self) -> SimpleType:
        return self.diagram.type

    @property
    def is_identity(self) -> bool:
        return all(self.d[v] == v for v in range(self.diagram.size))

    def vogan(self) -> AffineVoganDiagram:
        return AffineVoganDiagram(self.diagram, self.d, self.c)

    def to_json(self) -> dict:
        t = self.diagram.type
        return {"schema": SCHEMA, "kind": "double_vogan", "type": t.family, "rank": t.rank,
                "r": self.r, "marks": list(self.diagram.marks), "black": list(self.p.sorted()),
                "d": list(self.d), "circled": sorted(self.c)}

    @classmethod
    def from_json(cls, doc: dict) -> "DoubleVoganDiagram":
        if doc.get("schema") != SCHEMA:
            raise SymplecticError(f"unsupported schema {doc.get('schema')!r}")
        t = SimpleType(doc["type"], int(doc["rank"]))
        ad = affine_extend(build_root_system(t)) if int(doc.get("r", 1)) == 1 else fold_quotient(t)
        if "marks" in doc and tuple(doc["marks"]) != ad.marks:
            raise SymplecticError("marks do not match the diagram")
        d = tuple(doc.get("d") or range(ad.size))
        return cls(ad, Painting.of(doc.get("black", ())), d, frozenset(doc.get("circled", ())))


@dataclass(frozen=True)
class InvolutionClass:
    inner_outer: str        # "inner" or "outer"
    hermitian: bool
    equal_rank: bool


def involution_class(ad: AffineDiagram, p: Painting) -> InvolutionClass:
    """Type of the Cartan involution encoded by a Kac diagram."""
    if not p.is_kac(ad):
        raise SymplecticError(f"painting {p} is not a Kac diagram")
    if ad.r == 2:
        return InvolutionClass("outer", False, False)
    return InvolutionClass("inner", len(p.black) == 2, True)


@dataclass(frozen=True)
class SymmetricPair:
    g: RealFormLabel
    h: SubalgebraType
    h_name: str
    symplectic: bool
    pseudo_hermitian: bool
    non_pseudo_hermitian: bool
    family: str
    diagram: DoubleVoganDiagram = field(compare=False)
    derived_name: bool = False
    oracle: dict | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        doc = {
            "g": self.g.name, "h": self.h_name, "h_complex": str(self.h), "h_dim": self.h.dim,
            "symplectic": self.symplectic, "pseudoHermitian": self.pseudo_hermitian,
            "nonPseudoHermitian": self.non_pseudo_hermitian,
            "familyId": self.family, "r": self.diagram.r,
            "painting": list(self.diagram.p.sorted()), "circling": sorted(self.diagram.c),
            "d": list(self.diagram.d), "derivedName": self.derived_name,
        }
        if self.oracle is not None:
            doc["oracle"] = self.oracle
        return doc


# ---------------------------------------------------------------------------
# diagram-level operations

def validate_double(dv: DoubleVoganDiagram) -> bool:
    ad = dv.diagram
    if not dv.p.is_kac(ad):
        return False
    try:
        dv.vogan()
    except VoganError:
        return False
    return all((dv.d[v] in dv.p.black) == (v in dv.p.black) for v in range(ad.size))


def _require_valid(dv: DoubleVoganDiagram) -> None:
    if not validate_double(dv):
        raise SymplecticError("invalid double Vogan diagram: p must be a Kac diagram preserved by d, "
                              "and c must circle d-fixed vertices")


def associate(dv: DoubleVoganDiagram) -> DoubleVoganDiagram:
    """Same p and d; circles toggled on the d-fixed black vertices."""
    _require_valid(dv)
    flip = {v for v in dv.p.black if dv.d[v] == v}
    return replace(dv, c=dv.c ^ flip)


def pi_inverse_circling(ad: AffineDiagram, c: Iterable[int]) -> frozenset[int]:
    """Circling on D (vertices 1..n) whose images under the quotient map are circled."""
    if ad.r != 2:
        raise SymplecticError("the pullback circling needs a twisted diagram")
    c = set(c)
    return frozenset(i for i in range(1, len(ad.quotient)) if ad.quotient[i] in c)


def twisted_circling_represents(c: Iterable[int], marks: Iterable[int]) -> bool:
    marks = list(marks)
    return sum(marks[x] for x in c) % 2 == 0


def inner_twisted_circling(ad: AffineDiagram, c: Iterable[int]) -> bool:
    """Even circled mark sum and a pullback {alpha, beta} of mark-1 roots in one fiber."""
    c = frozenset(c)
    if not twisted_circling_represents(c, ad.marks):
        return False
    pre = sorted(pi_inverse_circling(ad, c))
    if len(pre) != 2:
        return False
    finite = affine_extend(build_root_system(ad.type)).marks
    a, b = pre
    return finite[a] == finite[b] == 1 and ad.quotient[a] == ad.quotient[b]


# The two twisted families with d != 1.  tw_a: A_{N-1}, N even, black middle
# vertex, d swapping phi and x_1.  tw_d: D_n, n odd, black middle vertex, the
# flip of D^2.

def _outer_kind(dv: DoubleVoganDiagram) -> str | None:
    t, ad = dv.type, dv.diagram
    if dv.r != 2 or dv.is_identity:
        return None
    if t.family == "A" and t.rank % 2 == 1:
        l = (t.rank + 1) // 2
        if dv.d == (1, 0) + tuple(range(2, ad.size)) and dv.p.black == {l}:
            return "tw_a"
    if t.family == "D" and t.rank % 2 == 1 and t.rank >= 5:
        m = (t.rank - 1) // 2
        if dv.d == tuple(reversed(range(ad.size))) and dv.p.black == {m}:
            return "tw_d"
    return None


def _tw_a_p(dv: DoubleVoganDiagram) -> int:
    """p for the pair sl(p)+sl(q)+C; raises outside the supported circlings."""
    l = (dv.type.rank + 1) // 2
    if l in dv.c or len(dv.c) > 1:
        raise UnsupportedDiagram(f"circling {sorted(dv.c)} does not represent an inner involution "
                                 "of the form handled for this family")
    if not dv.c:
        return 1
    (i,) = dv.c
    return 2 * i - 1


def _pullback_vogan(dv: DoubleVoganDiagram) -> AffineVoganDiagram:
    pre = pi_inverse_circling(dv.diagram, dv.c)
    n = dv.type.rank
    return valid_extension(VoganDiagram(dv.type, tuple(range(n + 1)), pre))


def sigma_of_double(dv: DoubleVoganDiagram) -> SubalgebraType:
    """Complexified invariant subalgebra L^sigma of the second involution."""
    _require_valid(dv)
    if dv.r == 1:
        return classify(dv.vogan())
    t = dv.type
    if dv.is_identity:
        if not twisted_circling_represents(dv.c, dv.diagram.marks):
            raise UnsupportedDiagram("odd circled mark sum on D^2 with d = 1: sigma is outer "
                                     "and not covered by the pullback rule")
        return classify(_pullback_vogan(dv))
    kind = _outer_kind(dv)
    if kind == "tw_a":
        p = _tw_a_p(dv)
        q = t.rank + 1 - p
        return SubalgebraType.of([("A", k - 1) for k in (p, q) if k > 1], 1)
    if kind == "tw_d":
        n = t.rank
        # the uncircled middle acts trivially on more root spaces, so it takes the larger dimension
        cands = sorted([SubalgebraType.of([("A", n - 1)], 1),
                        SubalgebraType.of([("B", (n - 1) // 2)] * 2)], key=lambda k: -k.dim)
        return cands[1] if dv.c else cands[0]
    raise UnsupportedDiagram(f"twisted double Vogan diagram with d = {list(dv.d)} is outside "
                             "the supported families")


def is_symplectic_non_pH(dv: DoubleVoganDiagram) -> bool:
    _require_valid(dv)
    if dv.r == 1:
        v = dv.vogan()
        if not represents_involution(v) or is_extension(v):
            return False
        return classify(v).center == 1
    if not dv.c:
        return not dv.is_identity
    return inner_twisted_circling(dv.diagram, dv.c)


# ---------------------------------------------------------------------------
# oracle

def _ambient_flip_D(n: int, last: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(1, n):
        m[n - i - 1][i - 1] = -1
    m[n - 1][n - 1] = last
    return m


def oracle_pair(dv: DoubleVoganDiagram) -> tuple[LinearInvolution, list[LinearInvolution]]:
    """theta from p, and every commuting sigma the oracle finds for (c, d)."""
    _require_valid(dv)
    t = dv.type
    rs = build_root_system(t)
    cb = build_chevalley(rs)
    theta = realize_kac(dv.diagram, dv.p, cb)
    if dv.r == 1:
        return theta, [realize_sigma(dv.vogan(), cb, commute_with=theta)]
    if dv.is_identity:
        return theta, [realize_sigma(_pullback_vogan(dv), cb, commute_with=theta)]
    kind = _outer_kind(dv)
    n = t.rank
    q = dv.diagram.quotient
    if kind == "tw_a":
        N = n + 1
        swap = [[int((r == c and r not in (0, N - 1)) or {r, c} == {0, N - 1}) for c in range(N)]
                for r in range(N)]
        pins = {j: (-1 if q[j] in dv.c else 1) for j in range(2, N - 1)}
        return theta, involutions_from_images(cb, ambient_images(rs, swap), pins, theta)
    if kind == "tw_d":
        mid = (n - 1) // 2
        pin = -1 if dv.c else 1
        out = []
        for last in (1, -1):
            imgs = ambient_images(rs, _ambient_flip_D(n, last))
            out += involutions_from_images(cb, imgs, {mid: pin}, theta)
        return theta, out
    raise UnsupportedDiagram("no oracle realization for this twisted diagram")


def oracle_report(dv: DoubleVoganDiagram) -> dict:
    theta, sigmas = oracle_pair(dv)
    if not sigmas:
        raise OracleError("no involution commuting with theta realizes the diagram")
    dims = set()
    for s in sigmas:
        dims.add((eigenspace_dims(s)[0], len(center_of_fixed(s))))
    if len(dims) != 1:
        raise OracleError(f"oracle candidates disagree: {sorted(dims)}")
    sig = sigmas[0]
    fixed, center = dims.pop()
    return {"fixed_dim": fixed, "center_dim": center,
            "theta_minus_one_on_center": center > 0 and acts_as_minus_one_on_center(theta, sig)}


# ---------------------------------------------------------------------------
# naming of g^sigma

_SO = re.compile(r"so\((\d+),(\d+)\)")


def _so(a: int, b: int) -> str:
    a, b = sorted((a, b))
    return f"so({b})" if a == 0 else f"so({a},{b})"


def _so_shift(g: str) -> str:
    """so(p,q) -> so(p-1,q-1)+so(1,1)."""
    p, q = map(int, _SO.fullmatch(g).groups())
    return f"{_so(p - 1, q - 1)}+so(1,1)"


def _sl_sum(p: int, q: int, kind: str) -> str:
    parts = []
    for k in sorted((p, q), reverse=True):
        if kind == "R" and k > 1:
            parts.append(f"sl({k},R)")
        elif kind == "H" and k > 0:
            parts.append(f"su*({k})")
    return "+".join(parts + ["R"])


def _name_r1(family: str, g: str, n: int) -> tuple[str, bool]:
    if family == "a":
        return f"sl({(n + 1) // 2},C)+R", False
    if family in "cl":
        return _so_shift(g), family == "l"
    if family in "fg":
        if g.endswith(",R)"):
            return f"gl({n},R)", True
        return f"gl({n // 2},H)", False
    if family == "k":
        if g.startswith("so*"):
            return f"su*({n})+R", True
        return f"gl({n},R)", False
    if family == "n":
        return {"e7(7)": "e6(6)+R", "e7(-25)": "e6(-26)+R"}[g], True
    raise SymplecticError(f"family {family} does not produce symplectic pairs")


def _name_r2(dv: DoubleVoganDiagram, g: str) -> tuple[str, bool]:
    t = dv.type
    N = t.rank + 1
    kind = _outer_kind(dv)
    if kind == "tw_a":
        p = _tw_a_p(dv)
        return _sl_sum(p, N - p, "R"), False
    if kind == "tw_d":
        return (f"so({t.rank},C)", False) if dv.c else (f"gl({t.rank},R)", False)
    if t.family == "A":
        (a, b) = sorted(pi_inverse_circling(dv.diagram, dv.c))
        p = b - a
        if g.startswith("su*"):
            return _sl_sum(p, N - p, "H"), False
        return _sl_sum(p, N - p, "R"), N % 2 == 1
    if t.family == "D":
        return _so_shift(g), True
    if t == SimpleType("E", 6):
        return {"e6(6)": "so(5,5)+R", "e6(-26)": "so(1,9)+R"}[g], True
    raise SymplecticError(f"no naming rule for {t}")


# ---------------------------------------------------------------------------
# enumeration

def _preserved_paintings(ad: AffineDiagram, d: tuple[int, ...]) -> list[Painting]:
    out = []
    for a in range(ad.size):
        for b in range(a, ad.size):
            black = {a, b}
            if ad.r * sum(ad.marks[v] for v in black) != 2:
                continue
            if all(d[v] in black for v in black):
                out.append(Painting.of(black))
    return out


def _pair(dv: DoubleVoganDiagram, family: str, verify: bool) -> SymmetricPair:
    g = real_form_of_theta(dv.diagram, dv.p)
    h = sigma_of_double(dv)
    if dv.r == 1:
        h_name, derived = _name_r1(family, g.name, dv.type.rank)
    else:
        h_name, derived = _name_r2(dv, g.name)
    report = oracle_report(dv) if verify else None
    split = report["theta_minus_one_on_center"] if report else None
    nph = is_symplectic_non_pH(dv)
    return SymmetricPair(
        g=g, h=SubalgebraType(h.components, h.center, split), h_name=h_name,
        symplectic=h.center > 0, pseudo_hermitian=h.center > 0 and not nph,
        non_pseudo_hermitian=nph, family=family, diagram=dv, derived_name=derived, oracle=report,
    )


def _r1_pairs(t: SimpleType, verify: bool) -> list[SymmetricPair]:
    out, seen = [], set()
    for fam, _m, v in catalog_instances(t):
        if fam.id not in SYMPLECTIC_FAMILIES:
            continue
        for p in _preserved_paintings(v.diagram, v.d):
            dv = DoubleVoganDiagram(v.diagram, p, v.d, v.c)
            name = real_form_of_theta(v.diagram, p).name
            if (fam.id, name) in seen:
                continue
            seen.add((fam.id, name))
            out.append(_pair(dv, fam.id, verify))
    return out


def _twisted_circlings(tw: AffineDiagram) -> list[frozenset[int]]:
    out = []
    for x in range(1, tw.size):
        for c in (frozenset({x}), frozenset({0, x})):
            if inner_twisted_circling(tw, c):
                out.append(c)
    return out


def _r2_pairs(t: SimpleType, verify: bool) -> list[SymmetricPair]:
    if not (t.family == "A" and t.rank >= 2 or t.family == "D" and t.rank >= 4 or t == SimpleType("E", 6)):
        return []
    tw = fold_quotient(t)
    out = []
    ident = tuple(range(tw.size))
    seen = set()
    for p in _preserved_paintings(tw, ident):
        name = real_form_of_theta(tw, p).name
        if name in seen:
            continue
        seen.add(name)
        for c in _twisted_circlings(tw):
            out.append(_pair(DoubleVoganDiagram(tw, p, ident, c), "tw_inner", verify))
    n = t.rank
    if t.family == "A" and n % 2 == 1:
        l = (n + 1) // 2
        d = (1, 0) + tuple(range(2, tw.size))
        for c in [frozenset()] + [frozenset({i}) for i in range(2, l)]:
            out.append(_pair(DoubleVoganDiagram(tw, Painting.of([l]), d, c), "tw_a", verify))
    if t.family == "D" and n % 2 == 1 and n >= 5:
        d = tuple(reversed(range(tw.size)))
        out.append(_pair(DoubleVoganDiagram(tw, Painting.of([(n - 1) // 2]), d), "tw_d", verify))
    return out


def enumerate_symplectic(t: SimpleType, verify: bool = True) -> list[SymmetricPair]:
    """Symplectic non-pseudo-Hermitian pairs (g, g^sigma) with g a real form of L = t."""
    pairs, seen = [], set()
    for pr in _r1_pairs(t, verify) + _r2_pairs(t, verify):
        key = (pr.family, pr.g.name, pr.h_name)
        if key not in seen:
            seen.add(key)
            pairs.append(pr)
    for pr in pairs:
        if not pr.non_pseudo_hermitian:
            raise SymplecticError(f"internal: enumerated pair {pr.g}, {pr.h_name} fails the predicate")
    return pairs


def double_from_family(family_id: str, n: int, black: Iterable[int], m: int | None = None) -> DoubleVoganDiagram:
    """Superimpose a catalog family with a Kac painting on D^1."""
    from .vogan import catalog_diagram

    v = catalog_diagram(family_id, n, m)
    return DoubleVoganDiagram(v.diagram, Painting.of(black), v.d, v.c)


def flip_double(t: SimpleType, c: Iterable[int] = ()) -> DoubleVoganDiagram:
    """The twisted d != 1 double Vogan diagram on A_{odd} or D_{odd}."""
    tw = fold_quotient(t)
    n = t.rank
    if t.family == "A" and n % 2 == 1:
        return DoubleVoganDiagram(tw, Painting.of([(n + 1) // 2]), (1, 0) + tuple(range(2, tw.size)), frozenset(c))
    if t.family == "D" and n % 2 == 1 and n >= 5:
        return DoubleVoganDiagram(tw, Painting.of([(n - 1) // 2]), tuple(reversed(range(tw.size))), frozenset(c))
    raise SymplecticError(f"{t} carries no twisted diagram with d != 1")

"""Chevalley basis oracle.

Basis layout: indices 0..n-1 are the simple coroots h_i, index n + k is the
root vector X_k for root k of the RootSystem.  Structure constants follow
the extraspecial-pair construction: for every positive root xi of height at
least 2, the pair (alpha_i, xi - alpha_i) with i minimal gets N = +(p + 1).
Everything is exact integer or rational arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .rootsys import RootSystem, SimpleType, build_root_system

Sparse = dict[int, int]


class OracleError(RuntimeError):
    pass


@dataclass
class ChevalleyBasis:
    rs: RootSystem
    N: dict[tuple[int, int], int]
    pairing: tuple[tuple[int, ...], ...]     # pairing[k][i] = <root k, alpha_i^vee>
    coroot: tuple[tuple[int, ...], ...]      # coroot[k] in the simple-coroot basis
    sums: dict[tuple[int, int], int]
    _table: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def dim(self) -> int:
        return self.rs.dim

    def root_index(self, b: int) -> int:
        return b - self.rank

    def bracket_basis(self, a: int, b: int) -> Sparse:
        key = (a, b)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        n = self.rank
        out: Sparse = {}
        if a < n and b < n:
            pass
        elif a < n:
            c = self.pairing[b - n][a]
            if c:
                out = {b: c}
        elif b < n:
            c = self.pairing[a - n][b]
            if c:
                out = {a: -c}
        else:
            k, l = a - n, b - n
            if l == self.rs.neg(k):
                out = {i: c for i, c in enumerate(self.coroot[k]) if c}
            else:
                s = self.sums.get((k, l))
                if s is not None:
                    out = {n + s: self.N[(k, l)]}
        self._table[key] = out
        return out

    def bracket(self, x: Sparse, y: Sparse) -> Sparse:
        out: dict[int, int] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.bracket_basis(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def form_basis(self, a: int, b: int) -> Fraction:
        """Invariant form with B(X_alpha, X_-alpha) = 2/(alpha, alpha)."""
        n, rs = self.rank, self.rs
        if a < n and b < n:
            ga, gb = rs.gram[a][a], rs.gram[b][b]
            return Fraction(4 * rs.gram[a][b], ga * gb)
        if a < n or b < n:
            return Fraction(0)
        k, l = a - n, b - n
        if l == rs.neg(k):
            return Fraction(2, rs.norm(k))
        return Fraction(0)

    def form(self, x: dict, y: dict) -> Fraction:
        total = Fraction(0)
        for a, ca in x.items():
            for b, cb in y.items():
                f = self.form_basis(a, b)
                if f:
                    total += ca * cb * f
        return total


def _structure_constants(rs: RootSystem) -> tuple[dict, dict]:
    n = rs.rank
    nroots = len(rs.roots)
    simple_idx = [rs.find(tuple(int(i == j) for j in range(n))) for i in range(n)]
    sums: dict[tuple[int, int], int] = {}
    for k in range(nroots):
        for l in range(nroots):
            s = rs.find(tuple(a + b for a, b in zip(rs.coeffs[k], rs.coeffs[l])))
            if s is not None:
                sums[(k, l)] = s
    extraspecial: dict[int, tuple[int, int, int]] = {}
    for xi in range(rs.npos):
        if rs.height(xi) < 2:
            continue
        for i, g in enumerate(simple_idx):
            dlt = rs.find(tuple(a - int(j == i) for j, a in enumerate(rs.coeffs[xi])))
            if dlt is not None:
                p = 0
                while rs.find(tuple(a - (p + 1) * int(j == i) for j, a in enumerate(rs.coeffs[dlt]))) is not None:
                    p += 1
                extraspecial[xi] = (g, dlt, p + 1)
                break
    norm = [Fraction(rs.norm(k)) for k in range(nroots)]
    pos_memo: dict[tuple[int, int], int] = {}

    def positive(a: int, b: int) -> int:
        key = (a, b)
        if key in pos_memo:
            return pos_memo[key]
        xi = sums[(a, b)]
        g, dl, val = extraspecial[xi]
        if (a, b) == (g, dl):
            res = val
        elif (a, b) == (dl, g):
            res = -val
        else:
            mg, md = rs.neg(g), rs.neg(dl)
            total = Fraction(0)
            if (b, mg) in sums:
                total += Fraction(N(b, mg) * N(a, md)) / norm[sums[(b, mg)]]
            if (mg, a) in sums:
                total += Fraction(N(mg, a) * N(b, md)) / norm[sums[(mg, a)]]
            q = norm[xi] * total / val
            if q.denominator != 1:
                raise OracleError(f"non-integral structure constant for roots {a}, {b}")
            res = int(q)
        pos_memo[key] = res
        return res

    def N(x: int, y: int) -> int:
        z = sums.get((x, y))
        if z is None:
            return 0
        xp, yp = x < rs.npos, y < rs.npos
        if xp and yp:
            return positive(x, y)
        if not xp and not yp:
            return -positive(rs.neg(x), rs.neg(y))
        w = rs.neg(z)
        wp = w < rs.npos
        # x + y + w = 0: N_xy/(w,w) = N_yw/(x,x) = N_wx/(y,y)
        if wp == yp:
            q = norm[w] * N(y, w) / norm[x]
        else:
            q = norm[w] * N(w, x) / norm[y]
        assert q.denominator == 1
        return int(q)

    table = {(k, l): N(k, l) for (k, l) in sums}
    return table, sums


def _build(rs: RootSystem) -> ChevalleyBasis:
    N, sums = _structure_constants(rs)
    n = rs.rank
    cart = rs.cartan
    pairing = tuple(tuple(sum(c[j] * cart[j][i] for j in range(n)) for i in range(n)) for c in rs.coeffs)
    coroot = []
    for k, c in enumerate(rs.coeffs):
        nk = rs.norm(k)
        row = []
        for i in range(n):
            q = Fraction(c[i] * rs.gram[i][i], nk)
            assert q.denominator == 1
            row.append(int(q))
        coroot.append(tuple(row))
    return ChevalleyBasis(rs, N, pairing, tuple(coroot), sums)


def jacobi_failures(cb: ChevalleyBasis, generators: Iterable[int] | None = None) -> int:
    """Count basis pairs (y, z) where ad_g fails to be a derivation, g a generator.

    Checking the derivation property for the generators X_{+-alpha_i} is
    equivalent to the full Jacobi identity because they generate L.
    """
    n, rs = cb.rank, cb.rs
    if generators is None:
        simple = [rs.find(tuple(int(i == j) for j in range(n))) for i in range(n)]
        generators = [n + k for k in simple] + [n + rs.neg(k) for k in simple]
    bad = 0
    for g in generators:
        for y in range(cb.dim):
            gy = cb.bracket_basis(g, y)
            for z in range(y + 1, cb.dim):
                lhs = cb.bracket({g: 1}, cb.bracket_basis(y, z))
                rhs = cb.bracket(gy, {z: 1})
                gz = cb.bracket_basis(g, z)
                for k, v in cb.bracket({y: 1}, gz).items():
                    rhs[k] = rhs.get(k, 0) + v
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    bad += 1
    return bad


@lru_cache(maxsize=None)
def _cached(t: SimpleType) -> ChevalleyBasis:
    return _build(build_root_system(t))


def build_chevalley(rs: RootSystem, check: bool = False) -> ChevalleyBasis:
    cb = _cached(rs.type)
    if check and jacobi_failures(cb):
        raise OracleError(f"Jacobi identity fails for {rs.type}")
    return cb


# ---------------------------------------------------------------------------
# involutions


def vertex_images(rs: RootSystem, d: Sequence[int]) -> list[tuple[int, ...]]:
    """Coefficient vectors of d(alpha_i) for a permutation d of D^1 (vertex 0 = phi)."""
    n = rs.rank
    marks = rs.marks
    phi = tuple(-m for m in marks)

    def vec(v):
        return phi if v == 0 else tuple(int(j == v - 1) for j in range(n))

    return [vec(d[i]) for i in range(1, n + 1)]


def root_permutation(rs: RootSystem, images: Sequence[Sequence[int]]) -> list[int]:
    n = rs.rank
    out = []
    for c in rs.coeffs:
        img = tuple(sum(c[i] * images[i][j] for i in range(n)) for j in range(n))
        k = rs.find(img)
        if k is None:
            raise OracleError("the vertex map does not permute the roots")
        out.append(k)
    return out


@dataclass
class LinearInvolution:
    cb: ChevalleyBasis
    rp: tuple[int, ...]        # root permutation
    eps: tuple[int, ...]       # sigma X_k = eps[k] X_{rp[k]}
    S: tuple[tuple[int, ...], ...]   # S[j][i]: coefficient of h_j in sigma(h_i)
    d: tuple[int, ...] | None = None

    @property
    def rank(self) -> int:
        return self.cb.rank

    def apply_basis(self, b: int) -> Sparse:
        n = self.rank
        if b < n:
            return {j: self.S[j][b] for j in range(n) if self.S[j][b]}
        k = b - n
        return {n + self.rp[k]: self.eps[k]}

    def apply(self, x: dict) -> dict:
        out: dict = {}
        for b, c in x.items():
            for k, v in self.apply_basis(b).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def is_involution(self) -> bool:
        return all(self.apply(self.apply_basis(b)) == {b: 1} for b in range(self.cb.dim))

    def bracket_residual(self) -> int:
        """Number of basis pairs with sigma[x,y] != [sigma x, sigma y]."""
        cb = self.cb
        images = [self.apply_basis(b) for b in range(cb.dim)]
        bad = 0
        for a in range(cb.dim):
            for b in range(a + 1, cb.dim):
                lhs = self.apply(cb.bracket_basis(a, b))
                rhs = cb.bracket(images[a], images[b])
                if lhs != rhs:
                    bad += 1
        return bad

    def form_residual(self) -> int:
        cb = self.cb
        images = [self.apply_basis(b) for b in range(cb.dim)]
        bad = 0
        for a in range(cb.dim):
            for b in range(a, cb.dim):
                if cb.form(images[a], images[b]) != cb.form_basis(a, b):
                    bad += 1
        return bad

    def commutes_with(self, other: "LinearInvolution") -> bool:
        return all(self.apply(other.apply_basis(b)) == other.apply(self.apply_basis(b))
                   for b in range(self.cb.dim))

    def fixed_roots(self) -> list[int]:
        return [k for k in range(len(self.rp)) if self.rp[k] == k]

    def fixed_basis(self) -> list[dict]:
        """A basis of L^sigma."""
        n = self.rank
        rows = [[self.S[j][i] - (i == j) for i in range(n)] for j in range(n)]
        out = [{i: c for i, c in enumerate(linalg.integral(v)) if c} for v in linalg.kernel(rows, n)]
        for k, img in enumerate(self.rp):
            if img == k and self.eps[k] == 1:
                out.append({n + k: 1})
            elif k < img:
                out.append({n + k: 1, n + img: self.eps[k]})
        return out


def _cartan_action(cb: ChevalleyBasis, rp: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    rs, n = cb.rs, cb.rank
    cols = []
    for i in range(n):
        k = rs.find(tuple(int(i == j) for j in range(n)))
        cols.append(cb.coroot[rp[k]])
    return tuple(tuple(cols[i][j] for i in range(n)) for j in range(n))


def realize(cb: ChevalleyBasis, d: Sequence[int], simple_signs: Sequence[int]) -> LinearInvolution:
    """The automorphism with sigma X_{alpha_i} = s_i X_{d alpha_i}, extended by the bracket.

    The result need not square to one; callers check.
    """
    return realize_images(cb, vertex_images(cb.rs, d), simple_signs, tuple(d))


def realize_images(cb: ChevalleyBasis, images: Sequence[Sequence[int]], simple_signs: Sequence[int],
                   d: tuple[int, ...] | None = None) -> LinearInvolution:
    """As ``realize`` for any root-system automorphism, given by the images of the simple roots."""
    rs, n = cb.rs, cb.rank
    rp = root_permutation(rs, images)
    eps = [0] * len(rs.roots)
    for k in range(rs.npos):
        c = rs.coeffs[k]
        if sum(c) == 1:
            eps[k] = simple_signs[c.index(1)]
            continue
        for i in range(n):
            if c[i] == 0:
                continue
            b = rs.find(tuple(x - int(j == i) for j, x in enumerate(c)))
            if b is None:
                continue
            a = rs.find(tuple(int(j == i) for j in range(n)))
            q = cb.N[(rp[a], rp[b])] * simple_signs[i] * eps[b]
            den = cb.N[(a, b)]
            if q % den:
                raise OracleError("structure constants disagree in absolute value")
            eps[k] = q // den
            break
    for k in range(rs.npos):
        eps[rs.neg(k)] = eps[k]
    return LinearInvolution(cb, tuple(rp), tuple(eps), _cartan_action(cb, rp), d)


def ambient_images(rs: RootSystem, matrix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Images of the simple roots under an ambient linear map (rows act on coordinates)."""
    out = []
    for s in rs.simple:
        v = tuple(sum(matrix[i][j] * s[j] for j in range(len(s))) for i in range(len(matrix)))
        k = rs.roots.index(v) if v in rs.roots else None
        if k is None:
            raise OracleError("the ambient map does not preserve the roots")
        out.append(rs.coeffs[k])
    return out


def involutions_from_images(cb: ChevalleyBasis, images: Sequence[Sequence[int]], pins: dict[int, int],
                            commute_with: LinearInvolution | None = None) -> list[LinearInvolution]:
    """All sign choices (pins fixed, 1-based simple indices) giving a commuting involution."""
    n = cb.rank
    free = [i for i in range(1, n + 1) if i not in pins]
    if len(free) > 10:
        raise OracleError("sign search space exceeds 2^10")
    out = []
    for choice in itertools.product((1, -1), repeat=len(free)):
        signs = [pins.get(i, 1) for i in range(1, n + 1)]
        for i, s in zip(free, choice):
            signs[i - 1] = s
        sig = realize_images(cb, images, signs)
        if squares_to_one(sig) and (commute_with is None or sig.commutes_with(commute_with)):
            out.append(sig)
    return out


def squares_to_one(sig: LinearInvolution) -> bool:
    return all(sig.rp[sig.rp[k]] == k and sig.eps[k] * sig.eps[sig.rp[k]] == 1 for k in range(len(sig.rp)))


def sign_search(cb: ChevalleyBasis, d: Sequence[int], pins: dict[int, int],
                commute_with: LinearInvolution | None = None) -> LinearInvolution:
    """Search the free simple signs for an involution realizing d with pinned signs.

    ``pins`` maps D^1 vertices to the required sign of sigma on their root
    vector (only meaningful for d-fixed vertices).  One free sign per
    swapped orbit; fixed simple vertices take their pin (default +1).
    """
    rs, n = cb.rs, cb.rank
    d = tuple(d)
    free = [i for i in range(1, n + 1) if d[i] != i and (d[i] == 0 or i < d[i])]
    if len(free) > 8:
        raise OracleError("sign search space exceeds 2^8")
    phi_root = rs.neg(rs.highest)
    for choice in itertools.product((1, -1), repeat=len(free)):
        signs = [0] * n
        for i in range(1, n + 1):
            if d[i] == i:
                signs[i - 1] = pins.get(i, 1)
        for i, s in zip(free, choice):
            signs[i - 1] = s
            if d[i] != 0:
                signs[d[i] - 1] = s
        sig = realize(cb, d, signs)
        if not squares_to_one(sig):
            continue
        if d[0] == 0 and sig.eps[phi_root] != pins.get(0, 1):
            continue
        if commute_with is not None and not sig.commutes_with(commute_with):
            continue
        return sig
    raise OracleError("no sign choice realizes the diagram as an involution")


def realize_sigma(v, cb: ChevalleyBasis | None = None,
                  commute_with: LinearInvolution | None = None) -> LinearInvolution:
    """Oracle realization of an affine Vogan diagram (c, d) on D^1."""
    from .vogan import ParityError, represents_involution

    if not represents_involution(v):
        raise ParityError("parity rule violated: the diagram does not represent an involution")
    rs = build_root_system(v.diagram.type)
    cb = cb or build_chevalley(rs)
    pins = {a: (-1 if a in v.c else 1) for a in v.fixed}
    return sign_search(cb, v.d, pins, commute_with)


def realize_kac(ad, p, cb: ChevalleyBasis | None = None) -> LinearInvolution:
    """Oracle realization of a Kac diagram on D^1 or D^2."""
    rs = build_root_system(ad.type)
    cb = cb or build_chevalley(rs)
    n = rs.rank
    if not p.is_kac(ad):
        raise OracleError(f"painting {p} is not a Kac diagram")
    if ad.r == 1:
        d = tuple(range(n + 1))
        signs = [-1 if i in p.black else 1 for i in range(1, n + 1)]
    else:
        d = (0,) + tuple(ad.theta[1:])
        signs = [-1 if ad.quotient[i] in p.black else 1 for i in range(1, n + 1)]
    sig = realize(cb, d, signs)
    if not squares_to_one(sig):
        raise OracleError("Kac realization does not square to one")
    return sig


def eigenspace_dims(sig: LinearInvolution) -> tuple[int, int]:
    n = sig.rank
    S = sig.S
    rk_minus = linalg.rank([[S[j][i] - (i == j) for i in range(n)] for j in range(n)], n)
    rk_plus = linalg.rank([[S[j][i] + (i == j) for i in range(n)] for j in range(n)], n)
    plus, minus = n - rk_minus, n - rk_plus
    for k, img in enumerate(sig.rp):
        if img == k:
            if sig.eps[k] == 1:
                plus += 1
            else:
                minus += 1
        elif k < img:
            plus += 1
            minus += 1
    assert plus + minus == sig.cb.dim
    return plus, minus


def cartan_fixed_dim(sig: LinearInvolution) -> int:
    n = sig.rank
    return n - linalg.rank([[sig.S[j][i] - (i == j) for i in range(n)] for j in range(n)], n)


@dataclass(frozen=True)
class SignPartition:
    plus: frozenset[int]
    minus: frozenset[int]


def sign_classes(sig: LinearInvolution) -> SignPartition:
    fixed = sig.fixed_roots()
    return SignPartition(frozenset(k for k in fixed if sig.eps[k] == 1),
                         frozenset(k for k in fixed if sig.eps[k] == -1))


def _to_rows(vectors: list[dict], dim: int) -> list[list]:
    return [[v.get(i, 0) for i in range(dim)] for v in vectors]


def center_of_fixed(sig: LinearInvolution) -> list[dict]:
    """Basis of z(L^sigma), as sparse vectors of L."""
    cb = sig.cb
    basis = sig.fixed_basis()
    m = len(basis)
    # unknowns a_j; sum_j a_j [f_j, f_l] = 0 for every l
    brackets = [[cb.bracket(f, g) for g in basis] for f in basis]
    rows = []
    for l in range(m):
        coords = set()
        for j in range(m):
            coords.update(brackets[j][l])
        for c in coords:
            rows.append([brackets[j][l].get(c, 0) for j in range(m)])
    if not rows:
        rows = [[0] * m]
    out = []
    for v in linalg.kernel(rows, m):
        v = linalg.integral(v)
        z: dict = {}
        for a, f in zip(v, basis):
            if a:
                for k, c in f.items():
                    z[k] = z.get(k, 0) + a * c
        out.append({k: c for k, c in z.items() if c})
    return out


@dataclass(frozen=True)
class RadicalReport:
    fixed_dim: int
    center_dim: int
    radical_dim: int
    radical_equals_fixed: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def symplectic_radical(sig: LinearInvolution) -> RadicalReport:
    """Radical of omega(x, y) = B(z, [x, y]) for z spanning a 1-dimensional z(L^sigma)."""
    cb = sig.cb
    center = center_of_fixed(sig)
    if len(center) != 1:
        raise OracleError(f"center of the fixed algebra has dimension {len(center)}; need exactly 1")
    z = center[0]
    dim = cb.dim
    # B(z, [e_a, e_b]) = B([z, e_a], e_b)
    za = [cb.bracket(z, {a: 1}) for a in range(dim)]
    gram = [[cb.form(za[a], {b: 1}) for b in range(dim)] for a in range(dim)]
    rad = linalg.kernel(gram, dim)
    fixed = sig.fixed_basis()
    in_rad = all(all(cb.form(cb.bracket(z, f), {b: 1}) == 0 for b in range(dim)) for f in fixed)
    return RadicalReport(len(fixed), len(center), len(rad), in_rad and len(rad) == len(fixed))


def acts_as_minus_one_on_center(theta: LinearInvolution, sig: LinearInvolution) -> bool:
    center = center_of_fixed(sig)
    return bool(center) and all(theta.apply(z) == {k: -c for k, c in z.items()} for z in center)

"""Exact rank and kernel computations over the rationals.

Thin wrappers around FLINT matrices so the rest of the package can pass
plain nested lists of ints/Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint


def _to_fmpq(rows: Sequence[Sequence], ncols: int | None = None) -> flint.fmpq_mat:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = []
    for r in rows:
        for x in r:
            if isinstance(x, Fraction):
                flat.append(flint.fmpq(x.numerator, x.denominator))
            else:
                flat.append(flint.fmpq(int(x)))
    return flint.fmpq_mat(len(rows), ncols, flat)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank over Q of the matrix given by ``rows``."""
    if not rows:
        return 0
    return _to_fmpq(rows, ncols).rank()


def kernel(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel {x : M x = 0}, as a list of vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m = _to_fmpq(rows, ncols)
    rref, rk = m.rref()
    pivots = []
    r = 0
    for c in range(ncols):
        if r < rk and rref[r, c] != 0:
            pivots.append(c)
            r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            q = rref[i, f]
            v[p] = -Fraction(int(q.p), int(q.q))
        basis.append(v)
    return basis


def solve(square: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a nonsingular square system exactly."""
    a = _to_fmpq(square)
    b = _to_fmpq([[x] for x in rhs], 1)
    x = a.solve(b)
    return [Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(x.nrows())]


def integral(v: Sequence[Fraction]) -> list[int]:
    """Clear denominators and divide out the content of a rational vector."""
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w] if g else w

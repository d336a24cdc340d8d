"""Membership in the standard fundamental domain of a Bianchi group.

The domain is the intersection of two constraints: the complex coordinate
lies in a cusp polygon (a fundamental cell for the stabilizer of infinity
acting on the boundary plane), and the point lies above every isometric
hemisphere, i.e. |gamma*z + delta|^2 + |gamma|^2 s >= 1 for all coprime
integer pairs (gamma, delta).  The second condition is decided through a
finite exact minimization: the pair (0, 1) gives the value 1, so any
competitor satisfies |gamma|^2 s <= 1 and |gamma*z + delta|^2 <= 1, which
confines the search to two explicit disks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Optional

from .geometry import Point
from .ring import AlgInt, FieldElem, RingContext, is_coprime, iter_disk, pair_key


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class DenominatorWitness:
    """Argmin of |gamma*z + delta|^2 + |gamma|^2 s over coprime pairs.

    m_star is the minimal value; it is at most 1, with equality exactly on
    the region above all hemispheres.  1/m_star is the largest factor by
    which any group element can raise the squared height of the point.
    """

    gamma0: AlgInt
    delta0: AlgInt
    m_star: Fraction


def _field_scaled_coords(x: AlgInt) -> tuple[int, int]:
    # coordinates of x relative to {1, sqrt(-d)}, scaled by 2 when omega is
    # a half-integer so that they stay integral
    if x.d % 4 == 3:
        return (2 * x.a - x.b, x.b)
    return (x.a, x.b)


def _scan_pairs(
    ctx: RingContext, p: Point, skip_zero_gamma: bool
) -> Optional[tuple[int, int, AlgInt, AlgInt]]:
    """Minimal (numerator, denominator, gamma, delta) of the hemisphere form
    over coprime pairs in the finite search region, or None if empty.

    Works on integers only: with z = (za + zb*sqrt(-d)) / zden, s = sn/sd,
    and entry coordinates scaled by c (2 when omega is half-integral), the
    form value is [sd*(wa^2 + d*wb^2) + |gamma|^2 * sn * c^2 * zden^2] over
    the fixed denominator c^2 * zden^2 * sd.
    """
    d = ctx.d
    z, s = p.z, p.s
    zden = lcm(z.a.denominator, z.b.denominator)
    za = int(z.a * zden)
    zb = int(z.b * zden)
    sn, sd = s.numerator, s.denominator
    c = 2 if d % 4 == 3 else 1
    r0 = c * c * zden * zden
    den = r0 * sd
    gamma_weight = sn * r0
    ub = isqrt(r0 // d)

    ranked: list[tuple[int, int, int, int, int]] = []
    for ga, gb in iter_disk(d, Fraction(0), Fraction(0), Fraction(sd, sn)):
        ngamma = AlgInt(ga, gb, d).norm()
        if skip_zero_gamma and ngamma == 0:
            continue
        hover = ngamma * gamma_weight
        gA, gB = _field_scaled_coords(AlgInt(ga, gb, d))
        wa0 = gA * za - d * gB * zb
        wb0 = gA * zb + gB * za
        # delta loop: wa^2 + d*wb^2 <= r0 with wa = wa0 + dA*zden etc.; for
        # half-integral omega the scaled coordinates satisfy dA = dB (mod 2)
        b_lo = _ceil_div(-ub - wb0, zden)
        b_hi = (ub - wb0) // zden
        for dB in range(b_lo, b_hi + 1):
            wb = wb0 + dB * zden
            rem = r0 - d * wb * wb
            if rem < 0:
                continue
            r = isqrt(rem)
            a_lo = _ceil_div(-r - wa0, zden)
            a_hi = (r - wa0) // zden
            step = 1
            if c == 2:
                if (a_lo + dB) % 2 != 0:
                    a_lo += 1
                step = 2
            for dA in range(a_lo, a_hi + 1, step):
                if ngamma == 0 and dA == 0 and dB == 0:
                    continue
                wa = wa0 + dA * zden
                ranked.append((sd * (wa * wa + d * wb * wb) + hover, ga, gb, dA, dB))

    if not ranked:
        return None
    # sort by value; resolve ties by (|gamma|^2, modulus-then-sign on the
    # coordinates); coprimality is only tested in that final order
    ranked.sort(key=lambda t: t[0])
    i = 0
    while i < len(ranked):
        j = i
        block: list[tuple[int, tuple, AlgInt, AlgInt]] = []
        while j < len(ranked) and ranked[j][0] == ranked[i][0]:
            m_num, ga, gb, dA, dB = ranked[j]
            da, db = ((dA + dB) // 2, dB) if c == 2 else (dA, dB)
            gamma = AlgInt(ga, gb, d)
            delta = AlgInt(da, db, d)
            block.append((m_num, (gamma.norm(), *pair_key(gamma, delta)), gamma, delta))
            j += 1
        block.sort(key=lambda t: t[1])
        for m_num, _, gamma, delta in block:
            if is_coprime(gamma, delta):
                return (m_num, den, gamma, delta)
        i = j
    return None


def minimal_denominator(ctx: RingContext, p: Point) -> DenominatorWitness:
    """Exact minimizer of the hemisphere form; ties are broken by the
    modulus-then-sign order on (|gamma|^2, gamma, delta) coordinates."""
    found = _scan_pairs(ctx, p, skip_zero_gamma=False)
    assert found is not None, "the pair (0, 1) is always a candidate"
    m_num, den, gamma, delta = found
    return DenominatorWitness(gamma, delta, Fraction(m_num, den))


def denominator_candidates(
    ctx: RingContext, p: Point
) -> list[tuple[AlgInt, AlgInt]]:
    """All coprime pairs (gamma, delta) with |gamma|^2 <= 1/s and delta in
    the closed unit disk around -gamma*z; contains (0, 1) for every point."""
    d = ctx.d
    out: list[tuple[AlgInt, AlgInt]] = []
    for ga, gb in iter_disk(d, Fraction(0), Fraction(0), 1 / p.s):
        gamma = AlgInt(ga, gb, d)
        center = -(gamma.to_field() * p.z)
        for da, db in iter_disk(d, center.a, center.b, Fraction(1)):
            delta = AlgInt(da, db, d)
            if gamma.is_zero() and delta.is_zero():
                continue
            if is_coprime(gamma, delta):
                out.append((gamma, delta))
    return out


# ---------------------------------------------------------------------------
# Cusp polygons
# ---------------------------------------------------------------------------


def in_polygon(ctx: RingContext, z: FieldElem) -> bool:
    """Closed membership in the cusp polygon for the stabilizer of infinity.

    In terms of z = A + B*sqrt(-d): the unit-rich cases d = 1 and d = 3 get
    their special cells (a half-square, and a union of two triangles whose
    edges become rational constraints on A and 3B); otherwise the cell is
    the rectangle 0 <= A <= 1, 0 <= B <= 1 or 0 <= B <= 1/2 according to
    whether omega is sqrt(-d) or half-integral.
    """
    a, b = z.a, z.b
    d = ctx.d
    if d == 1:
        return -Fraction(1, 2) <= a <= Fraction(1, 2) and 0 <= b <= Fraction(1, 2)
    if d == 3:
        t1 = 0 <= a and a <= 3 * b and 3 * b <= 1 - a
        t2 = 0 <= a <= Fraction(1, 2) and -a <= 3 * b <= a
        return t1 or t2
    if d % 4 == 3:
        return 0 <= a <= 1 and 0 <= b <= Fraction(1, 2)
    return 0 <= a <= 1 and 0 <= b <= 1


def polygon_interior(ctx: RingContext, z: FieldElem) -> bool:
    a, b = z.a, z.b
    d = ctx.d
    if d == 1:
        return -Fraction(1, 2) < a < Fraction(1, 2) and 0 < b < Fraction(1, 2)
    if d == 3:
        # interior of the union: 0 < A < 1/2 with -A < 3B < 1 - A
        return 0 < a < Fraction(1, 2) and -a < 3 * b < 1 - a
    if d % 4 == 3:
        return 0 < a < 1 and 0 < b < Fraction(1, 2)
    return 0 < a < 1 and 0 < b < 1


def max_polygon_norm_sq(ctx: RingContext) -> Fraction:
    """Largest |z|^2 over the cusp polygon (attained at a far corner)."""
    d = ctx.d
    if d == 1:
        return Fraction(1, 2)
    if d == 3:
        return Fraction(1, 3)
    if d % 4 == 3:
        return Fraction(4 + d, 4)
    return Fraction(1 + d)


# ---------------------------------------------------------------------------
# Combined membership
# ---------------------------------------------------------------------------


def above_hemispheres(ctx: RingContext, p: Point) -> bool:
    return minimal_denominator(ctx, p).m_star >= 1


def hemispheres_interior(ctx: RingContext, p: Point) -> bool:
    """Strict membership: every hemisphere constraint with gamma != 0 holds
    strictly (the pair (0, 1) always realizes equality and is ignored)."""
    found = _scan_pairs(ctx, p, skip_zero_gamma=True)
    if found is None:
        return True
    m_num, den, _, _ = found
    return m_num > den


def in_fundamental_domain(ctx: RingContext, p: Point) -> bool:
    return above_hemispheres(ctx, p) and in_polygon(ctx, p.z)


def fundamental_interior(ctx: RingContext, p: Point) -> bool:
    return hemispheres_interior(ctx, p) and polygon_interior(ctx, p.z)

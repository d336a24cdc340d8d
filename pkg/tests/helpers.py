"""Random generators shared by the test modules; all seeded by callers."""

from __future__ import annotations

import random
from fractions import Fraction

from bianchi import (
    AlgInt,
    GroupElem,
    HermitianForm,
    Point,
    RingContext,
    is_coprime,
    solve_bezout,
)


def random_field(ctx: RingContext, rng: random.Random, span: int = 10, den: int = 12):
    return ctx.field(
        Fraction(rng.randint(-span * den, span * den), rng.randint(1, den)),
        Fraction(rng.randint(-span * den, span * den), rng.randint(1, den)),
    )


def random_point(
    ctx: RingContext,
    rng: random.Random,
    z_span: int = 6,
    s_lo: Fraction = Fraction(1, 100),
    s_hi: Fraction = Fraction(100),
) -> Point:
    z = random_field(ctx, rng, span=z_span)
    # mix of low and high points, log-ish spread over [s_lo, s_hi]
    if rng.random() < 0.5:
        s = Fraction(rng.randint(1, 100), rng.randint(1, int(1 / s_lo)))
    else:
        s = Fraction(rng.randint(1, int(s_hi)), rng.randint(1, 10))
    s = max(s_lo, min(s_hi, s))
    return Point(z, s)


def random_alg(ctx: RingContext, rng: random.Random, span: int = 9) -> AlgInt:
    return ctx.alg(rng.randint(-span, span), rng.randint(-span, span))


def random_coprime_pair(
    ctx: RingContext, rng: random.Random, span: int = 9, nonzero: bool = True
) -> tuple[AlgInt, AlgInt]:
    while True:
        x = random_alg(ctx, rng, span)
        y = random_alg(ctx, rng, span)
        if x.is_zero() and y.is_zero():
            continue
        if nonzero and (x.is_zero() or y.is_zero()):
            continue
        if is_coprime(x, y):
            return x, y


def random_group_elem(ctx: RingContext, rng: random.Random, span: int = 5) -> GroupElem:
    alpha, gamma = random_coprime_pair(ctx, rng, span, nonzero=False)
    x, y = solve_bezout(alpha, gamma)
    base = GroupElem(alpha, -y, gamma, x)
    # shear by a random upper-triangular element for more variety
    mu = random_alg(ctx, rng, 2)
    shear = GroupElem(ctx.one, mu, ctx.zero, ctx.one)
    return base.compose(shear)


def random_definite_form(
    ctx: RingContext, rng: random.Random, span: int = 9
) -> HermitianForm:
    while True:
        a = rng.randint(1, span)
        b = random_alg(ctx, rng, span)
        dd = b.norm() // a + rng.randint(1, span)
        f = HermitianForm(a, b, dd)
        if f.is_positive_definite():
            return f

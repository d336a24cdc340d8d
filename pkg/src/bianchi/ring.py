"""Exact arithmetic in imaginary quadratic orders and their fraction fields.

Everything here is immutable and exact.  Algebraic integers are stored as
a + b*omega with omega = (-1 + sqrt(-d))/2 when d = 3 (mod 4) and
omega = sqrt(-d) otherwise; field elements carry rational coordinates with
respect to {1, sqrt(-d)}; quadratic surds p + q*sqrt(m) let us compare
against irrational constants (covering radii and the Bezout constant)
without ever touching floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd, isqrt
from typing import Iterator, Optional, Union

Rational = Union[int, Fraction]


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


# ---------------------------------------------------------------------------
# Quadratic surds
# ---------------------------------------------------------------------------


class SurdValue:
    """The real number p + q*sqrt(m), with rational p, q and integer m >= 0.

    Sign determination, and hence every comparison, is exact: it only needs
    rational arithmetic because sign(p + q*sqrt(m)) is decided by comparing
    p^2 with q^2*m.  Sums and products of surds sharing the same m stay in
    the class.
    """

    __slots__ = ("p", "q", "m")

    def __init__(self, p: Rational, q: Rational = 0, m: int = 1) -> None:
        if m < 0:
            raise ValueError("radicand must be nonnegative")
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.m = m

    def __repr__(self) -> str:
        return f"SurdValue({self.p}, {self.q}, m={self.m})"

    def _coerce(self, other: Union["SurdValue", Rational]) -> "SurdValue":
        if isinstance(other, SurdValue):
            if other.q == 0:
                return SurdValue(other.p, 0, self.m)
            if self.q == 0:
                return SurdValue(other.p, other.q, other.m)
            if other.m != self.m:
                raise ValueError("mixed radicands")
            return other
        return SurdValue(other, 0, self.m)

    def __add__(self, other: Union["SurdValue", Rational]) -> "SurdValue":
        o = self._coerce(other)
        m = o.m if self.q == 0 else self.m
        return SurdValue(self.p + o.p, self.q + o.q, m)

    __radd__ = __add__

    def __neg__(self) -> "SurdValue":
        return SurdValue(-self.p, -self.q, self.m)

    def __sub__(self, other: Union["SurdValue", Rational]) -> "SurdValue":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union["SurdValue", Rational]) -> "SurdValue":
        return (-self) + other

    def __mul__(self, other: Union["SurdValue", Rational]) -> "SurdValue":
        o = self._coerce(other)
        m = o.m if self.q == 0 else self.m
        return SurdValue(
            self.p * o.p + self.q * o.q * m, self.p * o.q + self.q * o.p, m
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            sq = (q > 0) - (q < 0)
            return sq if self.m > 0 else 0
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        t = p * p - q * q * self.m
        st = (t > 0) - (t < 0)
        return st if p > 0 else -st

    def _cmp(self, other: Union["SurdValue", Rational]) -> int:
        return (self - other).sign()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (SurdValue, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self) -> int:  # pragma: no cover - not used as dict keys
        return hash((self.p, self.q * self.q * self.m, self.q < 0))

    def __lt__(self, other: Union["SurdValue", Rational]) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Union["SurdValue", Rational]) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Union["SurdValue", Rational]) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Union["SurdValue", Rational]) -> bool:
        return self._cmp(other) >= 0


def sign_with_sqrt(a: SurdValue, b: SurdValue, r: Rational) -> int:
    """Exact sign of a + b*sqrt(r) for rational r >= 0 and surds a, b.

    This is the sign routine for the degree-4 real field Q(sqrt(m), sqrt(r)):
    reduce to surd arithmetic by comparing a^2 with b^2 * r when the two
    halves disagree in sign.
    """
    r = Fraction(r)
    if r < 0:
        raise ValueError("radicand must be nonnegative")
    if r == 0:
        return a.sign()
    sa, sb = a.sign(), b.sign()
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    t = (a * a - b * b * r).sign()
    return t if sa > 0 else -t


# ---------------------------------------------------------------------------
# Ring and field elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgInt:
    """a + b*omega in the ring of integers of Q(sqrt(-d))."""

    a: int
    b: int
    d: int

    def _check(self, other: "AlgInt") -> None:
        if self.d != other.d:
            raise ValueError("elements of different rings")

    def __add__(self, other: "AlgInt") -> "AlgInt":
        self._check(other)
        return AlgInt(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "AlgInt") -> "AlgInt":
        self._check(other)
        return AlgInt(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "AlgInt":
        return AlgInt(-self.a, -self.b, self.d)

    def __mul__(self, other: Union["AlgInt", int]) -> "AlgInt":
        if isinstance(other, int):
            return AlgInt(self.a * other, self.b * other, self.d)
        self._check(other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if self.d % 4 == 3:
            q = (1 + self.d) // 4
            return AlgInt(a1 * a2 - q * b1 * b2, a1 * b2 + b1 * a2 - b1 * b2, self.d)
        return AlgInt(a1 * a2 - self.d * b1 * b2, a1 * b2 + b1 * a2, self.d)

    def __rmul__(self, other: int) -> "AlgInt":
        return self * other

    def conj(self) -> "AlgInt":
        if self.d % 4 == 3:
            return AlgInt(self.a - self.b, -self.b, self.d)
        return AlgInt(self.a, -self.b, self.d)

    def norm(self) -> int:
        a, b = self.a, self.b
        if self.d % 4 == 3:
            return a * a - a * b + b * b * ((1 + self.d) // 4)
        return a * a + self.d * b * b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def to_field(self) -> "FieldElem":
        if self.d % 4 == 3:
            return FieldElem(
                Fraction(2 * self.a - self.b, 2), Fraction(self.b, 2), self.d
            )
        return FieldElem(Fraction(self.a), Fraction(self.b), self.d)

    def __repr__(self) -> str:
        return f"AlgInt({self.a}, {self.b}, d={self.d})"


@dataclass(frozen=True)
class FieldElem:
    """a + b*sqrt(-d) with rational a, b: an exact point of Q(sqrt(-d))."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _check(self, other: "FieldElem") -> None:
        if self.d != other.d:
            raise ValueError("elements of different fields")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "FieldElem":
        return FieldElem(-self.a, -self.b, self.d)

    def __mul__(self, other: Union["FieldElem", Rational]) -> "FieldElem":
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.a * other, self.b * other, self.d)
        self._check(other)
        return FieldElem(
            self.a * other.a - self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def __rmul__(self, other: Rational) -> "FieldElem":
        return self * other

    def conj(self) -> "FieldElem":
        return FieldElem(self.a, -self.b, self.d)

    def norm_sq(self) -> Fraction:
        return self.a * self.a + self.d * self.b * self.b

    def inverse(self) -> "FieldElem":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Union["FieldElem", Rational]) -> "FieldElem":
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.a / other, self.b / other, self.d)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_alg(self) -> Optional[AlgInt]:
        """The element as an algebraic integer, or None if not integral."""
        if self.d % 4 == 3:
            b2 = 2 * self.b
            ai = self.a + self.b
            if b2.denominator == 1 and ai.denominator == 1:
                return AlgInt(int(ai), int(b2), self.d)
            return None
        if self.a.denominator == 1 and self.b.denominator == 1:
            return AlgInt(int(self.a), int(self.b), self.d)
        return None

    def __repr__(self) -> str:
        return f"FieldElem({self.a}, {self.b}, d={self.d})"


# ---------------------------------------------------------------------------
# Ring context
# ---------------------------------------------------------------------------


class RingContext:
    """Constants and factories for one squarefree d > 0.

    Read-only after construction; shared freely across workers.  `eps_sq` is
    the squared covering radius of the integer lattice in the plane (half
    the diagonal of the rectangular cell for d = 1, 2 (mod 4), the
    circumradius of the fundamental triangle for d = 3 (mod 4)), and
    `c` = 1 + eps is the constant appearing in the bounded Bezout step.
    """

    __slots__ = ("d", "eps_sq", "surd_m", "eps", "c", "c_sq", "units", "unit_count")

    def __init__(self, d: int) -> None:
        if not isinstance(d, int) or d <= 0 or not is_squarefree(d):
            raise ValueError(f"d must be a squarefree positive integer, got {d!r}")
        self.d = d
        if d % 4 == 3:
            self.eps_sq = Fraction((1 + d) ** 2, 16 * d)
            self.surd_m = d
            self.eps = SurdValue(0, Fraction(1 + d, 4 * d), d)
        else:
            self.eps_sq = Fraction(1 + d, 4)
            self.surd_m = 1 + d
            self.eps = SurdValue(0, Fraction(1, 2), 1 + d)
        assert self.eps.q**2 * self.eps.m == self.eps_sq
        self.c = SurdValue(1, 0, self.surd_m) + self.eps
        self.c_sq = self.c * self.c
        if d == 1:
            coords = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        elif d == 3:
            coords = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]
        else:
            coords = [(1, 0), (-1, 0)]
        self.units = tuple(AlgInt(a, b, d) for a, b in coords)
        self.unit_count = len(self.units)

    def __repr__(self) -> str:
        return f"RingContext(d={self.d})"

    @property
    def covering_radius_sq(self) -> Fraction:
        return self.eps_sq

    def alg(self, a: int, b: int = 0) -> AlgInt:
        return AlgInt(a, b, self.d)

    def field(self, a: Rational, b: Rational = 0) -> FieldElem:
        return FieldElem(Fraction(a), Fraction(b), self.d)

    @property
    def zero(self) -> AlgInt:
        return AlgInt(0, 0, self.d)

    @property
    def one(self) -> AlgInt:
        return AlgInt(1, 0, self.d)

    @property
    def omega(self) -> AlgInt:
        return AlgInt(0, 1, self.d)


@lru_cache(maxsize=None)
def context(d: int) -> RingContext:
    return RingContext(d)


def covering_radius_sq(ctx: RingContext) -> Fraction:
    return ctx.eps_sq


def units(ctx: RingContext) -> tuple[AlgInt, ...]:
    return ctx.units


# ---------------------------------------------------------------------------
# Lattice geometry
# ---------------------------------------------------------------------------


def _int_range(center: Fraction, r_sq: Fraction) -> range:
    """Integers i that can satisfy (i - center)^2 <= r_sq (superset)."""
    if r_sq < 0:
        return range(0)
    k = isqrt(int(floor(r_sq))) + 1
    base = floor(center)
    return range(base - k, base + k + 2)


def iter_disk(
    d: int, center_a: Fraction, center_b: Fraction, r_sq: Fraction
) -> Iterator[tuple[int, int]]:
    """All (a, b) with a + b*omega inside the closed disk of squared radius
    r_sq around the point center_a + center_b*sqrt(-d).

    Deterministic order: b ascending, then a ascending.
    """
    ca, cb, r_sq = Fraction(center_a), Fraction(center_b), Fraction(r_sq)
    if d % 4 == 3:
        for b in _int_range(2 * cb, 4 * r_sq / d):
            rem = r_sq - d * (Fraction(b, 2) - cb) ** 2
            if rem < 0:
                continue
            ac = ca + Fraction(b, 2)
            for a in _int_range(ac, rem):
                if (a - ac) ** 2 <= rem:
                    yield (a, b)
    else:
        for b in _int_range(cb, r_sq / d):
            rem = r_sq - d * (b - cb) ** 2
            if rem < 0:
                continue
            for a in _int_range(ca, rem):
                if (a - ca) ** 2 <= rem:
                    yield (a, b)


def round_to_lattice(z: FieldElem) -> AlgInt:
    """The lattice point nearest to z; squared distance at most eps_sq.

    Ties are broken by the lexicographically smallest (a, b).
    """
    ctx = context(z.d)
    best: Optional[tuple[Fraction, int, int]] = None
    for a, b in iter_disk(z.d, z.a, z.b, ctx.eps_sq):
        w = AlgInt(a, b, z.d).to_field() - z
        dist = w.norm_sq()
        key = (dist, a, b)
        if best is None or key < best:
            best = key
    assert best is not None, "covering radius must catch a lattice point"
    return AlgInt(best[1], best[2], z.d)


# ---------------------------------------------------------------------------
# Ideal arithmetic
# ---------------------------------------------------------------------------


def _omega_mul(a: int, b: int, d: int) -> tuple[int, int]:
    """(a + b*omega) * omega in (a, b)-coordinates."""
    if d % 4 == 3:
        return (-b * ((1 + d) // 4), a - b)
    return (-d * b, a)


def norm_coords(d: int, a: int, b: int) -> int:
    if d % 4 == 3:
        return a * a - a * b + b * b * ((1 + d) // 4)
    return a * a + d * b * b


def conj_coords(d: int, a: int, b: int) -> tuple[int, int]:
    if d % 4 == 3:
        return (a - b, -b)
    return (a, -b)


def mul_coords(d: int, xa: int, xb: int, ya: int, yb: int) -> tuple[int, int]:
    if d % 4 == 3:
        q = (1 + d) // 4
        return (xa * ya - q * xb * yb, xa * yb + xb * ya - xb * yb)
    return (xa * ya - d * xb * yb, xa * yb + xb * ya)


def coprime_coords(d: int, xa: int, xb: int, ya: int, yb: int) -> bool:
    """is_coprime on raw coordinates; early exit once the minor gcd hits 1."""
    oxa, oxb = _omega_mul(xa, xb, d)
    oya, oyb = _omega_mul(ya, yb, d)
    g = gcd(xa * oxb - xb * oxa, xa * yb - xb * ya)
    if g == 1:
        return True
    g = gcd(g, xa * oyb - xb * oya)
    if g == 1:
        return True
    g = gcd(g, oxa * yb - oxb * ya)
    if g == 1:
        return True
    g = gcd(g, oxa * oyb - oxb * oya)
    if g == 1:
        return True
    g = gcd(g, ya * oyb - yb * oya)
    return g == 1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def bezout_coords(
    d: int, xa: int, xb: int, ya: int, yb: int
) -> Optional[tuple[int, int, int, int]]:
    """(ua, ub, va, vb) with x*u + y*v = 1, or None when not coprime.

    Fast path: when the two norms are coprime over the integers, the
    combination through conjugates s*conj(x), t*conj(y) works; otherwise a
    small Hermite reduction over the Z-module of the ideal is used.
    """
    nx = norm_coords(d, xa, xb)
    ny = norm_coords(d, ya, yb)
    if nx == 0 and ny == 0:
        return None
    g, s, t = _ext_gcd(nx, ny)
    if g == 1:
        ca, cb = conj_coords(d, xa, xb)
        da, db = conj_coords(d, ya, yb)
        return (s * ca, s * cb, t * da, t * db)
    rows = [
        (xa, xb),
        _omega_mul(xa, xb, d),
        (ya, yb),
        _omega_mul(ya, yb, d),
    ]
    coeffs = _hnf_solve_one(rows)
    if coeffs is None:
        return None
    return (coeffs[0], coeffs[1], coeffs[2], coeffs[3])


def ideal_norm(x: AlgInt, y: AlgInt) -> int:
    """Absolute norm of the ideal generated by x and y.

    Equals the index in the full ring of the Z-module spanned by
    {x, x*omega, y, y*omega}, computed as the gcd of the 2x2 minors of the
    4x2 coordinate matrix (the second determinantal divisor).
    """
    x._check(y)
    if x.is_zero() and y.is_zero():
        raise ValueError("ideal generated by (0, 0)")
    d = x.d
    rows = [
        (x.a, x.b),
        _omega_mul(x.a, x.b, d),
        (y.a, y.b),
        _omega_mul(y.a, y.b, d),
    ]
    g = 0
    for i in range(3):
        ai, bi = rows[i]
        for j in range(i + 1, 4):
            aj, bj = rows[j]
            g = gcd(g, ai * bj - bi * aj)
            if g == 1:
                return 1
    return abs(g)


def is_coprime(x: AlgInt, y: AlgInt) -> bool:
    return ideal_norm(x, y) == 1


def _hnf_solve_one(rows: list[tuple[int, int]]) -> Optional[list[int]]:
    """Integer coefficients expressing (1, 0) in the row span, or None.

    Plain Hermite reduction on an n x 2 integer matrix with a transform
    track; only the combination for the element 1 (= coordinates (1, 0))
    is needed.
    """
    n = len(rows)
    work = [(a, b) + tuple(1 if k == i else 0 for k in range(n)) for i, (a, b) in enumerate(rows)]

    def reduce_column(col: int, active: list[int]) -> Optional[int]:
        live = [i for i in active if work[i][col] != 0]
        if not live:
            return None
        while True:
            live.sort(key=lambda i: abs(work[i][col]))
            p = live[0]
            pv = work[p][col]
            done = True
            for i in live[1:]:
                q = work[i][col] // pv
                if q:
                    work[i] = tuple(wi - q * wp for wi, wp in zip(work[i], work[p]))
                if work[i][col] != 0:
                    done = False
            live = [i for i in live if work[i][col] != 0]
            if done or len(live) == 1:
                break
        if work[p][col] < 0:
            work[p] = tuple(-v for v in work[p])
        return p

    p0 = reduce_column(0, list(range(n)))
    if p0 is None:
        return None
    rest = [i for i in range(n) if i != p0]
    p1 = reduce_column(1, rest)
    g0 = work[p0][0]
    if g0 != 1:
        return None
    h = work[p0][1]
    if h != 0:
        if p1 is None:
            return None
        g1 = work[p1][1]
        if h % g1 != 0:
            return None
        k = h // g1
        work[p0] = tuple(a - k * b for a, b in zip(work[p0], work[p1]))
    assert work[p0][:2] == (1, 0)
    return list(work[p0][2:])


def solve_bezout(x: AlgInt, y: AlgInt) -> tuple[AlgInt, AlgInt]:
    """Some (u, v) with x*u + y*v = 1; requires the pair to be coprime."""
    x._check(y)
    d = x.d
    coeffs = bezout_coords(d, x.a, x.b, y.a, y.b)
    if coeffs is None:
        raise ValueError("arguments are not coprime")
    u = AlgInt(coeffs[0], coeffs[1], d)
    v = AlgInt(coeffs[2], coeffs[3], d)
    assert (x * u + y * v) == AlgInt(1, 0, d)
    return u, v


def solve_bezout_bounded(x: AlgInt, y: AlgInt) -> tuple[AlgInt, AlgInt]:
    """(u, v) with x*u + y*v = 1, |u| <= C|y| and |v| <= C|x|, C = 1 + eps.

    The correction step subtracts the nearest lattice multiple: u stays
    within the covering radius of u0/y scaled by |y|, and the norm bounds
    are then checked exactly through surd comparisons.
    """
    if x.is_zero() or y.is_zero():
        raise ValueError("both arguments must be nonzero")
    u0, v0 = solve_bezout(x, y)
    lam = round_to_lattice(u0.to_field() / y.to_field())
    u = u0 - lam * y
    v = v0 + lam * x
    assert (x * u + y * v) == AlgInt(1, 0, x.d)
    ctx = context(x.d)
    if not (ctx.c_sq * y.norm() >= u.norm()):
        raise AssertionError("bounded Bezout: |u| bound violated")
    if not (ctx.c_sq * x.norm() >= v.norm()):
        raise AssertionError("bounded Bezout: |v| bound violated")
    return u, v


def _mod_key(v: int) -> tuple[int, bool]:
    # orders 0 < 1 < -1 < 2 < -2 < ...
    return (abs(v), v < 0)


def elem_key(x: AlgInt) -> tuple:
    """Deterministic total order: rational integers first (small |b|), then
    modulus-then-sign on each coordinate, so 1 < -1 < omega < -omega < ..."""
    return (*_mod_key(x.b), *_mod_key(x.a))


def pair_key(x: AlgInt, y: AlgInt) -> tuple:
    return (*elem_key(x), *elem_key(y))


def is_principal(x: AlgInt, y: AlgInt) -> tuple[bool, Optional[AlgInt]]:
    """Whether the ideal generated by (x, y) is principal, with a generator.

    Searches generators among elements whose norm equals the ideal norm;
    intended for desk-scale inputs only.
    """
    x._check(y)
    if x.is_zero() and y.is_zero():
        raise ValueError("ideal generated by (0, 0)")
    if y.is_zero():
        return True, x
    if x.is_zero():
        return True, y
    n = ideal_norm(x, y)
    d = x.d
    candidates = [
        AlgInt(a, b, d)
        for a, b in iter_disk(d, Fraction(0), Fraction(0), Fraction(n))
        if AlgInt(a, b, d).norm() == n
    ]
    candidates.sort(key=elem_key)
    for g in candidates:
        xf = x.to_field() / g.to_field()
        xg = xf.to_alg()
        if xg is None:
            continue
        yf = y.to_field() / g.to_field()
        yg = yf.to_alg()
        if yg is None:
            continue
        if is_coprime(xg, yg):
            return True, g
    return False, None

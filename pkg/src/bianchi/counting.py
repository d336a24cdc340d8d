"""Counting group elements and projective points of bounded height.

A determinant-one matrix of height at most T is enumerated through its
first column: the column is a coprime pair with both norms at most T^2,
and for a fixed column the completions form a single coset
(beta0 + lam*alpha, delta0 + lam*gamma) over lattice points lam.  Columns
come in unit-scaling classes of equal completion counts, so the scan walks
one canonical column per class, multiplies by the number of units, and
halves at the end to count modulo the sign of the matrix.

The same scan yields the count with the height attained on the first
column (the inner bound shrinks to the column height) and the Schanuel
counts of principal projective points (coprime pairs up to unit scaling).
"""

from __future__ import annotations

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import Callable, Iterator, Optional

from .geometry import GroupElem, ProjPoint
from .ring import (
    AlgInt,
    RingContext,
    bezout_coords,
    conj_coords,
    coprime_coords,
    is_coprime,
    is_principal,
    iter_disk,
    mul_coords,
    norm_coords,
    round_to_lattice,
    solve_bezout,
    solve_bezout_bounded,
    _int_range,
)


@dataclass(frozen=True)
class CountRow:
    t_sq: int
    n: int
    n_tilde: int
    x: int


@dataclass
class CountTable:
    d: int
    rows: list[CountRow]
    fitted_exponent: Optional[float] = None


@dataclass(frozen=True)
class SandwichReport:
    t_sq: int
    n: int
    n_tilde: int
    x: int
    x_shrunk: int
    lower_ok: bool
    upper_ok: bool
    ratio_tilde_to_x: Fraction


@dataclass(frozen=True)
class GrowthFit:
    slope_n: float
    slope_x: float
    rows: int


# ---------------------------------------------------------------------------
# Low-level lattice helpers (integer coordinates only)
# ---------------------------------------------------------------------------


def _norm_fn(d: int) -> Callable[[int, int], int]:
    if d % 4 == 3:
        q = (1 + d) // 4
        return lambda a, b: a * a - a * b + q * b * b
    return lambda a, b: a * a + d * b * b


def _mul_fn(d: int) -> Callable[[int, int, int, int], tuple[int, int]]:
    if d % 4 == 3:
        q = (1 + d) // 4
        return lambda xa, xb, ya, yb: (xa * ya - q * xb * yb, xa * yb + xb * ya - xb * yb)
    return lambda xa, xb, ya, yb: (xa * ya - d * xb * yb, xa * yb + xb * ya)


def _unit_maps(d: int) -> list[Callable[[int, int], tuple[int, int]]]:
    if d == 1:
        return [
            lambda a, b: (a, b),
            lambda a, b: (-b, a),
            lambda a, b: (-a, -b),
            lambda a, b: (b, -a),
        ]
    if d == 3:
        # successive multiplication by omega, then the negatives
        return [
            lambda a, b: (a, b),
            lambda a, b: (-b, a - b),
            lambda a, b: (b - a, -a),
            lambda a, b: (-a, -b),
            lambda a, b: (b, b - a),
            lambda a, b: (a - b, a),
        ]
    return [lambda a, b: (a, b), lambda a, b: (-a, -b)]


def _is_canonical_column(
    maps: list[Callable[[int, int], tuple[int, int]]],
    aa: int,
    ab: int,
    ga: int,
    gb: int,
) -> bool:
    key = (aa, ab, ga, gb)
    for f in maps:
        ua, ub = f(aa, ab)
        va, vb = f(ga, gb)
        if (ua, ub, va, vb) < key:
            return False
    return True


def _iter_box(d: int, ca: Fraction, cb: Fraction, r_sq: Fraction) -> Iterator[tuple[int, int]]:
    """Integer pairs covering the disk of squared radius r_sq around
    (ca, cb) in embedded coordinates; callers filter exactly."""
    if d % 4 == 3:
        for b in _int_range(2 * cb, 4 * r_sq / d):
            for a in _int_range(ca + Fraction(b, 2), r_sq):
                yield (a, b)
    else:
        for b in _int_range(cb, r_sq / d):
            for a in _int_range(ca, r_sq):
                yield (a, b)


# ---------------------------------------------------------------------------
# The column scan
# ---------------------------------------------------------------------------


def _omega_round(d: int, ca: Fraction, cb: Fraction) -> tuple[int, int]:
    # a lattice point near the (omega-coordinate) rational point; need not
    # be the nearest, only boundedly close
    la = round(ca)
    lb = round(cb)
    return la, lb


def _completion_counts(
    d: int,
    t_sq: int,
    aa: int,
    ab: int,
    ga: int,
    gb: int,
    na: int,
    ng: int,
) -> tuple[int, int]:
    """(all completions, completions with height on the first column) for
    one coprime column, over the lattice coset of second columns.

    Coordinates only: the coset is re-centered so that integer products in
    the inner loop stay small.
    """
    bez = bezout_coords(d, aa, ab, ga, gb)
    assert bez is not None
    # alpha*u + gamma*v = 1 -> delta0 = u, beta0 = -v
    d0a, d0b, b0a, b0b = bez[0], bez[1], -bez[2], -bez[3]
    hcol = na if na >= ng else ng
    if na >= ng:
        xa, xb, n_anchor = aa, ab, na
        pa, pb = b0a, b0b
    else:
        xa, xb, n_anchor = ga, gb, ng
        pa, pb = d0a, d0b
    # center of the coset disk: -base/anchor in omega coordinates
    ka, kb = conj_coords(d, xa, xb)
    ta, tb = mul_coords(d, pa, pb, ka, kb)
    ca = Fraction(-ta, n_anchor)
    cb = Fraction(-tb, n_anchor)
    l0a, l0b = _omega_round(d, ca, cb)
    if l0a or l0b:
        sa, sb = mul_coords(d, l0a, l0b, aa, ab)
        b0a, b0b = b0a + sa, b0b + sb
        sa, sb = mul_coords(d, l0a, l0b, ga, gb)
        d0a, d0b = d0a + sa, d0b + sb
        ca -= l0a
        cb -= l0b
    # omega coordinates -> embedded coordinates for the box walk
    if d % 4 == 3:
        ea, eb = ca - cb / 2, cb / 2
        q = (1 + d) // 4
    else:
        ea, eb = ca, cb
        q = 0
    r_sq = Fraction(t_sq, n_anchor)
    count = 0
    count_tilde = 0
    if d % 4 == 3:
        for la, lb in _iter_box(d, ea, eb, r_sq):
            ba = b0a + la * aa - q * lb * ab
            bb = b0b + la * ab + lb * aa - lb * ab
            nb = ba * ba - ba * bb + q * bb * bb
            if nb > t_sq:
                continue
            da = d0a + la * ga - q * lb * gb
            db = d0b + la * gb + lb * ga - lb * gb
            nd = da * da - da * db + q * db * db
            if nd > t_sq:
                continue
            count += 1
            if nb <= hcol and nd <= hcol:
                count_tilde += 1
    else:
        for la, lb in _iter_box(d, ea, eb, r_sq):
            ba = b0a + la * aa - d * lb * ab
            bb = b0b + la * ab + lb * aa
            nb = ba * ba + d * bb * bb
            if nb > t_sq:
                continue
            da = d0a + la * ga - d * lb * gb
            db = d0b + la * gb + lb * ga
            nd = da * da + d * db * db
            if nd > t_sq:
                continue
            count += 1
            if nb <= hcol and nd <= hcol:
                count_tilde += 1
    return count, count_tilde


def _scan_chunk(args: tuple) -> tuple[int, int, int, int]:
    """Totals over a chunk of first entries: SL completions, SL completions
    with column-dominant height, coprime columns, coprime columns under the
    shrunken height bound.  Only canonical columns per unit class count."""
    d, t_sq, n_star, alpha_chunk, all_points = args
    norm = _norm_fn(d)
    maps = _unit_maps(d)
    sl = sl_tilde = pairs = pairs_shrunk = 0
    for aa, ab in alpha_chunk:
        na = norm(aa, ab)
        for ga, gb in all_points:
            if aa == 0 and ab == 0 and ga == 0 and gb == 0:
                continue
            if not _is_canonical_column(maps, aa, ab, ga, gb):
                continue
            if not coprime_coords(d, aa, ab, ga, gb):
                continue
            pairs += 1
            ng = norm(ga, gb)
            if (na if na >= ng else ng) <= n_star:
                pairs_shrunk += 1
            c, ct = _completion_counts(d, t_sq, aa, ab, ga, gb, na, ng)
            sl += c
            sl_tilde += ct
    return sl, sl_tilde, pairs, pairs_shrunk


def max_height_sq_within(ctx: RingContext, t_sq: int) -> int:
    """Largest integer n with n * C^2 <= t_sq: the squared height cutoff
    corresponding to T/C, decided exactly by surd comparison."""
    lo, hi = 0, t_sq
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if ctx.c_sq * mid <= t_sq:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _scan_columns(
    ctx: RingContext, t_sq: int, workers: int = 1
) -> tuple[int, int, int, int]:
    """(N, N_tilde, X, X_shrunk), all counted modulo the matrix sign."""
    if t_sq < 1:
        raise ValueError("height bound must be at least 1")
    d = ctx.d
    points = list(iter_disk(d, Fraction(0), Fraction(0), Fraction(t_sq)))
    n_star = max_height_sq_within(ctx, t_sq)
    if workers <= 1:
        sl, sl_tilde, pairs, pairs_shrunk = _scan_chunk(
            (d, t_sq, n_star, points, points)
        )
    else:
        chunks = [points[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _scan_chunk,
                    [(d, t_sq, n_star, chunk, points) for chunk in chunks],
                )
            )
        sl = sum(p[0] for p in parts)
        sl_tilde = sum(p[1] for p in parts)
        pairs = sum(p[2] for p in parts)
        pairs_shrunk = sum(p[3] for p in parts)
    u = ctx.unit_count
    assert (sl * u) % 2 == 0 and (sl_tilde * u) % 2 == 0
    return (sl * u) // 2, (sl_tilde * u) // 2, pairs, pairs_shrunk


def count_bounded_elements(ctx: RingContext, t_sq: int, workers: int = 1) -> int:
    """Number of group elements (mod sign) with all entry norms <= t_sq."""
    return _scan_columns(ctx, t_sq, workers)[0]


def count_column_dominant(ctx: RingContext, t_sq: int, workers: int = 1) -> int:
    """Elements of height at most T whose height is attained on the first
    column, i.e. squared height equals max(|alpha|^2, |gamma|^2)."""
    return _scan_columns(ctx, t_sq, workers)[1]


def count_principal_points(ctx: RingContext, t_sq: int, workers: int = 1) -> int:
    """Projective points with principal coordinate ideal and squared height
    at most t_sq: coprime representative pairs up to unit scaling."""
    return _scan_columns(ctx, t_sq, workers)[2]


def iter_bounded_elements(ctx: RingContext, t_sq: int) -> Iterator[GroupElem]:
    """All group elements (each sign class once) with entry norms <= t_sq.

    Intended for small bounds: tests, invariance checks, and the exhaustive
    intricacy search.
    """
    if t_sq < 1:
        raise ValueError("height bound must be at least 1")
    d = ctx.d
    norm = _norm_fn(d)
    points = list(iter_disk(d, Fraction(0), Fraction(0), Fraction(t_sq)))
    for aa, ab in points:
        for ga, gb in points:
            if aa == 0 and ab == 0 and ga == 0 and gb == 0:
                continue
            alpha = AlgInt(aa, ab, d)
            gamma = AlgInt(ga, gb, d)
            if not is_coprime(alpha, gamma):
                continue
            x0, y0 = solve_bezout(alpha, gamma)
            beta0, delta0 = -y0, x0
            on_alpha = norm(aa, ab) >= norm(ga, gb)
            anchor = alpha if on_alpha else gamma
            n_anchor = anchor.norm()
            base = beta0 if on_alpha else delta0
            lam0 = round_to_lattice(base.to_field() / anchor.to_field())
            beta0 -= lam0 * alpha
            delta0 -= lam0 * gamma
            center = -(beta0 if on_alpha else delta0).to_field() / anchor.to_field()
            for la, lb in _iter_box(d, center.a, center.b, Fraction(t_sq, n_anchor)):
                lam = AlgInt(la, lb, d)
                beta = beta0 + lam * alpha
                delta = delta0 + lam * gamma
                if beta.norm() > t_sq or delta.norm() > t_sq:
                    continue
                g = GroupElem(alpha, beta, gamma, delta)
                if g.entries() == (alpha, beta, gamma, delta):
                    yield g


def lift(ctx: RingContext, pt: ProjPoint) -> GroupElem:
    """A group element whose first column represents pt, of height at most
    C times the height of pt (checked exactly).

    Only defined for points whose coordinate ideal is principal; the
    representative is the coprime pair obtained by dividing out a
    generator.
    """
    ok, gen = is_principal(pt.x, pt.y)
    if not ok:
        raise ValueError("point class is not principal")
    assert gen is not None
    alpha = (pt.x.to_field() / gen.to_field()).to_alg()
    gamma = (pt.y.to_field() / gen.to_field()).to_alg()
    assert alpha is not None and gamma is not None
    d = ctx.d
    if gamma.is_zero():
        out = GroupElem.identity(d)
    elif alpha.is_zero():
        out = GroupElem.inversion(d)
    else:
        x, y = solve_bezout_bounded(alpha, gamma)
        out = GroupElem(alpha, -y, gamma, x)
    if not (ctx.c_sq * pt.height_sq() >= out.height_sq()):
        raise AssertionError("lift height bound failed")
    assert out.first_column() == pt
    return out


def sandwich_check(ctx: RingContext, t_sq: int, workers: int = 1) -> SandwichReport:
    """Exact inequalities at one height: the shrunken point count is at most
    N, and N is at most 4 times the column-dominant count."""
    n, n_tilde, x, x_shrunk = _scan_columns(ctx, t_sq, workers)
    return SandwichReport(
        t_sq=t_sq,
        n=n,
        n_tilde=n_tilde,
        x=x,
        x_shrunk=x_shrunk,
        lower_ok=x_shrunk <= n,
        upper_ok=n <= 4 * n_tilde,
        ratio_tilde_to_x=Fraction(n_tilde, x),
    )


def build_table(
    ctx: RingContext, t_sq_grid: list[int], workers: int = 1
) -> CountTable:
    rows = []
    for t_sq in t_sq_grid:
        n, n_tilde, x, _ = _scan_columns(ctx, t_sq, workers)
        rows.append(CountRow(t_sq, n, n_tilde, x))
    return CountTable(ctx.d, rows)


def fit_growth(table: CountTable) -> GrowthFit:
    """Least-squares slope of log N (and log X) against log T.

    The only floating-point computation in the package; everything feeding
    it is an exact integer count.
    """
    rows = [r for r in table.rows]
    if len(rows) < 4:
        raise ValueError("need at least 4 rows to fit a slope")
    t = [r.t_sq for r in rows]
    if any(b <= a for a, b in zip(t, t[1:])):
        raise ValueError("heights must be strictly increasing")
    xs = [0.5 * log(r.t_sq) for r in rows]
    slope_n = statistics.linear_regression(xs, [log(r.n) for r in rows]).slope
    slope_x = statistics.linear_regression(xs, [log(r.x) for r in rows]).slope
    table.fitted_exponent = slope_n
    return GrowthFit(slope_n=slope_n, slope_x=slope_x, rows=len(rows))

"""Reduction of points into the fundamental domain with height certificates.

The algorithm is two-stage.  First a group element tau built from the
minimal-denominator pair raises the point into the region above all
hemispheres: a bounded Bezout completion keeps its height within
C * max(|gamma0|, |delta0|), where C = 1 + eps and eps is the covering
radius of the integer lattice.  Then an element sigma of the stabilizer
of infinity translates (plus a unit rotation when there are extra units)
the complex coordinate into the cusp polygon.  Every inequality in the
certificate is checked exactly; the headline bound is

    height_sq(gamma) <= (16 C^2)^2 * complexity_sq(P)^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .fundamental import (
    DenominatorWitness,
    in_fundamental_domain,
    in_polygon,
    max_polygon_norm_sq,
    minimal_denominator,
)
from .geometry import GroupElem, Point, _rat_str
from .ring import (
    AlgInt,
    FieldElem,
    RingContext,
    SurdValue,
    round_to_lattice,
    sign_with_sqrt,
    solve_bezout_bounded,
)

BRANCH_ALREADY_IN_F = "already_in_F"
BRANCH_UNIT_COLUMN = "unit_column"
BRANCH_GENERAL = "general"


@dataclass(frozen=True)
class ReductionCertificate:
    """A verified reduction: gamma sends the original point to image.

    bound_ok records the exact surd comparison
    height_sq <= 256 * C^4 * complexity_sq^2.
    """

    gamma: GroupElem
    image: Point
    complexity_sq: Fraction
    height_sq: int
    bound_ok: bool
    branch: str

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.to_json(),
            "image": self.image.to_json(),
            "D_sq": _rat_str(self.complexity_sq),
            "height_sq": str(self.height_sq),
            "bound_ok": self.bound_ok,
            "branch": self.branch,
        }

    @classmethod
    def from_json(cls, d: int, obj: dict) -> "ReductionCertificate":
        return cls(
            gamma=GroupElem.from_json(d, obj["gamma"]),
            image=Point.from_json(d, obj["image"]),
            complexity_sq=Fraction(obj["D_sq"]),
            height_sq=int(obj["height_sq"]),
            bound_ok=bool(obj["bound_ok"]),
            branch=str(obj["branch"]),
        )


def certificate_bound(ctx: RingContext) -> SurdValue:
    """The exact certificate constant (16 C^2)^2 = 256 C^4."""
    return ctx.c_sq * ctx.c_sq * 256


def _check_certificate_bound(ctx: RingContext, height_sq: int, d_sq: Fraction) -> bool:
    return certificate_bound(ctx) * (d_sq * d_sq) >= height_sq


def maximize_height(
    ctx: RingContext, p: Point, witness: DenominatorWitness | None = None
) -> tuple[GroupElem, Point]:
    """A group element tau with tau(p) above all hemispheres.

    tau(p) has the largest squared height in the orbit, namely
    s / m_star^2.  The degenerate witnesses (one entry zero, the other a
    unit) give height-one elements; otherwise the bounded Bezout completion
    of the witness pair is used and its inequalities are checked exactly.
    """
    w = witness if witness is not None else minimal_denominator(ctx, p)
    if w.m_star >= 1:
        tau = GroupElem.identity(ctx.d)
    elif w.delta0.is_zero():
        tau = GroupElem.inversion(ctx.d)
    else:
        # both entries nonzero: delta0 = 0 was handled, and gamma0 = 0
        # forces a unit delta0, i.e. m_star = 1
        x, y = solve_bezout_bounded(w.delta0, -w.gamma0)
        tau = GroupElem(x, y, w.gamma0, w.delta0)
        ngamma = w.gamma0.norm()
        hsq = tau.height_sq()
        if not (ngamma <= hsq):
            raise AssertionError("height chain: lower bound failed")
        if not (ctx.c_sq * (4 * ngamma * p.complexity_sq()) >= hsq):
            raise AssertionError("height chain: upper bound failed")
    p1 = tau.apply(p)
    assert p1.s == p.s / (w.m_star * w.m_star)
    return tau, p1


def _shift_height_bound(ctx: RingContext) -> SurdValue:
    """Exact bound on |sigma| for the polygon translation: |z| plus the
    larger of C and the polygon's far-corner radius.

    With the origin-cornered polygons used here the far corner can exceed
    C for some d, so the provable constant is max(C, R) where
    R^2 = max_polygon_norm_sq.
    """
    r_sq = max_polygon_norm_sq(ctx)
    minus_one = SurdValue(0, -1, 1)
    if sign_with_sqrt(ctx.c, minus_one, r_sq) >= 0:
        return ctx.c
    if ctx.d % 4 == 3:
        # r_sq = (4 + d)/4
        return SurdValue(0, Fraction(1, 2), 4 + ctx.d)
    return SurdValue(0, 1, 1 + ctx.d)


def _check_shift_bound(ctx: RingContext, sigma: GroupElem, z: FieldElem) -> None:
    k = _shift_height_bound(ctx)
    r = z.norm_sq()
    # height_sq(sigma) <= (|z| + K)^2, decided in Q(sqrt(m), sqrt(r))
    lhs = k * k + r - sigma.height_sq()
    if sign_with_sqrt(lhs, 2 * k, r) < 0:
        raise AssertionError("translation height bound failed")


def _translation(ctx: RingContext, mu: AlgInt) -> GroupElem:
    return GroupElem(ctx.one, mu, ctx.zero, ctx.one)


def _unit_upper(ctx: RingContext, u: AlgInt, mu: AlgInt) -> GroupElem:
    return GroupElem(u, mu, ctx.zero, u.conj())


def translate_to_polygon(ctx: RingContext, z: FieldElem) -> GroupElem:
    """An element of the stabilizer of infinity moving z into the polygon.

    Pure translation except for the unit-rich rings: d = 1 may need the
    half-turn z -> -z, d = 3 searches the three cube-root rotations with a
    small translation neighbourhood.  The exact height check compares
    against (|z| + max(C, R))^2 with R the polygon's far-corner radius.
    """
    d = ctx.d
    sigma = None
    if in_polygon(ctx, z):
        sigma = GroupElem.identity(d)
    elif d == 1:
        b1 = z.b - floor(z.b)
        if b1 <= Fraction(1, 2):
            m2 = -floor(z.b)
            m1 = -floor(z.a + Fraction(1, 2))
            sigma = _translation(ctx, ctx.alg(m1, m2))
        else:
            w = -z
            m2 = -floor(w.b)
            m1 = -floor(w.a + Fraction(1, 2))
            shift = ctx.alg(m1, m2)
            u = ctx.alg(0, 1)
            mu = u.conj() * shift  # u * mu equals the plain shift
            sigma = _unit_upper(ctx, u, mu)
    elif d == 3:
        for u in (ctx.one, ctx.omega, ctx.omega * ctx.omega):
            u2 = (u * u).to_field()
            w = u2 * z
            base = -round_to_lattice(w)
            for db in (-1, 0, 1):
                for da in (-1, 0, 1):
                    shift = base + ctx.alg(da, db)
                    if in_polygon(ctx, w + shift.to_field()):
                        sigma = _unit_upper(ctx, u, u.conj() * shift)
                        break
                if sigma is not None:
                    break
            if sigma is not None:
                break
        if sigma is None:
            raise AssertionError("polygon search failed for d = 3")
    else:
        if d % 4 == 3:
            m2 = -floor(2 * z.b)
            m1 = -floor(z.a - Fraction(m2, 2))
        else:
            m2 = -floor(z.b)
            m1 = -floor(z.a)
        sigma = _translation(ctx, ctx.alg(m1, m2))
    image = _boundary_image(sigma, z)
    if not in_polygon(ctx, image):
        raise AssertionError("translation missed the polygon")
    _check_shift_bound(ctx, sigma, z)
    return sigma


def _boundary_image(sigma: GroupElem, z: FieldElem) -> FieldElem:
    # upper-triangular action on the boundary plane: z -> u^2 z + u mu
    u, mu = sigma.alpha.to_field(), sigma.beta.to_field()
    return u * u * z + u * mu


def reduce_point(ctx: RingContext, p: Point) -> ReductionCertificate:
    """Send p into the fundamental domain with an exactly verified
    certificate; identity when p is already inside."""
    if p.d != ctx.d:
        raise ValueError("point and context disagree on d")
    w = minimal_denominator(ctx, p)
    d_sq = p.complexity_sq()
    if w.m_star >= 1 and in_polygon(ctx, p.z):
        gamma = GroupElem.identity(ctx.d)
        return ReductionCertificate(
            gamma, p, d_sq, 1, _check_certificate_bound(ctx, 1, d_sq), BRANCH_ALREADY_IN_F
        )
    tau, p1 = maximize_height(ctx, p, witness=w)
    sigma = translate_to_polygon(ctx, p1.z)
    gamma = sigma.compose(tau)
    image = gamma.apply(p)
    assert image == sigma.apply(p1)
    hsq = gamma.height_sq()
    if hsq > 4 * sigma.height_sq() * tau.height_sq():
        raise AssertionError("submultiplicative height bound failed")
    if not in_fundamental_domain(ctx, image):
        raise AssertionError("reduction missed the fundamental domain")
    branch = (
        BRANCH_UNIT_COLUMN
        if (w.m_star >= 1 or w.delta0.is_zero())
        else BRANCH_GENERAL
    )
    bound_ok = _check_certificate_bound(ctx, hsq, d_sq)
    if not bound_ok:
        raise AssertionError("certificate bound failed")
    return ReductionCertificate(gamma, image, d_sq, hsq, bound_ok, branch)


def intricacy_bound_sq(ctx: RingContext, p: Point) -> int:
    """Squared height of the certificate element: an upper bound for the
    squared minimal height over all elements carrying p into the domain."""
    return reduce_point(ctx, p).height_sq


def sharpness_witness(ctx: RingContext, n: int) -> tuple[GroupElem, Point]:
    """The witness family showing the quadratic exponent is sharp.

    For n >= 2: sigma_n = [[n, 1 - n^2], [-1, n]] sends
    ((2n^2 - 1)/(2n), s = 1/(4n^2)) to (0, s = n^2); its squared height is
    (n^2 - 1)^2 while the squared complexity of the point is 4n^2, so the
    ratio height/complexity^2 tends to the constant 1/4.
    """
    if n < 2:
        raise ValueError("witness family needs n >= 2")
    sigma = GroupElem(
        ctx.alg(n), ctx.alg(1 - n * n), ctx.alg(-1), ctx.alg(n)
    )
    p = Point(ctx.field(Fraction(2 * n * n - 1, 2 * n)), Fraction(1, 4 * n * n))
    image = sigma.apply(p)
    assert image.z.is_zero() and image.s == n * n
    assert sigma.height_sq() == (n * n - 1) ** 2
    assert p.complexity_sq() == 4 * n * n
    return sigma, p

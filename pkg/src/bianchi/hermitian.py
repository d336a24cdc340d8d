"""Binary Hermitian forms over the integers of Q(sqrt(-d)).

A form a|X|^2 + 2 Re(b X conj(Z)) + dd |Z|^2 is stored by its matrix
[[a, b], [conj(b), dd]] with integer diagonal.  Positive definite forms
correspond to upper half-space points through f -> (-b/a, sqrt(disc)/a);
that bijection intertwines the group action on points with the transport
f -> (g^-1)^* f (g^-1) on matrices, so reducing a form is reducing its
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import GroupElem, Point
from .reduction import ReductionCertificate, certificate_bound, reduce_point
from .ring import AlgInt, FieldElem, RingContext

from .fundamental import in_fundamental_domain


@dataclass(frozen=True)
class HermitianForm:
    a: int
    b: AlgInt
    dd: int

    @property
    def d(self) -> int:
        return self.b.d

    def discriminant(self) -> int:
        return self.a * self.dd - self.b.norm()

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant() > 0

    def height_sq(self) -> int:
        """Squared height max(a, |b|, dd)^2; diagonal entries are positive
        for definite forms, so squaring commutes with the maximum."""
        return max(self.a * self.a, self.b.norm(), self.dd * self.dd)

    def to_point(self) -> Point:
        """The associated upper half-space point (-b/a, s = disc/a^2)."""
        if not self.is_positive_definite():
            raise ValueError("only positive definite forms define a point")
        z = self.b.to_field() / (-self.a)
        return Point(z, Fraction(self.discriminant(), self.a * self.a))

    def evaluate(self, x: AlgInt, z: AlgInt) -> int:
        """f(x, z) as an integer: a|x|^2 + 2 Re(b x conj(z)) + dd |z|^2."""
        cross = self.b * x * z.conj()
        tr = cross + cross.conj()
        assert tr.b == 0
        return self.a * x.norm() + tr.a + self.dd * z.norm()

    def to_json(self) -> dict:
        return {"a": self.a, "b": [self.b.a, self.b.b], "dd": self.dd}

    @classmethod
    def from_json(cls, d: int, obj: dict) -> "HermitianForm":
        ba, bb = obj["b"]
        return cls(int(obj["a"]), AlgInt(int(ba), int(bb), d), int(obj["dd"]))


@dataclass(frozen=True)
class FieldForm:
    """A Hermitian form with entries in the field: the unit-leading
    representative of a point, (1, -z, |z|^2 + s)."""

    a: Fraction
    b: FieldElem
    dd: Fraction

    def discriminant(self) -> Fraction:
        return self.a * self.dd - self.b.norm_sq()

    def scaled(self, k: Fraction | int) -> "FieldForm":
        k = Fraction(k)
        return FieldForm(self.a * k, self.b * k, self.dd * k)

    def to_integral(self) -> HermitianForm | None:
        """The same form over the integers, when every entry is integral."""
        b = self.b.to_alg()
        if b is None or self.a.denominator != 1 or self.dd.denominator != 1:
            return None
        return HermitianForm(int(self.a), b, int(self.dd))

    @classmethod
    def from_point(cls, p: Point) -> "FieldForm":
        return cls(Fraction(1), -p.z, p.z.norm_sq() + p.s)


def _real_int(x: AlgInt) -> int:
    if x.b != 0:
        raise AssertionError("transported form has a non-real diagonal")
    return x.a


def act(g: GroupElem, f: HermitianForm) -> HermitianForm:
    """Transport of f along g: matrix (g^-1)^* F (g^-1).

    Chosen so that the point of act(g, f) is g applied to the point of f;
    the discriminant and definiteness are preserved.
    """
    m = g.inverse()
    bc = f.b.conj()
    fa = AlgInt(f.a, 0, f.d)
    fd = AlgInt(f.dd, 0, f.d)
    # columns of F * m
    c00 = fa * m.alpha + f.b * m.gamma
    c01 = fa * m.beta + f.b * m.delta
    c10 = bc * m.alpha + fd * m.gamma
    c11 = bc * m.beta + fd * m.delta
    r00 = m.alpha.conj() * c00 + m.gamma.conj() * c10
    r01 = m.alpha.conj() * c01 + m.gamma.conj() * c11
    r11 = m.beta.conj() * c01 + m.delta.conj() * c11
    out = HermitianForm(_real_int(r00), r01, _real_int(r11))
    assert out.discriminant() == f.discriminant()
    return out


def is_reduced(ctx: RingContext, f: HermitianForm) -> bool:
    """A positive definite form is reduced when its point lies in the
    fundamental domain."""
    return in_fundamental_domain(ctx, f.to_point())


def point_complexity_bound(f: HermitianForm) -> bool:
    """Exact check that the point's complexity obeys
    complexity_sq <= height_sq / disc (true for every definite form)."""
    return f.to_point().complexity_sq() <= Fraction(f.height_sq(), f.discriminant())


@dataclass(frozen=True)
class FormReduction:
    g: GroupElem
    reduced: HermitianForm
    certificate: ReductionCertificate

    def to_json(self) -> dict:
        out = self.certificate.to_json()
        out["f_red"] = self.reduced.to_json()
        return out


def reduce_form(ctx: RingContext, f: HermitianForm) -> FormReduction:
    """Reduce a positive definite form; both height bounds are exact:
    height_sq(g) <= 256 C^4 * complexity_sq^2 and, through the complexity
    bound, <= 256 C^4 * (height_sq(f)/disc)^2."""
    if not f.is_positive_definite():
        raise ValueError("form must be positive definite")
    cert = reduce_point(ctx, f.to_point())
    g = cert.gamma
    f_red = act(g, f)
    if f_red.to_point() != cert.image:
        raise AssertionError("transport disagrees with the point reduction")
    if not cert.bound_ok:
        raise AssertionError("certificate bound failed")
    hf_over_disc = Fraction(f.height_sq(), f.discriminant())
    if not (certificate_bound(ctx) * (hf_over_disc * hf_over_disc) >= cert.height_sq):
        raise AssertionError("form height bound failed")
    return FormReduction(g, f_red, cert)

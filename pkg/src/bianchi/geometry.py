"""Upper half-space geometry with exact coordinates.

Points store the squared height s = t^2: every formula we need (the Moebius
action, membership predicates, the complexity gauge) only ever involves t^2,
so all geometry stays inside rational arithmetic.  Group elements are
determinant-one matrices over the ring of integers, canonicalized modulo
the sign of the whole matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .ring import AlgInt, FieldElem, Rational, ideal_norm


def _rat_str(x: Rational) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class Point:
    """(z, s) with z in Q(sqrt(-d)) and s = t^2 > 0 rational."""

    z: FieldElem
    s: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", Fraction(self.s))
        if self.s <= 0:
            raise ValueError("squared height must be positive")

    @property
    def d(self) -> int:
        return self.z.d

    def complexity_sq(self) -> Fraction:
        """max(1, |z|, 1/t) squared: the gauge controlling reduction cost."""
        return max(Fraction(1), self.z.norm_sq(), 1 / self.s)

    def to_json(self) -> dict:
        return {
            "z": {"A": _rat_str(self.z.a), "B": _rat_str(self.z.b)},
            "s": _rat_str(self.s),
        }

    @classmethod
    def from_json(cls, d: int, obj: dict) -> "Point":
        return cls(
            FieldElem(Fraction(obj["z"]["A"]), Fraction(obj["z"]["B"]), d),
            Fraction(obj["s"]),
        )


@dataclass(frozen=True)
class ProjPoint:
    """(x : y) on the projective line over Q(sqrt(-d)), x, y integral."""

    x: AlgInt
    y: AlgInt

    def __post_init__(self) -> None:
        self.x._check(self.y)
        if self.x.is_zero() and self.y.is_zero():
            raise ValueError("(0 : 0) is not a projective point")

    @property
    def d(self) -> int:
        return self.x.d

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return (self.x * other.y) == (other.x * self.y)

    __hash__ = None  # type: ignore[assignment]  # projective equality only

    def height_sq(self) -> Fraction:
        """Squared projective height: max entry norm over the ideal norm.

        Invariant under scaling both coordinates by a nonzero integer.
        """
        return Fraction(max(self.x.norm(), self.y.norm()), ideal_norm(self.x, self.y))


class GroupElem:
    """A determinant-one matrix over the integers of Q(sqrt(-d)), mod +-1.

    The stored representative is the one whose first nonzero entry, in the
    reading order (alpha, beta, gamma, delta), has lexicographically
    positive (a, b) coordinates; this makes equality and hashing canonical.
    """

    __slots__ = ("alpha", "beta", "gamma", "delta")

    def __init__(self, alpha: AlgInt, beta: AlgInt, gamma: AlgInt, delta: AlgInt) -> None:
        for e in (beta, gamma, delta):
            alpha._check(e)
        det = alpha * delta - beta * gamma
        if det.a != 1 or det.b != 0:
            raise ValueError(f"determinant must be 1, got {det}")
        for e in (alpha, beta, gamma, delta):
            if not e.is_zero():
                if (e.a, e.b) < (0, 0):
                    alpha, beta, gamma, delta = -alpha, -beta, -gamma, -delta
                break
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.delta = delta

    @property
    def d(self) -> int:
        return self.alpha.d

    @classmethod
    def identity(cls, d: int) -> "GroupElem":
        return cls(AlgInt(1, 0, d), AlgInt(0, 0, d), AlgInt(0, 0, d), AlgInt(1, 0, d))

    @classmethod
    def inversion(cls, d: int) -> "GroupElem":
        """[[0, -1], [1, 0]]: swaps zero and infinity on the boundary."""
        return cls(AlgInt(0, 0, d), AlgInt(-1, 0, d), AlgInt(1, 0, d), AlgInt(0, 0, d))

    def entries(self) -> tuple[AlgInt, AlgInt, AlgInt, AlgInt]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __repr__(self) -> str:
        e = self.entries()
        return "GroupElem[[{}, {}], [{}, {}]]".format(*e)

    def compose(self, other: "GroupElem") -> "GroupElem":
        if self.d != other.d:
            raise ValueError("elements of different groups")
        return GroupElem(
            self.alpha * other.alpha + self.beta * other.gamma,
            self.alpha * other.beta + self.beta * other.delta,
            self.gamma * other.alpha + self.delta * other.gamma,
            self.gamma * other.beta + self.delta * other.delta,
        )

    def __matmul__(self, other: "GroupElem") -> "GroupElem":
        return self.compose(other)

    def inverse(self) -> "GroupElem":
        return GroupElem(self.delta, -self.beta, -self.gamma, self.alpha)

    def transpose(self) -> "GroupElem":
        return GroupElem(self.alpha, self.gamma, self.beta, self.delta)

    def height_sq(self) -> int:
        """Squared height: the maximum of the four entry norms."""
        return max(e.norm() for e in self.entries())

    def apply(self, p: Point) -> Point:
        """Moebius action on upper half-space, entirely in rationals.

        With q = |gamma*z + delta|^2 + |gamma|^2 * s the image is
        (((alpha*z + beta) * conj(gamma*z + delta) + alpha*conj(gamma)*s) / q,
        s / q^2); q is positive because the matrix is invertible and s > 0.
        """
        if p.d != self.d:
            raise ValueError("point and matrix live over different fields")
        z, s = p.z, p.s
        a, b = self.alpha.to_field(), self.beta.to_field()
        g, dl = self.gamma.to_field(), self.delta.to_field()
        w = g * z + dl
        q = w.norm_sq() + Fraction(self.gamma.norm()) * s
        num = (a * z + b) * w.conj() + (a * g.conj()) * s
        return Point(num / q, s / (q * q))

    def apply_to_boundary(self, pt: ProjPoint) -> ProjPoint:
        if pt.d != self.d:
            raise ValueError("point and matrix live over different fields")
        return ProjPoint(
            self.alpha * pt.x + self.beta * pt.y,
            self.gamma * pt.x + self.delta * pt.y,
        )

    def first_column(self) -> ProjPoint:
        """The boundary point (alpha : gamma); image of infinity under the
        inverse transpose, and the column on which heights are compared."""
        return ProjPoint(self.alpha, self.gamma)

    def to_json(self) -> dict:
        return {
            "alpha": [self.alpha.a, self.alpha.b],
            "beta": [self.beta.a, self.beta.b],
            "gamma": [self.gamma.a, self.gamma.b],
            "delta": [self.delta.a, self.delta.b],
        }

    @classmethod
    def from_json(cls, d: int, obj: dict) -> "GroupElem":
        def ent(key: str) -> AlgInt:
            a, b = obj[key]
            return AlgInt(int(a), int(b), d)

        return cls(ent("alpha"), ent("beta"), ent("gamma"), ent("delta"))

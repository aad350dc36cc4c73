"""Surgeries on positive torus knots.

Implements the classification of p/q-surgery on T(a,b) as a lens space, a
connected sum of two lens spaces, or a small Seifert fibered space over S^2
with three exceptional fibers, together with the closed-form threshold
above which a surgery slope is quasi-alternating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import Slope, SlopeDomainError


@dataclass(frozen=True)
class TorusKnot:
    """The (a,b)-torus knot with a > b >= 2 and gcd(a,b) = 1."""

    a: int
    b: int

    def __post_init__(self):
        import math

        if not (self.a > self.b >= 2):
            raise ValueError("torus knot requires a > b >= 2, got (%s, %s)" % (self.a, self.b))
        if math.gcd(self.a, self.b) != 1:
            raise ValueError("torus knot parameters must be coprime")

    @property
    def genus(self):
        return (self.a - 1) * (self.b - 1) // 2

    def __str__(self):
        return "T(%d,%d)" % (self.a, self.b)


@dataclass(frozen=True)
class MoserParams:
    """Integers (c, d) with a*c + b*d = -1, normalized so a > d > 0 and
    b > -c > 0.  These encode the Seifert invariants of T(a,b) surgeries."""

    c: int
    d: int


@dataclass(frozen=True)
class LensSpace:
    order: int  # |H1|; the full lens parameters are deliberately not computed


@dataclass(frozen=True)
class ConnectedSumOfLens:
    pairs: tuple  # ((a, b), (b, a))


@dataclass(frozen=True)
class SmallSFS:
    fibers: tuple  # three (multiplicity, framing) pairs over the base S^2


@dataclass(frozen=True)
class QAThreshold:
    """The exact rational ab - max{a/m, b/n} with b*m + a*n = ab + 1,
    1 <= m < a, 1 <= n < b.  A slope is quasi-alternating iff it exceeds
    this threshold strictly."""

    m: int
    n: int
    threshold: Fraction


def moser_params(knot):
    """The unique normalized (c, d) with a*c + b*d = -1.

    d is the inverse of -b modulo a shifted into (0, a); this pins the
    representative with a > d > 0 and b > -c > 0 among all solutions
    (c, d) -> (c + b*t, d - a*t).
    """
    a, b = knot.a, knot.b
    d = (-pow(b, -1, a)) % a
    c = (-1 - b * d) // a
    assert a * c + b * d == -1 and a > d > 0 and b > -c > 0
    return MoserParams(c, d)


def moser_surgery(knot, slope):
    """Classify p/q-surgery on T(a,b).

    Returns ConnectedSumOfLens when p/q = ab, LensSpace(|p|) when
    |ab*q - p| <= 1, and otherwise the small Seifert fibered space with
    fibers (a, d), (b, c), (ab*q - p, q).
    """
    if slope.is_infinite:
        raise SlopeDomainError("the trivial filling 1/0 is excluded")
    a, b = knot.a, knot.b
    p, q = slope.p, slope.q
    third = a * b * q - p
    if third == 0:
        return ConnectedSumOfLens(((a, b), (b, a)))
    if abs(third) <= 1:
        return LensSpace(abs(p))
    params = moser_params(knot)
    return SmallSFS(((a, params.d), (b, params.c), (third, q)))


def qa_threshold(knot):
    """The quasi-alternating slope threshold of T(a,b), exactly."""
    a, b = knot.a, knot.b
    m = pow(b, -1, a)  # in [1, a) since gcd(a, b) = 1 and a >= 3 here
    n = (a * b + 1 - b * m) // a
    assert b * m + a * n == a * b + 1 and 1 <= m < a and 1 <= n < b
    threshold = Fraction(a * b) - max(Fraction(a, m), Fraction(b, n))
    return QAThreshold(m, n, threshold)


def is_qa_slope(knot, slope):
    """True iff p/q-surgery on T(a,b) is a quasi-alternating surgery.

    The comparison against the threshold is strict and exact; slopes at or
    below the threshold (including all slopes <= 0) return False.
    """
    if slope.is_infinite:
        raise SlopeDomainError("the trivial filling 1/0 is excluded")
    return slope.as_fraction() > qa_threshold(knot).threshold


def lspace_slope_min(knot):
    """The smallest L-space slope 2g - 1 of the positive torus knot."""
    return Slope(2 * knot.genus - 1, 1)

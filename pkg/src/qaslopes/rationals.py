"""Exact slope arithmetic.

Slopes are reduced rationals p/q (including the meridional slope 1/0),
manipulated with arbitrary-precision integers throughout.  On top of the
basic type this module provides negative continued fractions, the mediant
triads they induce, and the geometric intersection distance between two
slopes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


class SlopeDomainError(ValueError):
    """An operation received a slope outside its domain (e.g. 1/0 where a
    finite rational is required, or a rational <= 1 where > 1 is needed)."""


@dataclass(frozen=True)
class Slope:
    """A slope p/q in canonical form: gcd(|p|,|q|) = 1 and q > 0, except
    for the slope 1/0.  Any integer pair is reduced on construction, so
    Slope(2, 4) == Slope(1, 2) and Slope(1, -2) == Slope(-1, 2).
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise TypeError("slope components must be integers")
        if p == 0 and q == 0:
            raise ValueError("slope 0/0 is not defined")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        elif q == 0:
            p = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinite(self):
        return self.q == 0

    def as_fraction(self):
        if self.q == 0:
            raise SlopeDomainError("slope 1/0 has no finite value")
        return Fraction(self.p, self.q)

    @classmethod
    def from_fraction(cls, x):
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    def _pair(self, other):
        if isinstance(other, Slope):
            return other.p, other.q
        if isinstance(other, int):
            return other, 1
        if isinstance(other, Fraction):
            return other.numerator, other.denominator
        return NotImplemented

    # Total order with 1/0 treated as +infinity.  The cross-multiplication
    # test is valid verbatim because canonical denominators are >= 0.
    def __lt__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        return self.p * pair[1] < pair[0] * self.q

    def __le__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        return self.p * pair[1] <= pair[0] * self.q

    def __gt__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        return self.p * pair[1] > pair[0] * self.q

    def __ge__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        return self.p * pair[1] >= pair[0] * self.q

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        return (self.p, self.q) == pair or self.p * pair[1] == pair[0] * self.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __str__(self):
        if self.q == 1:
            return str(self.p)
        return "%d/%d" % (self.p, self.q)

    def __repr__(self):
        return "Slope(%d, %d)" % (self.p, self.q)


INFINITY = Slope(1, 0)

_SLOPE_RE = re.compile(
    r"""^\s*(?:
        \(\s*(?P<pp>-?\d+)\s*,\s*(?P<pq>-?\d+)\s*\)   # SnapPy pair (p,q)
      | (?P<fp>-?\d+)\s*/\s*(?P<fq>-?\d+)             # fraction p/q
      | (?P<ip>-?\d+)                                 # bare integer
    )\s*$""",
    re.VERBOSE,
)


def parse_slope(text):
    """Parse 'p/q', a bare integer, or a SnapPy-style pair '(p,q)'."""
    m = _SLOPE_RE.match(text)
    if m is None:
        raise ValueError("cannot parse slope from %r" % text)
    if m.group("pp") is not None:
        return Slope(int(m.group("pp")), int(m.group("pq")))
    if m.group("fp") is not None:
        return Slope(int(m.group("fp")), int(m.group("fq")))
    return Slope(int(m.group("ip")), 1)


def distance(s1, s2):
    """Geometric intersection number |p1*q2 - p2*q1| of two slopes."""
    return abs(s1.p * s2.q - s2.p * s1.q)


@dataclass(frozen=True)
class NegCF:
    """A negative continued fraction [a_1, ..., a_l]^- = a_1 - 1/(a_2 - ...).

    Every rational > 1 has a unique such expansion with all a_i >= 2.  A
    trailing coefficient 1 is tolerated by the evaluator only, to support
    the collapse rule used by triads.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        _check_coeffs(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __str__(self):
        return "[%s]^-" % ",".join(str(a) for a in self.coeffs)


def _check_coeffs(coeffs):
    if len(coeffs) == 0:
        raise ValueError("empty continued fraction")
    if any(a < 2 for a in coeffs[:-1]) or coeffs[-1] < 1:
        raise ValueError(
            "negative continued fraction coefficients must be >= 2 "
            "(a trailing 1 is allowed): %r" % (tuple(coeffs),)
        )


def neg_cf_expand(r):
    """Expand a slope r > 1 as the unique NegCF with all coefficients >= 2.

    The leading coefficient is ceil(r).
    """
    if r.is_infinite:
        raise SlopeDomainError("cannot expand the slope 1/0")
    if r <= 1:
        raise SlopeDomainError("negative continued fractions require r > 1, got %s" % r)
    p, q = r.p, r.q
    coeffs = []
    while True:
        a = -((-p) // q)  # ceil(p/q) for q > 0
        coeffs.append(a)
        rem = a * q - p  # in [0, q)
        if rem == 0:
            return NegCF(tuple(coeffs))
        p, q = q, rem  # recurse on 1/(a - p/q) = q/rem > 1


def neg_cf_eval(cf):
    """Evaluate a NegCF (or coefficient sequence) right to left, exactly."""
    coeffs = cf.coeffs if isinstance(cf, NegCF) else tuple(int(a) for a in cf)
    _check_coeffs(coeffs)
    # Track the value as an exact integer pair num/den.
    num, den = coeffs[-1], 1
    for a in reversed(coeffs[:-1]):
        if num == 0:
            raise ValueError("division by zero while evaluating %r" % (coeffs,))
        num, den = a * num - den, num
    return Slope(num, den)


def _collapse(coeffs):
    # [a_1,...,a_k, 2, ..., 2, 1]^- == [a_1,...,a_k - 1]^-
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 1:
        c.pop()
        c[-1] -= 1
    return tuple(c)


def triad_partners(r):
    """The two slopes p0/q0, p1/q1 whose mediant is r = p/q.

    For r > 1 with expansion [a_1,...,a_l]^- of length l >= 2 these are
    [a_1,...,a_{l-1}]^- and [a_1,...,a_l - 1]^- (collapsed to keep all
    coefficients >= 2).  They satisfy p = p0 + p1, q = q0 + q1 and are at
    distance one from each other and from r.
    """
    cf = neg_cf_expand(r)
    if len(cf) < 2:
        raise SlopeDomainError(
            "integer slope %s has no continued-fraction triad; "
            "use the integer step instead" % r
        )
    s0 = neg_cf_eval(cf.coeffs[:-1])
    tail = _collapse(cf.coeffs[:-1] + (cf.coeffs[-1] - 1,))
    s1 = neg_cf_eval(tail)
    return s0, s1


def mediant(s1, s2):
    """Componentwise sum (p1+p2)/(q1+q2) of two canonical slopes."""
    return Slope(s1.p + s2.p, s1.q + s2.q)

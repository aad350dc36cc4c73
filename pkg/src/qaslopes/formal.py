"""The formal L-space slope calculus.

Starting from the hypothesis that some surgery K(seed) on an abstract knot
is a formal L-space, larger slopes are derived constructively: integer
steps r -> r + 1 use a triad whose third member is a lens space, and
non-integer slopes are reached through the mediant triads induced by
negative continued fractions.  Derivations are emitted as explicit witness
lists that an independent checker can replay.

Also provides the exact genus-based lower bound on formal L-space slopes
and the ceiling-based maximal genus compatible with a given slope.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .rationals import (
    Slope,
    SlopeDomainError,
    distance,
    mediant,
    neg_cf_expand,
    triad_partners,
)
from .torus import is_qa_slope

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PositiveInteger:
    """Seed hypothesis: K(n) is a formal L-space for an integer n >= 1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("integer seed must be >= 1, got %d" % self.n)

    @property
    def slope(self):
        return Slope(self.n, 1)


@dataclass(frozen=True)
class PositiveSlope:
    """Seed hypothesis: K(r) is a formal L-space for a rational r > 0."""

    r: Slope

    def __post_init__(self):
        if self.r.is_infinite or self.r <= 0:
            raise ValueError("slope seed must be a positive rational, got %s" % self.r)

    @property
    def slope(self):
        return self.r


@dataclass(frozen=True)
class LensMarker:
    """The lens space U(q/r) filling the unknot; |H1| = q."""

    surgery: Slope

    @property
    def order(self):
        return self.surgery.p


@dataclass(frozen=True)
class TriadWitness:
    """One derivation step: the target surgery sits in a triad with the two
    parents.  rule is 'integer' (parents: lens space, target - 1) or 'cf'
    (parents: the mediant pair of the target)."""

    target: Slope
    parents: tuple
    rule: str  # 'integer' | 'cf'


@dataclass(frozen=True)
class NotDerivable:
    """The query is not derivable from the seed by these rules.  This is
    not a verdict that the surgery fails to be a formal L-space; the rules
    are one-directional sufficient conditions."""

    reason: str


def _lens_for_step(parent):
    # parent p/q sits in a triad with U(q/r), r = q*ceil(p/q) - p in [0, q)
    p, q = parent.p, parent.q
    r = (-p) % q
    return LensMarker(Slope(q, r))


def propagate(seed, query):
    """Derive the query slope from the seed, emitting triad witnesses in
    dependency order (parents before targets), or return NotDerivable.

    Integer seeds n reach every rational >= n; slope seeds r reach exactly
    r + k for integers k >= 0.
    """
    if query.is_infinite:
        raise SlopeDomainError("query 1/0 is not a surgery slope")
    if isinstance(seed, int):
        seed = PositiveInteger(seed)
    elif isinstance(seed, Slope):
        seed = PositiveInteger(seed.p) if seed.q == 1 and seed.p >= 1 else PositiveSlope(seed)

    if isinstance(seed, PositiveSlope):
        return _propagate_slope_seed(seed, query)
    if isinstance(seed, PositiveInteger):
        return _propagate_integer_seed(seed, query)
    raise TypeError("unsupported seed %r" % (seed,))


def _integer_chain(start, stop_p, q, out, seen):
    # Emit integer steps start -> start + 1 -> ... -> stop (same q).
    p = start.p
    while p < stop_p:
        parent = Slope(p, q)
        target = Slope(p + q, q)
        if target not in seen:
            out.append(TriadWitness(target, (_lens_for_step(parent), parent), "integer"))
            seen.add(target)
        p += q


def _propagate_slope_seed(seed, query):
    base = seed.slope
    if query == base:
        return []
    step = query.p - base.p
    if query.q != base.q or step <= 0 or step % base.q != 0:
        return NotDerivable(
            "slope seed %s only reaches %s + k for integers k >= 0" % (base, base)
        )
    out, seen = [], {base}
    _integer_chain(base, query.p, base.q, out, seen)
    return out


def _propagate_integer_seed(seed, query):
    n = seed.n
    if query < n:
        return NotDerivable("query %s is below the integer seed %d" % (query, n))
    out, seen = [], {seed.slope}

    def derive(s):
        if s in seen:
            return
        if s.q == 1:
            _integer_chain(seed.slope, s.p, 1, out, seen)
            return
        s0, s1 = triad_partners(s)
        derive(s0)
        derive(s1)
        out.append(TriadWitness(s, (s0, s1), "cf"))
        seen.add(s)

    derive(query)
    return out


def verify_derivation(derivation, seed):
    """Replay a derivation independently: every witness must satisfy its
    triad's arithmetic (mediant identity and distance-one for cf steps,
    the +1 step with a consistent lens order for integer steps) and may
    only consume the seed, lens spaces, or previously derived slopes.

    Returns False (logging a diagnostic) on the first failing witness.
    """
    if isinstance(seed, int):
        seed = PositiveInteger(seed)
    derived = {seed.slope}
    for i, w in enumerate(derivation):
        if w.rule == "cf":
            s0, s1 = w.parents
            if not (isinstance(s0, Slope) and isinstance(s1, Slope)):
                return _fail(i, w, "cf step parents must be slopes")
            if distance(s0, s1) != 1:
                return _fail(i, w, "parents are not at distance one")
            if mediant(s0, s1) != w.target or s0.p + s1.p != w.target.p or s0.q + s1.q != w.target.q:
                return _fail(i, w, "target is not the mediant of its parents")
            if s0 not in derived or s1 not in derived:
                return _fail(i, w, "parent slope not previously derived")
        elif w.rule == "integer":
            lens, parent = w.parents
            if not isinstance(lens, LensMarker) or not isinstance(parent, Slope):
                return _fail(i, w, "integer step needs (lens marker, slope) parents")
            if w.target.q != parent.q or w.target.p != parent.p + parent.q:
                return _fail(i, w, "integer step target must be parent + 1")
            if lens.order != parent.q or lens != _lens_for_step(parent):
                return _fail(i, w, "lens marker inconsistent with the parent slope")
            if parent not in derived:
                return _fail(i, w, "parent slope not previously derived")
        else:
            return _fail(i, w, "unknown rule %r" % w.rule)
        if w.target <= 0:
            return _fail(i, w, "derived slopes must stay positive")
        derived.add(w.target)
    return True


def _fail(index, witness, message):
    log.warning("derivation invalid at witness %d (%s): %s", index, witness, message)
    return False


def greene_max_genus(r):
    """The largest integer g >= 0 with 2g <= ceil(r) - sqrt(ceil(r)),
    computed with exact integer square-root comparisons."""
    r = r.as_fraction() if isinstance(r, Slope) else Fraction(r)
    if r <= 0:
        raise ValueError("slope must be positive, got %s" % r)
    ncap = -((-r.numerator) // r.denominator)  # ceil(r)
    s = math.isqrt(ncap)
    # largest g with N - 2g >= sqrt(N), i.e. N - 2g >= ceil(sqrt(N))
    s_up = s if s * s == ncap else s + 1
    return (ncap - s_up) // 2


@dataclass(frozen=True)
class FormalSlopeBound:
    """The exact bound B(g) = 2g + (sqrt(1+8g) - 1)/2 below which no slope
    of a genus-g knot can be a formal L-space slope.

    When 1 + 8g is a perfect square the bound is the integer (3g' stacked
    triangular case); otherwise comparisons against rationals are done by
    exact squaring, never through floating point.
    """

    g: int

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be >= 0")

    @property
    def radicand(self):
        return 1 + 8 * self.g

    @property
    def exact_value(self):
        """The bound as a Fraction when 1+8g is a perfect square, else None."""
        s = math.isqrt(self.radicand)
        if s * s == self.radicand:
            return Fraction(2 * self.g) + Fraction(s - 1, 2)
        return None

    def _cmp(self, x):
        """-1, 0, or 1 as the bound is <, ==, or > the rational x."""
        x = x.as_fraction() if isinstance(x, Slope) else Fraction(x)
        t = 2 * x - 4 * self.g + 1  # bound < x  <=>  sqrt(1+8g) < t
        if t <= 0:
            return 1
        t2 = t * t
        if self.radicand < t2:
            return -1
        if self.radicand == t2:
            return 0
        return 1

    def __lt__(self, x):
        return self._cmp(x) < 0

    def __le__(self, x):
        return self._cmp(x) <= 0

    def __gt__(self, x):
        return self._cmp(x) > 0

    def __ge__(self, x):
        return self._cmp(x) >= 0

    def __eq__(self, x):
        if isinstance(x, FormalSlopeBound):
            return self.g == x.g
        return self._cmp(x) == 0

    def __hash__(self):
        return hash(("FormalSlopeBound", self.g))

    def __float__(self):
        return 2 * self.g + (math.sqrt(self.radicand) - 1) / 2

    def __str__(self):
        v = self.exact_value
        if v is not None:
            return str(v)
        return "2*%d + (sqrt(%d)-1)/2" % (self.g, self.radicand)


def min_formal_slope_bound(g):
    """The exact lower bound B(g) on formal L-space slopes of a genus-g knot."""
    return FormalSlopeBound(int(g))


def formal_slopes_torus(knot, slope):
    """Formal L-space slopes of a positive torus knot coincide with its
    quasi-alternating slopes; delegate to the closed form."""
    return is_qa_slope(knot, slope)


def triad_closure_bruteforce(n, max_q, max_p_over_q):
    """Brute-force least fixed point of the triad rules seeded at the
    integer n (lens spaces are always available as second parents).

    Returns the set of all slopes with denominator <= max_q and value
    <= max_p_over_q reachable by (i) integer steps p/q -> (p+q)/q and
    (ii) mediants of distance-one pairs already in the set.  Used as an
    independent oracle for propagate's derivable set.
    """
    seed = Slope(n, 1)
    closure = {seed}
    frontier = [seed]
    cap = lambda s: s.q <= max_q and s.p <= max_p_over_q * s.q
    while frontier:
        new = []
        for s in frontier:
            t = Slope(s.p + s.q, s.q)
            if cap(t) and t not in closure:
                closure.add(t)
                new.append(t)
        # distance-one partners: p0*q1 - p1*q0 = +-1 pins p1 given (s0, q1)
        snapshot = list(closure)
        for s0 in snapshot:
            for q1 in range(1, max_q + 1 - s0.q):
                for eps in (1, -1):
                    num = s0.p * q1 - eps
                    if num % s0.q:
                        continue
                    s1 = Slope(num // s0.q, q1)
                    if s1 not in closure:
                        continue
                    t = mediant(s0, s1)
                    if cap(t) and t not in closure:
                        closure.add(t)
                        new.append(t)
        frontier = new
    return closure

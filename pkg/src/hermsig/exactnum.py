"""Exact univariate polynomial arithmetic over the rationals.

Sturm chains, real root counting and isolation, Tarski queries, and counts
of roots under simultaneous sign conditions.  All coefficients are
``fractions.Fraction``; no floating point appears anywhere.

Conventions:
  * coefficient sequences are lowest degree first;
  * sign-change counts delete zero entries from the sign sequence;
  * evaluation "at +/-infinity" uses the sign of the leading coefficient,
    with a factor (-1)**degree on the negative side;
  * interval root counts V(a) - V(b) refer to the half-open window (a, b]
    and are exact whenever neither endpoint is a root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyConditions,
    NotIsolating,
    NotSquarefree,
    SignConditionDegenerate,
    ZeroPolynomial,
)


def sign(x) -> int:
    """Sign of a rational number as -1, 0 or +1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True, slots=True)
class Interval:
    """Rational interval with lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


class Polynomial:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial([])
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Polynomial(out)
        q = Fraction(other)
        return Polynomial([c * q for c in self.coeffs])

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact quotient and remainder; ``other`` must be nonzero."""
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([]), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quo), Polynomial(rem[: other.degree])

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Bounds for the value set on [lo, hi], by interval Horner."""
        if self.is_zero:
            return Fraction(0), Fraction(0)
        alo = ahi = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
            alo, ahi = min(cands) + c, max(cands) + c
        return alo, ahi

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return Polynomial([c / lead for c in self.coeffs])


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm (zero for two zero inputs)."""
    while not b.is_zero:
        # re-normalizing each remainder keeps coefficient growth in check
        a, b = b, (a % b).monic()
    return a.monic()


def is_squarefree(p: Polynomial) -> bool:
    if p.is_zero:
        return False
    if p.degree <= 1:
        return True
    return gcd(p, p.derivative()).degree == 0


def squarefree_part(p: Polynomial) -> Polynomial:
    """p divided by gcd(p, p'); same distinct roots, each simple."""
    if p.is_zero:
        raise ZeroPolynomial()
    g = gcd(p, p.derivative())
    if g.degree == 0:
        return p
    return p.divmod(g)[0]


def _count_changes(signs) -> int:
    changes = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


@dataclass(frozen=True)
class SturmSequence:
    """Signed remainder chain; ends at a gcd of the two seed polynomials."""

    polys: tuple[Polynomial, ...]

    def changes_at(self, x) -> int:
        return _count_changes(sign(f(x)) for f in self.polys)

    def changes_neg_inf(self) -> int:
        return _count_changes(
            sign(f.leading) * (-1) ** f.degree for f in self.polys
        )

    def changes_pos_inf(self) -> int:
        return _count_changes(sign(f.leading) for f in self.polys)

    def count_in(self, lo, hi) -> int:
        """Roots of the seed in (lo, hi]; exact for non-root endpoints."""
        return self.changes_at(lo) - self.changes_at(hi)

    def count_all(self) -> int:
        return self.changes_neg_inf() - self.changes_pos_inf()


def _chain(f0: Polynomial, f1: Polynomial) -> SturmSequence:
    seq = [f0]
    if not f1.is_zero:
        seq.append(f1)
        while True:
            r = seq[-2] % seq[-1]
            if r.is_zero:
                break
            seq.append(-r)
    return SturmSequence(tuple(seq))


def sturm_sequence(p: Polynomial) -> SturmSequence:
    """Canonical Sturm chain seeded with (p, p')."""
    if p.is_zero:
        raise ZeroPolynomial()
    return _chain(p, p.derivative())


def count_real_roots(p: Polynomial, window: Interval | None = None) -> int:
    """Number of distinct real roots of p, in the window or on the whole line."""
    if p.is_zero:
        raise ZeroPolynomial()
    chain = sturm_sequence(p)
    if window is None:
        return chain.count_all()
    return chain.count_in(window.lo, window.hi)


def _root_bound(p: Polynomial) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lead = abs(p.leading)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead


def isolate_real_roots(p: Polynomial) -> list[Interval]:
    """Disjoint rational intervals, one simple root each, ordered by midpoint.

    The input must be squarefree; callers normalize via the gcd with the
    derivative first so that the provenance of the polynomial stays explicit.
    """
    if p.is_zero:
        raise ZeroPolynomial()
    if not is_squarefree(p):
        raise NotSquarefree()
    if p.degree == 0:
        return []
    chain = sturm_sequence(p)
    bound = _root_bound(p)
    out: list[Interval] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        c = chain.count_in(lo, hi)
        if c == 0:
            continue
        if c == 1:
            out.append(Interval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if p(mid) == 0:
            # rational root exactly at the midpoint: carve out a window
            # around it with non-root endpoints, then recurse on the sides
            delta = (hi - lo) / 4
            while True:
                a, b = mid - delta, mid + delta
                if p(a) != 0 and p(b) != 0 and chain.count_in(a, b) == 1:
                    break
                delta /= 2
            out.append(Interval(a, b))
            stack.append((lo, a))
            stack.append((b, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort(key=lambda iv: iv.mid)
    return out


def tarski_query(m: Polynomial, g: Polynomial) -> int:
    """Sum of sgn(g(c)) over the real roots c of m.

    Computed as the sign-change difference of the chain seeded with
    (m, m'*g) at -infinity and +infinity, never by evaluating at roots.
    """
    if m.is_zero:
        raise ZeroPolynomial()
    if not is_squarefree(m):
        raise NotSquarefree()
    chain = _chain(m, m.derivative() * g)
    return chain.count_all()


def count_roots_with_signs(m: Polynomial, gs) -> int:
    """Number of real roots c of m with g(c) > 0 for every g in gs.

    Uses the averaged inclusion-exclusion over exponent vectors e in
    {1,2}**r: the count equals 2**(-r) * sum_e TaQ(g1**e1 * ... * gr**er, m).
    """
    gs = list(gs)
    if not gs:
        raise EmptyConditions()
    if m.is_zero:
        raise ZeroPolynomial()
    if not is_squarefree(m):
        raise NotSquarefree()
    for g in gs:
        if g.is_zero or gcd(m, g).degree > 0:
            raise SignConditionDegenerate()
    r = len(gs)
    total = 0
    for e in itertools.product((1, 2), repeat=r):
        ge = Polynomial([1])
        for gi, ei in zip(gs, e):
            ge = ge * gi
            if ei == 2:
                ge = ge * gi
        total += tarski_query(m, ge)
    if total % (1 << r):
        raise AssertionError("sign-condition count is not divisible by 2^r")
    return total >> r


def refine_interval(p: Polynomial, iv: Interval, width: Fraction) -> Interval:
    """Shrink an isolating interval to the requested width by bisection."""
    if p.is_zero:
        raise ZeroPolynomial()
    width = Fraction(width)
    if iv.width == 0:
        if p(iv.lo) == 0:
            return iv
        raise NotIsolating()
    chain = sturm_sequence(p)
    if p(iv.lo) == 0:
        raise NotIsolating("left endpoint is a root")
    if chain.count_in(iv.lo, iv.hi) != 1:
        raise NotIsolating()
    lo, hi = iv.lo, iv.hi
    if p(hi) == 0:
        return Interval(hi, hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return Interval(mid, mid)
        if chain.count_in(lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return Interval(lo, hi)

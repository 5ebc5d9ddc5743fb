"""Exact rational scalars and mod-1 interval-set algebra.

Every measure computed anywhere in this package bottoms out here.  The two
primitives are arbitrary-precision rationals (``fractions.Fraction``, aliased
as ``Rational``) and finite disjoint unions of half-open intervals
[lo, hi) on the circle [0, 1).

Canonical form of an interval set: intervals sorted ascending, pairwise
disjoint, adjacent intervals merged, every endpoint a rational in [0, 1].
All values are immutable; all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac_str(q) -> str:
    """Serialize a rational as "p/q" (denominator always present)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer) into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _canonical(pairs):
    """Sort, drop empties, merge overlapping/adjacent pairs (union semantics)."""
    items = sorted((Fraction(lo), Fraction(hi)) for lo, hi in pairs if lo < hi)
    merged = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True)
class IntervalSet:
    """Finite disjoint union of [lo, hi) intervals inside [0, 1)."""

    intervals: tuple

    def __post_init__(self):
        for lo, hi in self.intervals:
            if not (ZERO <= lo < hi <= ONE):
                raise ValueError(f"interval [{lo}, {hi}) outside [0, 1)")

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((ZERO, ONE),))

    @classmethod
    def from_pairs(cls, pairs) -> "IntervalSet":
        """Build from (lo, hi) pairs with 0 <= lo < hi <= 1; merges overlaps."""
        canon = _canonical(pairs)
        for lo, hi in canon:
            if lo < 0 or hi > 1:
                raise ValueError(f"interval [{lo}, {hi}) outside [0, 1)")
        return cls(canon)

    @classmethod
    def from_arc(cls, start, length) -> "IntervalSet":
        """Arc of given length starting at ``start`` (mod 1); wraps are split."""
        start, length = Fraction(start), Fraction(length)
        if length <= 0:
            return cls.empty()
        if length >= 1:
            return cls.full()
        lo = start % 1
        hi = lo + length
        if hi <= 1:
            return cls(((lo, hi),))
        return cls(((ZERO, hi - 1), (lo, ONE)))

    # -- basic queries -----------------------------------------------------

    @property
    def interval_count(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_full(self) -> bool:
        return self.intervals == ((ZERO, ONE),)

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def contains(self, point) -> bool:
        x = Fraction(point) % 1
        return any(lo <= x < hi for lo, hi in self.intervals)

    # -- set algebra ---------------------------------------------------------

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(_canonical(self.intervals + other.intervals))

    def complement(self) -> "IntervalSet":
        out = []
        cursor = ZERO
        for lo, hi in self.intervals:
            if cursor < lo:
                out.append((cursor, lo))
            cursor = hi
        if cursor < ONE:
            out.append((cursor, ONE))
        return IntervalSet(tuple(out))

    def translate(self, delta) -> "IntervalSet":
        """The set {x + delta mod 1 : x in self}."""
        delta = Fraction(delta)
        pieces = []
        for lo, hi in self.intervals:
            pieces.extend(IntervalSet.from_arc(lo + delta, hi - lo).intervals)
        return IntervalSet(_canonical(pieces))

    def preimage_affine(self, k: int, c) -> "IntervalSet":
        """The set {t in [0,1) : (k*t + c) mod 1 in self}.

        k = 0 degenerates to full/empty according to membership of c.  For
        k < 0 the true preimage of a [lo, hi) interval is half-open on the
        left; it is normalized back to [lo, hi) form, which changes
        membership only on finitely many boundary points and never changes
        the measure.
        """
        c = Fraction(c)
        if k == 0:
            return IntervalSet.full() if self.contains(c) else IntervalSet.empty()
        span_lo = min(c, c + k)
        span_hi = max(c, c + k)
        pieces = []
        for a, b in self.intervals:
            z_lo = math.floor(span_lo - b)
            z_hi = math.ceil(span_hi - a)
            for z in range(z_lo, z_hi + 1):
                t0 = (a + z - c) / k
                t1 = (b + z - c) / k
                lo, hi = (t0, t1) if k > 0 else (t1, t0)
                lo = max(lo, ZERO)
                hi = min(hi, ONE)
                if lo < hi:
                    pieces.append((lo, hi))
        return IntervalSet(_canonical(pieces))

    def forward_affine_image(self, k: int, c) -> "IntervalSet":
        """The set {(k*t + c) mod 1 : t in self}; requires k != 0.

        Like preimage_affine with k < 0, orientation-reversing images are
        normalized to [lo, hi) form (boundary points only).
        """
        if k == 0:
            raise ValueError("forward image of a constant map is a point, not an interval set")
        c = Fraction(c)
        pieces = []
        for a, b in self.intervals:
            length = abs(k) * (b - a)
            start = k * a + c if k > 0 else k * b + c
            pieces.extend(IntervalSet.from_arc(start, length).intervals)
        return IntervalSet(_canonical(pieces))

    # -- serialization -----------------------------------------------------

    def to_json_obj(self):
        return [[frac_str(lo), frac_str(hi)] for lo, hi in self.intervals]

    @classmethod
    def from_json_obj(cls, obj) -> "IntervalSet":
        return cls.from_pairs([(parse_frac(lo), parse_frac(hi)) for lo, hi in obj])


# Module-level forms of the operation surface.

def measure(s: IntervalSet) -> Fraction:
    return s.measure()


def intersect(s: IntervalSet, t: IntervalSet) -> IntervalSet:
    return s.intersect(t)


def preimage_affine(s: IntervalSet, k: int, c) -> IntervalSet:
    return s.preimage_affine(k, c)

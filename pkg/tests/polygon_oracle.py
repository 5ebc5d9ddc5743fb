"""Independent exact oracle for skew-product correlation integrals.

Computes  integral over x in [0,1)  of  mu( B ∩ (B - k_1 x) ∩ ... ∩ (B - k_t x) )
by an exact arrangement argument, sharing no code with the package's interval
machinery.

Why it is exact: for fixed x the inner measure is a sum of elementary-arc
lengths between the endpoint positions (e - k x) mod 1, and each arc's
membership pattern can only change when two endpoint trajectories meet
mod 1.  Between such collision abscissas the inner measure is an affine
function of x, so on each arrangement segment the exact integral equals
(segment length) * (value at the segment midpoint).
"""

import math
from fractions import Fraction


def member(y, intervals):
    y = y % 1
    return any(lo <= y < hi for lo, hi in intervals)


def inner_measure(intervals, speeds, x):
    """Exact measure of {y : y in B and y + k*x in B for every speed k}."""
    if not intervals:
        return Fraction(0)
    positions = set()
    for k in set([0] + list(speeds)):
        for lo, hi in intervals:
            positions.add((lo - k * x) % 1)
            positions.add((hi - k * x) % 1)
    cuts = sorted(positions)
    total = Fraction(0)
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else cuts[0] + 1
        mid = (lo + hi) / 2
        if member(mid, intervals) and all(member(mid + k * x, intervals) for k in speeds):
            total += hi - lo
    return total


def correlation(intervals, speeds):
    """Exact value of the correlation integral for base set B (a list of
    disjoint (lo, hi) pairs in [0,1)) and integer shift speeds."""
    intervals = [(Fraction(lo), Fraction(hi)) for lo, hi in intervals]
    speeds = [int(k) for k in speeds]
    endpoints = [e for pair in intervals for e in pair]
    families = sorted(set([0] + speeds))
    cuts = {Fraction(0), Fraction(1)}
    for i, u in enumerate(families):
        for v in families[i + 1:]:
            dv = v - u
            for e in endpoints:
                for f in endpoints:
                    # x with e - u*x = f - v*x (mod 1): x = (f - e + z) / dv
                    base = f - e
                    for z in range(math.ceil(-base), math.floor(dv - base) + 1):
                        cuts.add(Fraction(base + z, dv))
    cuts = sorted(cuts)
    total = Fraction(0)
    for a, b in zip(cuts, cuts[1:]):
        if a < b:
            total += inner_measure(intervals, speeds, (a + b) / 2) * (b - a)
    return total

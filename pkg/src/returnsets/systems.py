"""Explicit measure-preserving systems at desk scale.

Two system kinds are supported: rotation by 1 on Z/MZ with a subset A of
residues (all correlations exact), and the torus skew product
T(x, y) = (x, y + x) acting on sets A = [0,1) x B through powers
T_j = T^(a_j) (correlations certified by rational enclosures).

Enclosure method for the skew product: the correlation equals
integral over x of g(x), with g(x) the exact measure of
B intersect (B - k_1 x) intersect ... intersect (B - k_l x).  Each factor is
a translate of B, and a translate of a union of m intervals by eps loses at
most m*eps of measure in each direction, so g is Lipschitz with constant
L = m * sum(|k_j|).  Sampling g on the grid {i/N} therefore brackets the
integral within L/(2N) on each side, a certified width of L/N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import IntervalSet, frac_str
from .ipcomb import normalize_window

DEFAULT_MAX_DOUBLINGS = 8


@dataclass(frozen=True)
class FiniteCyclicSystem:
    """Rotation x -> x+1 on Z/MZ with a marked subset of residues."""

    modulus: int
    subset: frozenset

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "subset", frozenset(x % self.modulus for x in self.subset))

    def set_measure(self) -> Fraction:
        return Fraction(len(self.subset), self.modulus)


@dataclass(frozen=True)
class SkewSystem:
    """A = [0,1) x B under the commuting powers T_j = T^(a_j) of the skew map."""

    base_set: IntervalSet
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))

    def set_measure(self) -> Fraction:
        return self.base_set.measure()

    def shift_speeds(self, powers) -> tuple:
        """Fiber shift speeds k_j = a_j * c_j of A under T_j^(-c_j) pullbacks."""
        powers = tuple(int(c) for c in powers)
        if len(powers) != len(self.exponents):
            raise ValueError("powers length must match exponents length")
        return tuple(a * c for a, c in zip(self.exponents, powers))


@dataclass(frozen=True)
class Enclosure:
    """Certified rational bracket [lo, hi] of a correlation integral."""

    lo: Fraction
    hi: Fraction
    grid: int
    lipschitz_bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def cyclic_correlation(sys: FiniteCyclicSystem, shifts) -> Fraction:
    """Exact |A ∩ (A - s_1) ∩ ... ∩ (A - s_l)| / M."""
    M = sys.modulus
    live = set(sys.subset)
    for s in shifts:
        live &= {(a - s) % M for a in sys.subset}
    return Fraction(len(live), M)


def skew_correlation(sys: SkewSystem, powers, grid: int) -> Enclosure:
    """Certified enclosure of the correlation of A = [0,1) x B under the
    given powers, sampled at grid points x = i/N (left endpoints).

    The upper endpoint is additionally tightened to the best enclosure over
    factor prefixes (intersecting more sets cannot increase the value), which
    makes the reported hi monotone under appending factors.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    speeds = sys.shift_speeds(powers)
    return _enclosure_for_speeds(sys.base_set, speeds, grid)


def _enclosure_for_speeds(base: IntervalSet, speeds, grid: int) -> Enclosure:
    n_factors = len(speeds)
    move_count = 0 if base.is_full else base.interval_count
    prefix_sums = [Fraction(0)] * (n_factors + 1)
    for i in range(grid):
        x = Fraction(i, grid)
        translates = {}
        cur = base
        prefix_sums[0] += cur.measure()
        for t, k in enumerate(speeds, start=1):
            if k != 0:
                if k not in translates:
                    translates[k] = base.translate(-k * x)
                cur = cur.intersect(translates[k])
            prefix_sums[t] += cur.measure()
    lip = [Fraction(0)] * (n_factors + 1)
    for t, k in enumerate(speeds, start=1):
        lip[t] = lip[t - 1] + move_count * abs(k)
    avg = [s / grid for s in prefix_sums]
    half = [l / (2 * grid) for l in lip]
    hi = min(avg[t] + half[t] for t in range(n_factors + 1))
    lo = max(Fraction(0), avg[n_factors] - half[n_factors])
    return Enclosure(lo=lo, hi=hi, grid=grid, lipschitz_bound=lip[n_factors])


# -- return-set scans ------------------------------------------------------------


@dataclass(frozen=True)
class PointDecision:
    point: tuple
    decision: str          # "member" | "nonmember" | "inconclusive"
    lo: Fraction
    hi: Fraction
    grid: int
    method: str            # "exact" | "grid" | "bound"


@dataclass(frozen=True)
class ReturnSetReport:
    kind: str              # "cyclic" | "skew"
    window: tuple          # per-axis (lo, hi), inclusive
    epsilon: Fraction
    threshold: Fraction
    members: tuple         # sorted member points
    decisions: tuple       # PointDecision per window point, lex order
    max_gap: tuple         # per-axis max gap (see syndeticity_report)
    exactness: str         # "exact" | "enclosure-certified" | "enclosure-inconclusive"
    inconclusive: tuple = ()

    def to_json_obj(self):
        return {
            "kind": self.kind,
            "window": [list(ax) for ax in self.window],
            "epsilon": frac_str(self.epsilon),
            "threshold": frac_str(self.threshold),
            "members": [list(p) for p in self.members],
            "max_gap": list(self.max_gap),
            "exactness": self.exactness,
            "inconclusive": [list(p) for p in self.inconclusive],
            "decisions": [
                {
                    "n": list(d.point),
                    "decision": d.decision,
                    "lo": frac_str(d.lo),
                    "hi": frac_str(d.hi),
                    "grid": d.grid,
                    "method": d.method,
                }
                for d in self.decisions
            ],
        }


def window_points(window):
    return itertools.product(*(range(lo, hi + 1) for lo, hi in window))


def return_set_window(system, polys, epsilon, window, grid: int = 64, *,
                      threshold=None, max_doublings: int = DEFAULT_MAX_DOUBLINGS,
                      shift_upper_bound=None) -> ReturnSetReport:
    """Decide, for every n in the window, whether the correlation along the
    polynomial shifts exceeds the threshold (default: mu^(l+1)(A) - epsilon).

    Cyclic systems decide exactly.  Skew systems decide through enclosures,
    doubling the grid up to max_doublings times; points still undecided are
    reported inconclusive.  shift_upper_bound, when given, maps a shift tuple
    to a certified exact upper bound for the correlation (or None); it is
    consulted before any grid work.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial family")
    d = polys[0].num_vars
    window = tuple(normalize_window(window, d))
    epsilon = Fraction(epsilon)
    mu = system.set_measure()
    ell = len(polys)
    if threshold is None:
        threshold = mu ** (ell + 1) - epsilon
    else:
        threshold = Fraction(threshold)
        epsilon = mu ** (ell + 1) - threshold
    is_cyclic = isinstance(system, FiniteCyclicSystem)
    if isinstance(system, SkewSystem) and len(system.exponents) != ell:
        raise ValueError("polynomial family length must match system exponents")

    cache = {}

    def decide(values):
        if values in cache:
            return cache[values]
        if is_cyclic:
            v = cyclic_correlation(system, values)
            out = ("member" if v > threshold else "nonmember", v, v, 0, "exact")
        else:
            out = _decide_skew(system, values, threshold, grid, max_doublings,
                               shift_upper_bound)
        cache[values] = out
        return out

    decisions = []
    members = []
    inconclusive = []
    for n in window_points(window):
        values = tuple(p.evaluate(n) for p in polys)
        decision, lo, hi, used_grid, method = decide(values)
        decisions.append(PointDecision(n, decision, lo, hi, used_grid, method))
        if decision == "member":
            members.append(n)
        elif decision == "inconclusive":
            inconclusive.append(n)

    if is_cyclic:
        exactness = "exact"
    elif inconclusive:
        exactness = "enclosure-inconclusive"
    else:
        exactness = "enclosure-certified"
    report = ReturnSetReport(
        kind="cyclic" if is_cyclic else "skew",
        window=window,
        epsilon=epsilon,
        threshold=threshold,
        members=tuple(members),
        decisions=tuple(decisions),
        max_gap=_max_gaps(window, members),
        exactness=exactness,
        inconclusive=tuple(inconclusive),
    )
    return report


def _decide_skew(system, powers, threshold, grid, max_doublings, shift_upper_bound):
    speeds = system.shift_speeds(powers)
    if all(k == 0 for k in speeds):
        v = system.set_measure()
        decision = "member" if v > threshold else "nonmember"
        return (decision, v, v, 0, "exact")
    if shift_upper_bound is not None:
        ub = shift_upper_bound(speeds)
        if ub is not None and Fraction(ub) <= threshold:
            return ("nonmember", Fraction(0), Fraction(ub), 0, "bound")
    N = grid
    for _ in range(max_doublings + 1):
        enc = _enclosure_for_speeds(system.base_set, speeds, N)
        if enc.lo > threshold:
            return ("member", enc.lo, enc.hi, N, "grid")
        if enc.hi <= threshold:
            return ("nonmember", enc.lo, enc.hi, N, "grid")
        N *= 2
    return ("inconclusive", enc.lo, enc.hi, enc.grid, "grid")


def _max_gaps(window, members):
    gaps = []
    for axis, (lo, hi) in enumerate(window):
        values = sorted({n[axis] for n in members})
        stops = sorted({lo, hi} | set(values))
        gaps.append(max(b - a for a, b in zip(stops, stops[1:])) if len(stops) > 1 else 0)
    return tuple(gaps)


@dataclass(frozen=True)
class GapStatistics:
    """Finite-window gap statistics.  Always heuristic: no window can certify
    bounded gaps on all of Z^d."""

    per_axis_max_gap: tuple
    window: tuple
    member_count: int
    heuristic: bool = True
    note: str = ""


def syndeticity_report(report: ReturnSetReport) -> GapStatistics:
    """Per-axis maximal gap between consecutive members (window edges count
    as virtual stops), flagged HEURISTIC."""
    note = ""
    if not report.members:
        note = "no members: gap equals the window width"
    elif len(report.members) == 1:
        only = report.members[0]
        note = f"single member {list(only)}: return set possibly just this point"
    return GapStatistics(
        per_axis_max_gap=report.max_gap,
        window=report.window,
        member_count=len(report.members),
        heuristic=True,
        note=note,
    )
